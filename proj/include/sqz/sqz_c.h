/* C interface of the squeezing-bound library.
 *
 * All functions return sqz_status; on failure sqz_last_error() carries a
 * thread-local message. Strings handed out through char** are heap
 * allocated and must be released with sqz_string_free(). Points are
 * interleaved double arrays (re0, im0, re1, im1, ...) of length 2n.
 */
#ifndef SQZ_C_H
#define SQZ_C_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SQZ_API __declspec(dllexport)
#else
#define SQZ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sqz_status {
  SQZ_OK = 0,
  SQZ_ERR_PARSE = 1,          /* malformed JSON / point syntax */
  SQZ_ERR_VALIDATION = 2,     /* content rejection or violated precondition */
  SQZ_ERR_NONCONVERGENCE = 3, /* an optimizer or solver missed its tolerance */
  SQZ_ERR_ARGUMENT = 4        /* null handle, bad dimension, unknown enum */
} sqz_status;

typedef struct sqz_poly sqz_poly;
typedef struct sqz_domain sqz_domain;

SQZ_API const char* sqz_version(void);
SQZ_API const char* sqz_last_error(void);
SQZ_API void sqz_string_free(char* s);

/* Worker threads used by sampling loops; results are identical for any
 * count because substreams are indexed per sample. */
SQZ_API void sqz_set_jobs(int jobs);

/* ------------------------------------------------------------------ */
/* polynomials                                                         */

SQZ_API sqz_status sqz_poly_from_json(const char* json_text, sqz_poly** out);
SQZ_API void sqz_poly_free(sqz_poly* p);

/* Validation of a raw spec; succeeds (SQZ_OK) even when the polynomial is
 * rejected -- the report carries the verdict. Only malformed JSON fails. */
SQZ_API sqz_status sqz_validate_json(const char* json_text, char** report_json);

SQZ_API sqz_status sqz_poly_validation_report(const sqz_poly* p, char** report_json);
SQZ_API int sqz_poly_ambient_dim(const sqz_poly* p); /* <0 on bad handle */
SQZ_API int sqz_poly_balanced(const sqz_poly* p);    /* 1/0, <0 on bad handle */
SQZ_API sqz_status sqz_poly_evaluate(const sqz_poly* p, const double* zp, size_t n_doubles,
                                     double* out);
SQZ_API sqz_status sqz_poly_comparability(const sqz_poly* p, double* c1, double* c2);

/* ------------------------------------------------------------------ */
/* domains                                                             */

/* model: "ellipsoid" | "siegel" | "horosphere"; lambda only matters for
 * the horosphere model. */
SQZ_API sqz_status sqz_domain_create(const sqz_poly* p, const char* model, double r, double lambda,
                                     sqz_domain** out);
/* spec = polynomial spec + {"model": ..., "r": ..., "lambda": ...} */
SQZ_API sqz_status sqz_domain_from_json(const char* json_text, sqz_domain** out);
SQZ_API void sqz_domain_free(sqz_domain* d);

SQZ_API sqz_status sqz_domain_defining_value(const sqz_domain* d, const double* z, size_t n_doubles,
                                             double* out);
SQZ_API sqz_status sqz_domain_contains(const sqz_domain* d, const double* z, size_t n_doubles,
                                       int* out);
SQZ_API sqz_status sqz_domain_boundary_distance(const sqz_domain* d, const double* z,
                                                size_t n_doubles, char** report_json);
SQZ_API sqz_status sqz_domain_circumscribed_radius(const sqz_domain* d, const double* z,
                                                   size_t n_doubles, char** report_json);
SQZ_API sqz_status sqz_domain_diameter(const sqz_domain* d, char** report_json);

/* count boundary/interior samples into out (2n doubles per point). */
SQZ_API sqz_status sqz_domain_sample_boundary(const sqz_domain* d, int count, uint64_t seed,
                                              double* out);
SQZ_API sqz_status sqz_domain_sample_interior(const sqz_domain* d, int count, uint64_t seed,
                                              double* out);

/* ------------------------------------------------------------------ */
/* pipelines                                                           */

SQZ_API sqz_status sqz_levi_report(const sqz_domain* d, const double* q, size_t n_doubles,
                                   double tol, char** report_json);
SQZ_API sqz_status sqz_wb_check(const sqz_domain* d, double exclusion_radius, int samples,
                                uint64_t seed, double tol, char** report_json);

/* method: "lemma21" | "slice" */
SQZ_API sqz_status sqz_bound(const sqz_domain* d, const char* method, const double* pt,
                             size_t n_doubles, uint64_t seed, char** report_json);
SQZ_API sqz_status sqz_bound_extreme(const sqz_poly* p, double r, double r_prime, double c,
                                     const double* q, size_t n_doubles, int sigma_samples,
                                     uint64_t seed, char** report_json);

SQZ_API sqz_status sqz_orbit_trace(const sqz_domain* d, const double* pts, size_t count,
                                   size_t doubles_per_point, char** report_json);
SQZ_API sqz_status sqz_hhr_scan(const sqz_domain* d, const double* eps, size_t n_eps,
                                int samples_per_level, uint64_t seed, char** report_json);

/* map_json: {"map": "cayley"|"automorphism"|"dilation"|"normalization",
 *            "a": [re,im]?, "theta"?, "lambda"?} */
SQZ_API sqz_status sqz_maps_verify(const sqz_domain* d, const char* map_json, int samples,
                                   uint64_t seed, char** report_json);
SQZ_API sqz_status sqz_map_apply(const sqz_poly* p, const char* map_json, const double* z,
                                 size_t n_doubles, double* out);
SQZ_API sqz_status sqz_solve_normalization_scale(const sqz_poly* p, const double* q,
                                                 size_t n_doubles, double* lambda_out);

#ifdef __cplusplus
}
#endif

#endif /* SQZ_C_H */
