#include "sqz/sqz_c.h"

#include <cstring>
#include <string>

#include <nlohmann/json.hpp>

#include "sqz/json_io.hpp"

using nlohmann::json;

struct sqz_poly {
  sqz::WPolynomial impl;
};

struct sqz_domain {
  sqz::AnyDomain impl;
};

namespace {

thread_local std::string g_last_error;

sqz_status fail(sqz_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

sqz_status from_exception() {
  try {
    throw;
  } catch (const sqz::error& e) {
    return fail(static_cast<sqz_status>(static_cast<int>(e.code())), e.what());
  } catch (const json::parse_error& e) {
    return fail(SQZ_ERR_PARSE, e.what());
  } catch (const std::exception& e) {
    return fail(SQZ_ERR_ARGUMENT, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

sqz_status emit(char** out, const json& j) {
  if (!out) return fail(SQZ_ERR_ARGUMENT, "null output pointer");
  *out = dup_string(j.dump(2));
  return SQZ_OK;
}

sqz::CVec read_point(const double* z, size_t n_doubles) {
  if (!z || n_doubles % 2 != 0)
    throw sqz::error(sqz::errc::argument, "point buffer must hold an even number of doubles");
  sqz::CVec v(n_doubles / 2);
  for (size_t i = 0; i + 1 < n_doubles; i += 2)
    v[Eigen::Index(i / 2)] = sqz::Complex(z[i], z[i + 1]);
  return v;
}

void write_point(const sqz::CVec& v, double* out) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out[2 * i] = v[i].real();
    out[2 * i + 1] = v[i].imag();
  }
}

const sqz::GeneralEllipsoid& require_ellipsoid(const sqz_domain* d, const char* op) {
  if (!std::holds_alternative<sqz::GeneralEllipsoid>(d->impl))
    throw sqz::error(sqz::errc::validation, std::string(op) + " requires a bounded ellipsoid domain");
  return std::get<sqz::GeneralEllipsoid>(d->impl);
}

const sqz::WPolynomial& domain_poly(const sqz_domain* d) {
  return std::visit([](const auto& dom) -> const sqz::WPolynomial& { return dom.poly(); }, d->impl);
}

}  // namespace

extern "C" {

const char* sqz_version(void) { return "0.1.0"; }

const char* sqz_last_error(void) { return g_last_error.c_str(); }

void sqz_string_free(char* s) { delete[] s; }

void sqz_set_jobs(int jobs) { sqz::set_jobs(jobs); }

sqz_status sqz_poly_from_json(const char* json_text, sqz_poly** out) {
  if (!json_text || !out) return fail(SQZ_ERR_ARGUMENT, "null argument");
  try {
    const json j = json::parse(json_text);
    auto raw = sqz::parse_raw_polynomial(j);
    *out = new sqz_poly{sqz::WPolynomial(raw)};
    return SQZ_OK;
  } catch (...) {
    return from_exception();
  }
}

void sqz_poly_free(sqz_poly* p) { delete p; }

sqz_status sqz_validate_json(const char* json_text, char** report_json) {
  if (!json_text || !report_json) return fail(SQZ_ERR_ARGUMENT, "null argument");
  try {
    const json j = json::parse(json_text);
    auto raw = sqz::parse_raw_polynomial(j);
    return emit(report_json, sqz::to_json(sqz::validate(raw)));
  } catch (...) {
    return from_exception();
  }
}

sqz_status sqz_poly_validation_report(const sqz_poly* p, char** report_json) {
  if (!p || !report_json) return fail(SQZ_ERR_ARGUMENT, "null argument");
  try {
    return emit(report_json, sqz::to_json(p->impl.validation()));
  } catch (...) {
    return from_exception();
  }
}

int sqz_poly_ambient_dim(const sqz_poly* p) { return p ? p->impl.ambient_dim() : -1; }

int sqz_poly_balanced(const sqz_poly* p) { return p ? (p->impl.balanced() ? 1 : 0) : -1; }

sqz_status sqz_poly_evaluate(const sqz_poly* p, const double* zp, size_t n_doubles, double* out) {
  if (!p || !out) return fail(SQZ_ERR_ARGUMENT, "null argument");
  try {
    *out = p->impl.evaluate(read_point(zp, n_doubles));
    return SQZ_OK;
  } catch (...) {
    return from_exception();
  }
}

sqz_status sqz_poly_comparability(const sqz_poly* p, double* c1, double* c2) {
  if (!p || !c1 || !c2) return fail(SQZ_ERR_ARGUMENT, "null argument");
  try {
    const auto& c = p->impl.comparability_constants();
    *c1 = c.c1;
    *c2 = c.c2;
    return SQZ_OK;
  } catch (...) {
    return from_exception();
  }
}

sqz_status sqz_domain_create(const sqz_poly* p, const char* model, double r, double lambda,
                             sqz_domain** out) {
  if (!p || !model || !out) return fail(SQZ_ERR_ARGUMENT, "null argument");
  try {
    const std::string kind = model;
    if (kind == "ellipsoid")
      *out = new sqz_domain{sqz::GeneralEllipsoid(p->impl, r)};
    else if (kind == "siegel")
      *out = new sqz_domain{sqz::SiegelModel(p->impl, r)};
    else if (kind == "horosphere")
      *out = new sqz_domain{sqz::HorosphereBall(p->impl, r, lambda)};
    else
      throw sqz::error(sqz::errc::argument, "unknown model: " + kind);
    return SQZ_OK;
  } catch (...) {
    return from_exception();
  }
}

sqz_status sqz_domain_from_json(const char* json_text, sqz_domain** out) {
  if (!json_text || !out) return fail(SQZ_ERR_ARGUMENT, "null argument");
  try {
    const json j = json::parse(json_text);
    *out = new sqz_domain{sqz::make_domain(sqz::parse_domain_spec(j))};
    return SQZ_OK;
  } catch (...) {
    return from_exception();
  }
}

void sqz_domain_free(sqz_domain* d) { delete d; }

sqz_status sqz_domain_defining_value(const sqz_domain* d, const double* z, size_t n_doubles,
                                     double* out) {
  if (!d || !out) return fail(SQZ_ERR_ARGUMENT, "null argument");
  try {
    *out = sqz::defining_value(d->impl, read_point(z, n_doubles));
    return SQZ_OK;
  } catch (...) {
    return from_exception();
  }
}

sqz_status sqz_domain_contains(const sqz_domain* d, const double* z, size_t n_doubles, int* out) {
  if (!d || !out) return fail(SQZ_ERR_ARGUMENT, "null argument");
  try {
    *out = sqz::contains(d->impl, read_point(z, n_doubles)) ? 1 : 0;
    return SQZ_OK;
  } catch (...) {
    return from_exception();
  }
}

sqz_status sqz_domain_boundary_distance(const sqz_domain* d, const double* z, size_t n_doubles,
                                        char** report_json) {
  if (!d || !report_json) return fail(SQZ_ERR_ARGUMENT, "null argument");
  try {
    const sqz::CVec q = read_point(z, n_doubles);
    sqz::DistanceReport rep;
    if (std::holds_alternative<sqz::HorosphereBall>(d->impl))
      rep = sqz::boundary_distance(std::get<sqz::HorosphereBall>(d->impl), q);
    else
      rep = sqz::boundary_distance(require_ellipsoid(d, "boundary_distance"), q);
    return emit(report_json, sqz::to_json(rep));
  } catch (...) {
    return from_exception();
  }
}

sqz_status sqz_domain_circumscribed_radius(const sqz_domain* d, const double* z, size_t n_doubles,
                                           char** report_json) {
  if (!d || !report_json) return fail(SQZ_ERR_ARGUMENT, "null argument");
  try {
    const auto& dom = require_ellipsoid(d, "circumscribed_radius");
    return emit(report_json, sqz::to_json(sqz::circumscribed_radius(dom, read_point(z, n_doubles))));
  } catch (...) {
    return from_exception();
  }
}

sqz_status sqz_domain_diameter(const sqz_domain* d, char** report_json) {
  if (!d || !report_json) return fail(SQZ_ERR_ARGUMENT, "null argument");
  try {
    return emit(report_json, sqz::to_json(sqz::diameter(require_ellipsoid(d, "diameter"))));
  } catch (...) {
    return from_exception();
  }
}

sqz_status sqz_domain_sample_boundary(const sqz_domain* d, int count, uint64_t seed, double* out) {
  if (!d || !out || count < 0) return fail(SQZ_ERR_ARGUMENT, "bad argument");
  try {
    std::vector<sqz::CVec> pts;
    if (std::holds_alternative<sqz::HorosphereBall>(d->impl))
      pts = sqz::sample_boundary(std::get<sqz::HorosphereBall>(d->impl), count, seed);
    else
      pts = sqz::sample_boundary(require_ellipsoid(d, "sample_boundary"), count, seed);
    for (int i = 0; i < count; ++i) write_point(pts[i], out + 2 * size_t(i) * pts[i].size());
    return SQZ_OK;
  } catch (...) {
    return from_exception();
  }
}

sqz_status sqz_domain_sample_interior(const sqz_domain* d, int count, uint64_t seed, double* out) {
  if (!d || !out || count < 0) return fail(SQZ_ERR_ARGUMENT, "bad argument");
  try {
    std::vector<sqz::CVec> pts;
    if (std::holds_alternative<sqz::HorosphereBall>(d->impl))
      pts = sqz::sample_interior(std::get<sqz::HorosphereBall>(d->impl), count, seed);
    else
      pts = sqz::sample_interior(require_ellipsoid(d, "sample_interior"), count, seed);
    for (int i = 0; i < count; ++i) write_point(pts[i], out + 2 * size_t(i) * pts[i].size());
    return SQZ_OK;
  } catch (...) {
    return from_exception();
  }
}

sqz_status sqz_levi_report(const sqz_domain* d, const double* q, size_t n_doubles, double tol,
                           char** report_json) {
  if (!d || !report_json) return fail(SQZ_ERR_ARGUMENT, "null argument");
  try {
    const auto& dom = require_ellipsoid(d, "levi_report");
    return emit(report_json, sqz::to_json(sqz::levi_report(dom, read_point(q, n_doubles), tol)));
  } catch (...) {
    return from_exception();
  }
}

sqz_status sqz_wb_check(const sqz_domain* d, double exclusion_radius, int samples, uint64_t seed,
                        double tol, char** report_json) {
  if (!d || !report_json) return fail(SQZ_ERR_ARGUMENT, "null argument");
  try {
    const auto& dom = require_ellipsoid(d, "wb_check");
    const auto rep = sqz::wb_check(dom, exclusion_radius, samples, seed, tol);
    const sqz_status st = rep.pass ? SQZ_OK : SQZ_ERR_VALIDATION;
    if (!rep.pass) g_last_error = "wb_check did not certify strong pseudoconvexity at the sampled points";
    emit(report_json, sqz::to_json(rep));
    return st;
  } catch (...) {
    return from_exception();
  }
}

sqz_status sqz_bound(const sqz_domain* d, const char* method, const double* pt, size_t n_doubles,
                     uint64_t seed, char** report_json) {
  if (!d || !method || !report_json) return fail(SQZ_ERR_ARGUMENT, "null argument");
  try {
    const auto& dom = require_ellipsoid(d, "bound");
    sqz::GeomOptions opt;
    opt.seed = seed;
    const std::string kind = method;
    sqz::SqueezeBoundReport rep;
    if (kind == "lemma21")
      rep = sqz::lemma21_bound(dom, read_point(pt, n_doubles), opt);
    else if (kind == "slice")
      rep = sqz::slice_reduced_bound(dom, read_point(pt, n_doubles), opt);
    else
      throw sqz::error(sqz::errc::argument, "unknown bound method: " + kind);
    return emit(report_json, sqz::to_json(rep));
  } catch (...) {
    return from_exception();
  }
}

sqz_status sqz_bound_extreme(const sqz_poly* p, double r, double r_prime, double c, const double* q,
                             size_t n_doubles, int sigma_samples, uint64_t seed,
                             char** report_json) {
  if (!p || !report_json) return fail(SQZ_ERR_ARGUMENT, "null argument");
  try {
    sqz::ExtremeOptions opt;
    opt.seed = seed;
    if (sigma_samples > 0) opt.sigma_samples = sigma_samples;
    const auto rep = sqz::extreme_point_bound(p->impl, r, r_prime, c, read_point(q, n_doubles), opt);
    sqz_status st = SQZ_OK;
    if (rep.status == sqz::BoundStatus::cone_membership_error)
      st = fail(SQZ_ERR_VALIDATION, rep.message);
    else if (rep.status != sqz::BoundStatus::ok)
      st = fail(SQZ_ERR_NONCONVERGENCE, rep.message);
    emit(report_json, sqz::to_json(rep));
    return st;
  } catch (...) {
    return from_exception();
  }
}

sqz_status sqz_orbit_trace(const sqz_domain* d, const double* pts, size_t count,
                           size_t doubles_per_point, char** report_json) {
  if (!d || !pts || !report_json) return fail(SQZ_ERR_ARGUMENT, "null argument");
  try {
    const auto& dom = require_ellipsoid(d, "orbit_trace");
    std::vector<sqz::CVec> points;
    points.reserve(count);
    for (size_t i = 0; i < count; ++i)
      points.push_back(read_point(pts + i * doubles_per_point, doubles_per_point));
    return emit(report_json, sqz::to_json(sqz::orbit_trace(dom, points)));
  } catch (...) {
    return from_exception();
  }
}

sqz_status sqz_hhr_scan(const sqz_domain* d, const double* eps, size_t n_eps, int samples_per_level,
                        uint64_t seed, char** report_json) {
  if (!d || !eps || !report_json) return fail(SQZ_ERR_ARGUMENT, "null argument");
  try {
    const auto& dom = require_ellipsoid(d, "hhr_scan");
    std::vector<double> grid(eps, eps + n_eps);
    return emit(report_json, sqz::to_json(sqz::hhr_scan(dom, grid, samples_per_level, seed)));
  } catch (...) {
    return from_exception();
  }
}

sqz_status sqz_maps_verify(const sqz_domain* d, const char* map_json, int samples, uint64_t seed,
                           char** report_json) {
  if (!d || !map_json || !report_json) return fail(SQZ_ERR_ARGUMENT, "null argument");
  try {
    const json mj = json::parse(map_json);
    const auto& poly = domain_poly(d);
    const auto map = sqz::parse_map(mj, poly);

    // source/target pairs follow the map kind
    const std::string kind = mj.at("map").get<std::string>();
    double r = 1.0;
    std::visit([&](const auto& dom) { r = dom.r(); }, d->impl);
    sqz::AnyDomain source = sqz::GeneralEllipsoid(poly, 1.0);
    sqz::AnyDomain target = sqz::GeneralEllipsoid(poly, 1.0);
    if (kind == "cayley") {
      target = sqz::SiegelModel(poly, 1.0);
    } else if (kind == "dilation") {
      source = sqz::SiegelModel(poly, r);
      target = sqz::SiegelModel(poly, r);
    } else if (kind == "normalization") {
      source = sqz::SiegelModel(poly, 1.0);
    }
    return emit(report_json, sqz::to_json(sqz::verify_map(map, source, target, samples, seed)));
  } catch (...) {
    return from_exception();
  }
}

sqz_status sqz_map_apply(const sqz_poly* p, const char* map_json, const double* z, size_t n_doubles,
                         double* out) {
  if (!p || !map_json || !out) return fail(SQZ_ERR_ARGUMENT, "null argument");
  try {
    const auto map = sqz::parse_map(json::parse(map_json), p->impl);
    const sqz::CVec w = sqz::apply_map(map, read_point(z, n_doubles));
    write_point(w, out);
    return SQZ_OK;
  } catch (...) {
    return from_exception();
  }
}

sqz_status sqz_solve_normalization_scale(const sqz_poly* p, const double* q, size_t n_doubles,
                                         double* lambda_out) {
  if (!p || !lambda_out) return fail(SQZ_ERR_ARGUMENT, "null argument");
  try {
    *lambda_out = sqz::solve_normalization_scale(p->impl.signature(), read_point(q, n_doubles));
    return SQZ_OK;
  } catch (...) {
    return from_exception();
  }
}

}  // extern "C"
