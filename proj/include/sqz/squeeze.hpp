#pragma once

#include <optional>

#include "sqz/holomaps.hpp"
#include "sqz/levi.hpp"

namespace sqz {

enum class BoundMethod { lemma21, slice_reduced, extreme_point };
const char* to_string(BoundMethod m);

enum class BoundStatus {
  ok,
  cone_membership_error,
  lambda_solve_error,
  normalization_not_interior,
};
const char* to_string(BoundStatus s);

struct NumericsInfo {
  uint64_t seed = 0;
  int random_rays = 0;
  int refine_candidates = 0;
  int nm_max_iters = 0;
  int boundary_samples = 0;
  int sigma_samples = 0;
  double feasibility_tol = 0.0;
};

struct SqueezeTrace {
  std::optional<CVec> orbit_image;      // slice image for the reduced method
  std::optional<double> inscribed;      // r(z, Omega)
  std::optional<double> circumscribed;  // R(z, Omega)
  std::optional<double> lambda;         // normalization scale
  std::optional<CVec> normalized_point;
  std::optional<double> delta_q;        // distance to the normalized boundary
  std::optional<double> domain_diameter;
  std::optional<double> gamma0_uniform;    // sampled uniform constant delta/d
  std::optional<double> sigma_gap;         // sampled dist(Sigma, boundary of D^r)
  std::optional<double> diameter_alt_ratio;  // sharper per-point alternative delta_q / R(w)
};

struct SqueezeBoundReport {
  CVec point;
  double bound = 0.0;
  BoundMethod method = BoundMethod::lemma21;
  BoundStatus status = BoundStatus::ok;
  std::string message;
  SqueezeTrace trace;
  NumericsInfo numerics;
};

/// bound = r(z, Omega) / R(z, Omega).
SqueezeBoundReport lemma21_bound(const GeneralEllipsoid& dom, const CVec& z,
                                 const GeomOptions& opt = {});

/// Moves p into the slice {z_n = 0} with the automorphism of parameter
/// (p_n, 0) and evaluates the radius-ratio bound there; by invariance the
/// result bounds the squeezing function at p itself.
SqueezeBoundReport slice_reduced_bound(const GeneralEllipsoid& dom, const CVec& p,
                                       const GeomOptions& opt = {});

struct ExtremeOptions : GeomOptions {
  int sigma_samples = 24;  // sample budget for the uniform constant
};

/// Normalization pipeline at a point q of the approach region
/// Gamma(r', c) on the Siegel side (the horosphere D(r) is assumed inside
/// the target domain):
///   1. solve lambda with ||dilate_lambda(q)|| = 1,
///   2. w = cayley(dilate_lambda(q)),
///   3. delta_q = distance from w to the boundary of the normalized
///      horosphere image,
///   4. bound = delta_q / diameter of the base ellipsoid.
/// Also reports the sampled uniform constant gamma0 built from the unit
/// sphere section of the approach cone. Regime violations come back as a
/// diagnostic status, not as a fabricated bound.
SqueezeBoundReport extreme_point_bound(const WPolynomial& poly, double r, double r_prime, double c,
                                       const CVec& q, const ExtremeOptions& opt = {});

struct OrbitRecord {
  CVec a;
  CVec b;                      // slice image coordinates
  double P_b = 0.0;            // polynomial value at the slice image
  double dist_estimate = 0.0;  // cheap boundary distance estimate (axis rays)
  double defining_gap = 0.0;   // 1 - |a_n|^2 - P(a')
  double ratio = 0.0;          // P(a') / defining_gap
};

struct OrbitTraceReport {
  std::vector<OrbitRecord> records;
  int case_classification = 1;  // 1: ratio bounded, 2: ratio diverging
  std::string rule;
};

/// Diagnoses how a sequence of interior points approaches the degenerate
/// boundary circle: case 1 keeps the slice images inside a compact part of
/// the slice, case 2 pushes them to the slice rim.
OrbitTraceReport orbit_trace(const GeneralEllipsoid& dom, const std::vector<CVec>& points);

struct HHRLevel {
  double eps = 0.0;
  double r_K = 0.0;  // inf of boundary distances over the slice section
  double R_K = 0.0;  // sup of circumscribed radii over the slice section
  double bound = 0.0;
  int samples = 0;
};

struct HHRProfile {
  std::vector<HHRLevel> levels;
  uint64_t seed = 0;
  std::string caveat;
};

/// Uniform lower bounds on compact slice sections
/// K_eps = {(z',0) : P(z')/r <= 1-eps}: each level reports
/// r(K_eps)/R(K_eps). The eps -> 0 limit degenerates; global uniformity
/// additionally needs the boundary asymptotics near strongly pseudoconvex
/// points, which is cited background and not computed here.
HHRProfile hhr_scan(const GeneralEllipsoid& dom, const std::vector<double>& eps_grid,
                    int samples_per_level, uint64_t seed, const GeomOptions& opt = {});

}  // namespace sqz
