#pragma once

#include "sqz/domains.hpp"

namespace sqz {

enum class PseudoconvexityClass {
  strongly_pseudoconvex,
  weakly_pseudoconvex,
  indefinite,
  degenerate_gradient,
};

const char* to_string(PseudoconvexityClass c);

/// Levi data of the defining function at a boundary point: eigenvalues of
/// the complex Hessian restricted to the complex tangent space
/// { t : sum_j drho/dz_j(q) t_j = 0 }, listed ascending.
struct LeviReport {
  CVec point;
  double gradient_norm = 0.0;
  std::vector<double> restricted_eigenvalues;
  PseudoconvexityClass classification = PseudoconvexityClass::degenerate_gradient;
  double tol = 0.0;
};

/// Requires |rho(q)| <= 1e-10. A vanishing complex gradient is reported as
/// degenerate instead of being classified.
LeviReport levi_report(const GeneralEllipsoid& dom, const CVec& q, double tol = 1e-8);

/// Complex gradient (drho/dz_1, ..., drho/dz_n) of the defining function.
CVec defining_gradient(const GeneralEllipsoid& dom, const CVec& z);

/// Full complex Hessian d^2 rho / dz_j dconj(z_k) of the defining function.
CMat defining_hessian(const GeneralEllipsoid& dom, const CVec& z);

/// Restricted Levi eigenvalues for an explicitly supplied orthonormal
/// tangent basis (columns). Exposed for the basis-independence checks.
std::vector<double> restricted_levi_eigenvalues(const CMat& hessian, const CMat& tangent_basis);

/// Orthonormal basis of { t : sum_j g_j t_j = 0 } as matrix columns.
CMat tangent_basis_from_gradient(const CVec& gradient);

struct WBTrendEntry {
  double radius = 0.0;
  double min_eigenvalue = 0.0;
  int samples = 0;
};

struct WBReport {
  bool pass = false;
  double tol = 0.0;
  double min_eigenvalue = 0.0;
  CVec argmin_point;
  int samples = 0;
  double exclusion_radius = 0.0;
  std::vector<WBTrendEntry> trend;
  uint64_t seed = 0;
  std::string note;
};

/// Samples boundary points with sigma(z') >= exclusion_radius and reports
/// the minimum restricted Levi eigenvalue. The trend table tracks the
/// minimum over nested sample sets for a geometric grid of shrinking radii,
/// so it is non-increasing toward the excluded circle by construction.
/// The certificate only speaks for the sampled points.
WBReport wb_check(const GeneralEllipsoid& dom, double exclusion_radius, int sample_count,
                  uint64_t seed, double tol = 1e-8);

}  // namespace sqz
