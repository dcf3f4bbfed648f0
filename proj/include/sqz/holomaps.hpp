#pragma once

#include <variant>

#include "sqz/domains.hpp"

namespace sqz {

/// Self-inverse Cayley-type biholomorphism between the bounded ellipsoid
/// and its Siegel model:
///   z -> ( 2^{1/2m_j} z_j / (1+z_n)^{1/m_j}, ..., (1-z_n)/(1+z_n) ).
/// Requires a balanced polynomial context; principal fractional powers are
/// well-defined because Re(1+z_n) > 0 on both sides.
class CayleyMap {
 public:
  explicit CayleyMap(const WPolynomial& poly);

  const WeightSignature& signature() const { return sig_; }
  CVec apply(const CVec& z) const;

 private:
  WeightSignature sig_;
};

/// Disc automorphism acting on z_n with the compensating anisotropic factor
/// on z':
///   z -> ( (1-|a|^2)^{1/2m_j} z_j / (1-conj(a) z_n)^{1/m_j}, ...,
///          e^{i theta} (z_n - a)/(1 - conj(a) z_n) ).
class EllipsoidAutomorphism {
 public:
  EllipsoidAutomorphism(const WPolynomial& poly, Complex a, double theta);

  Complex a() const { return a_; }
  double theta() const { return theta_; }
  CVec apply(const CVec& z) const;

 private:
  WeightSignature sig_;
  Complex a_;
  double theta_;
};

/// Anisotropic dilation z_j -> z_j / lambda^{1/2m_j}, z_n -> z_n / lambda.
class Dilation {
 public:
  Dilation(const WeightSignature& sig, double lambda);

  double lambda() const { return lambda_; }
  CVec apply(const CVec& z) const;

 private:
  WeightSignature sig_;
  double lambda_;
};

/// Composition G_lambda = cayley o dilation, mapping the Siegel side into
/// the bounded side.
class NormalizationMap {
 public:
  NormalizationMap(const WPolynomial& poly, double lambda);

  double lambda() const { return lambda_; }
  CVec apply(const CVec& z) const;

 private:
  CayleyMap cayley_;
  Dilation dilation_;
  double lambda_;
};

using HolomorphicMap = std::variant<CayleyMap, EllipsoidAutomorphism, Dilation, NormalizationMap>;

CVec apply_map(const HolomorphicMap& map, const CVec& z);

/// Moves an interior point of the ellipsoid into the slice {z_n = 0} with
/// the automorphism of parameter (p_n, 0). The image's last coordinate is
/// exactly zero.
CVec orbit_to_slice(const WPolynomial& poly, const CVec& p);

/// Unique lambda > 0 with ||dilation_lambda(q)|| = 1, via bisection on the
/// strictly decreasing scale map. The residual is at most `tol`.
double solve_normalization_scale(const WeightSignature& sig, const CVec& q, double tol = 1e-12);

struct MapVerificationReport {
  int samples = 0;
  uint64_t seed = 0;
  int sign_disagreements = 0;      // interior/exterior samples crossing sides
  double max_boundary_residual = 0.0;   // |rho_target| over mapped boundary points
  double max_cayley_identity_residual = 0.0;  // transfer identity of the Cayley map
  double max_violation = 0.0;      // max of the above (1.0 when signs disagree)
};

/// Samples the source domain (interior, exterior and boundary points) and
/// checks that the map preserves the defining-value sign and sends boundary
/// to boundary; for the Cayley map it additionally evaluates the
/// defining-function transfer identity
///   2 Re((1-z_n)/(1+z_n)) - P(psi(z)') = 2 (1-|z_n|^2-P(z')) / |1+z_n|^2.
/// Siegel-side sources are sampled through the Cayley transport of the
/// matching bounded domain.
MapVerificationReport verify_map(const HolomorphicMap& map, const AnyDomain& source,
                                 const AnyDomain& target, int sample_count, uint64_t seed);

}  // namespace sqz
