#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sqz/wpoly.hpp"

namespace sqz {

/// Bounded domain |z_n|^2 + P(z')/r < 1. r = 1 is the base ellipsoid;
/// r in (0,1) shrinks the polynomial part.
class GeneralEllipsoid {
 public:
  GeneralEllipsoid(WPolynomial poly, double r = 1.0);

  const WPolynomial& poly() const { return poly_; }
  double r() const { return r_; }
  int ambient_dim() const { return poly_.ambient_dim(); }

  double defining_value(const CVec& z) const;
  bool contains(const CVec& z) const { return defining_value(z) < 0.0; }

  /// |z_j| <= (r/c1)^(1/2m_j) and |z_n| < 1 on the closure.
  double coordinate_bound(int j) const;

 private:
  WPolynomial poly_;
  double r_;
};

/// Unbounded model P(z')/r < 2 Re(z_n).
class SiegelModel {
 public:
  SiegelModel(WPolynomial poly, double r = 1.0);

  const WPolynomial& poly() const { return poly_; }
  double r() const { return r_; }
  int ambient_dim() const { return poly_.ambient_dim(); }

  double defining_value(const CVec& z) const;
  bool contains(const CVec& z) const { return defining_value(z) < 0.0; }

 private:
  WPolynomial poly_;
  double r_;
};

/// Horosphere-type ball. At lambda = 1 this is |z_n - r|^2 + P(z') < r^2;
/// the general form lambda |z_n|^2 + P(z') < 2 r Re(z_n) describes its
/// image under the anisotropic dilation of parameter lambda.
class HorosphereBall {
 public:
  HorosphereBall(WPolynomial poly, double r, double lambda = 1.0);

  const WPolynomial& poly() const { return poly_; }
  double r() const { return r_; }
  double lambda() const { return lambda_; }
  int ambient_dim() const { return poly_.ambient_dim(); }

  double defining_value(const CVec& z) const;
  bool contains(const CVec& z) const { return defining_value(z) < 0.0; }

 private:
  WPolynomial poly_;
  double r_;
  double lambda_;
};

/// Approach region: horosphere membership plus the closed sector
/// |Im z_n| <= c |Re z_n|.
struct ConeRegion {
  WPolynomial poly;
  double r_prime;
  double c;

  bool contains(const CVec& z) const;
};

struct GeomOptions {
  int random_rays = 24;       // seed directions beyond the coordinate axes
  int refine_candidates = 6;  // local searches launched from the best seeds
  int nm_max_iters = 400;
  double nm_ftol = 1e-14;
  int boundary_samples = 192;  // for circumscribed radius / diameter
  int refine_rounds = 3;
  uint64_t seed = 20240801ULL;
  double feasibility_tol = 1e-10;
};

struct DistanceReport {
  double distance = 0.0;
  CVec boundary_point;
  double residual = 0.0;     // |rho| at the reported boundary point
  double seed_spread = 0.0;  // best-to-worst gap across refined candidates
  int seeds = 0;
  bool on_boundary_warning = false;
};

struct RadiusReport {
  double radius = 0.0;
  CVec far_point;
  double analytic_bound = 0.0;
};

struct DiameterReport {
  double value = 0.0;
  CVec a;
  CVec b;
};

/// A domain given only through its defining function, star-shaped enough
/// around `center` for radial projection onto {rho = 0} to make sense.
/// `radial_cap(dir)` may bound the admissible ray parameter (used for
/// pulled-back defining functions that are only trusted inside a larger
/// reference domain).
struct ImplicitDomain {
  std::function<double(const CVec&)> rho;
  CVec center;
  int ambient_dim = 0;
  double ray_scale = 1.0;  // initial bracket length for ray marching
};

/// r(z, Omega): distance from an interior point to the boundary, reported
/// as a certified-feasible upper bound (the witness satisfies
/// |rho| <= feasibility_tol).
DistanceReport boundary_distance(const GeneralEllipsoid& dom, const CVec& z,
                                 const GeomOptions& opt = {});
DistanceReport boundary_distance(const HorosphereBall& dom, const CVec& z,
                                 const GeomOptions& opt = {});
DistanceReport boundary_distance(const ImplicitDomain& dom, const CVec& z,
                                 const GeomOptions& opt = {});

/// R(z, Omega): radius of the smallest ball around z containing the domain.
RadiusReport circumscribed_radius(const GeneralEllipsoid& dom, const CVec& z,
                                  const GeomOptions& opt = {});

DiameterReport diameter(const GeneralEllipsoid& dom, const GeomOptions& opt = {});

/// Deterministic boundary sampler; every returned point satisfies
/// |rho| <= 1e-10.
std::vector<CVec> sample_boundary(const GeneralEllipsoid& dom, int count, uint64_t seed);
std::vector<CVec> sample_boundary(const HorosphereBall& dom, int count, uint64_t seed);

std::vector<CVec> sample_interior(const GeneralEllipsoid& dom, int count, uint64_t seed);
std::vector<CVec> sample_interior(const HorosphereBall& dom, int count, uint64_t seed);

/// True iff every point of K satisfies lambda |z_n|^2 + P(z') < 2 r Re(z_n),
/// i.e. K sits inside the dilated horosphere. Points must lie in the Siegel
/// model of parameter r.
bool family_covers(const WPolynomial& poly, double lambda, double r, const std::vector<CVec>& K);

using AnyDomain = std::variant<GeneralEllipsoid, SiegelModel, HorosphereBall>;

double defining_value(const AnyDomain& dom, const CVec& z);
bool contains(const AnyDomain& dom, const CVec& z);

}  // namespace sqz
