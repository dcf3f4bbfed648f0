#include "sqz/domains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sqz/optimize.hpp"

namespace sqz {

namespace {
constexpr double kPi = 3.141592653589793238462643383279503;
}

GeneralEllipsoid::GeneralEllipsoid(WPolynomial poly, double r) : poly_(std::move(poly)), r_(r) {
  if (!(r > 0.0 && r <= 1.0)) throw error(errc::validation, "ellipsoid scale r must lie in (0,1]");
  if (!poly_.positivity_passed())
    throw error(errc::validation, "ellipsoid requires a polynomial with a passing positivity certificate");
}

double GeneralEllipsoid::defining_value(const CVec& z) const {
  if (z.size() != ambient_dim()) throw error(errc::argument, "dimension mismatch in defining_value");
  const CVec zp = z.head(z.size() - 1);
  return std::norm(z[z.size() - 1]) + poly_.evaluate(zp) / r_ - 1.0;
}

double GeneralEllipsoid::coordinate_bound(int j) const {
  const auto& c = poly_.comparability_constants();
  return std::pow(r_ / c.c1, 1.0 / (2.0 * poly_.signature().m[j]));
}

SiegelModel::SiegelModel(WPolynomial poly, double r) : poly_(std::move(poly)), r_(r) {
  if (!(r > 0.0 && r <= 1.0)) throw error(errc::validation, "siegel scale r must lie in (0,1]");
  if (!poly_.positivity_passed())
    throw error(errc::validation, "siegel model requires a polynomial with a passing positivity certificate");
}

double SiegelModel::defining_value(const CVec& z) const {
  if (z.size() != ambient_dim()) throw error(errc::argument, "dimension mismatch in defining_value");
  const CVec zp = z.head(z.size() - 1);
  return poly_.evaluate(zp) / r_ - 2.0 * z[z.size() - 1].real();
}

HorosphereBall::HorosphereBall(WPolynomial poly, double r, double lambda)
    : poly_(std::move(poly)), r_(r), lambda_(lambda) {
  if (!(r > 0.0 && r <= 1.0)) throw error(errc::validation, "horosphere radius r must lie in (0,1]");
  if (!(lambda > 0.0)) throw error(errc::validation, "dilation scale lambda must be positive");
  if (!poly_.positivity_passed())
    throw error(errc::validation, "horosphere ball requires a polynomial with a passing positivity certificate");
}

double HorosphereBall::defining_value(const CVec& z) const {
  if (z.size() != ambient_dim()) throw error(errc::argument, "dimension mismatch in defining_value");
  const CVec zp = z.head(z.size() - 1);
  const Complex zn = z[z.size() - 1];
  return lambda_ * std::norm(zn) + poly_.evaluate(zp) - 2.0 * r_ * zn.real();
}

bool ConeRegion::contains(const CVec& z) const {
  HorosphereBall ball(poly, r_prime, 1.0);
  if (!ball.contains(z)) return false;
  const Complex zn = z[z.size() - 1];
  return std::abs(zn.imag()) <= c * std::abs(zn.real());
}

// ---------------------------------------------------------------------------
// boundary distance / circumscribed radius / diameter

namespace {

// First crossing of {rho = 0} along the ray t -> base + t*dir; empty when
// the ray never leaves the domain before t_max.
std::optional<CVec> first_crossing(const std::function<double(const CVec&)>& rho, const CVec& base,
                                   const CVec& dir, double t_init, double t_max) {
  auto f = [&](double t) { return rho(base + t * dir); };
  const double t = ray_crossing(f, t_init, t_max);
  if (t < 0.0) return std::nullopt;
  return base + t * dir;
}

std::vector<CVec> seed_directions(int dim, int random_rays, uint64_t seed) {
  std::vector<CVec> dirs;
  for (int j = 0; j < dim; ++j) {
    for (int s : {+1, -1}) {
      CVec d = CVec::Zero(dim);
      d[j] = Complex(double(s), 0.0);
      dirs.push_back(d);
      d[j] = Complex(0.0, double(s));
      dirs.push_back(d);
    }
  }
  Rng rng(seed);
  for (int i = 0; i < random_rays; ++i) {
    Rng st = rng.stream(uint64_t(i));
    CVec d = st.cgaussian(dim);
    const double n = d.norm();
    if (n > 1e-12) dirs.push_back(d / n);
  }
  return dirs;
}

struct RadialReference {
  std::function<double(const CVec&)> rho;
  CVec center;
  double ray_scale;
};

// Radial projection onto {rho = 0} from the reference center. Keeps every
// candidate exactly feasible up to the bisection tolerance.
std::optional<CVec> radial_project(const RadialReference& ref, const CVec& w) {
  const CVec dir = w - ref.center;
  const double n = dir.norm();
  if (n < 1e-14) return std::nullopt;
  return first_crossing(ref.rho, ref.center, dir / n, ref.ray_scale, 1e9 * ref.ray_scale);
}

DistanceReport distance_impl(const std::function<double(const CVec&)>& rho, const CVec& center,
                             double ray_scale, const CVec& z, const GeomOptions& opt) {
  const int dim = int(z.size());
  const double rho_z = rho(z);
  if (rho_z > opt.feasibility_tol)
    throw error(errc::validation, "boundary_distance requires an interior point");
  DistanceReport rep;
  if (std::abs(rho_z) <= opt.feasibility_tol) {
    rep.distance = 0.0;
    rep.boundary_point = z;
    rep.residual = std::abs(rho_z);
    rep.on_boundary_warning = true;
    return rep;
  }

  RadialReference ref{rho, center, ray_scale};

  // ray shooting from the query point produces the candidate set
  struct Candidate {
    CVec point;
    double dist;
  };
  std::vector<Candidate> cands;
  for (const auto& d : seed_directions(dim, opt.random_rays, opt.seed)) {
    auto b = first_crossing(rho, z, d, 0.25 * ray_scale, 1e9 * ray_scale);
    if (b) cands.push_back({*b, (*b - z).norm()});
  }
  if (cands.empty()) throw error(errc::nonconvergence, "no boundary crossing found from the query point");
  std::sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) { return a.dist < b.dist; });
  rep.seeds = int(cands.size());

  // local refinement: minimize the distance to the radially projected point
  auto objective = [&](const RVec& xr) {
    auto p = radial_project(ref, to_complex(xr));
    if (!p) return 1e100;
    return (*p - z).norm();
  };
  CVec best = cands.front().point;
  double best_d = cands.front().dist;
  std::vector<double> refined;
  const int k = std::min<int>(opt.refine_candidates, int(cands.size()));
  for (int i = 0; i < k; ++i) {
    auto nm = nelder_mead(objective, to_real(cands[i].point), 0.05 * std::max(1.0, cands[i].dist),
                          opt.nm_max_iters, opt.nm_ftol);
    auto p = radial_project(ref, to_complex(nm.x));
    if (!p) continue;
    const double d = (*p - z).norm();
    refined.push_back(d);
    if (d < best_d) {
      best_d = d;
      best = *p;
    }
  }
  if (!refined.empty())
    rep.seed_spread = *std::max_element(refined.begin(), refined.end()) -
                      *std::min_element(refined.begin(), refined.end());
  rep.distance = best_d;
  rep.boundary_point = best;
  rep.residual = std::abs(rho(best));
  return rep;
}

}  // namespace

DistanceReport boundary_distance(const GeneralEllipsoid& dom, const CVec& z, const GeomOptions& opt) {
  auto rho = [&dom](const CVec& w) { return dom.defining_value(w); };
  return distance_impl(rho, CVec::Zero(dom.ambient_dim()), 1.0, z, opt);
}

DistanceReport boundary_distance(const HorosphereBall& dom, const CVec& z, const GeomOptions& opt) {
  auto rho = [&dom](const CVec& w) { return dom.defining_value(w); };
  CVec center = CVec::Zero(dom.ambient_dim());
  center[dom.ambient_dim() - 1] = Complex(dom.r() / dom.lambda(), 0.0);
  return distance_impl(rho, center, dom.r() / dom.lambda(), z, opt);
}

DistanceReport boundary_distance(const ImplicitDomain& dom, const CVec& z, const GeomOptions& opt) {
  return distance_impl(dom.rho, dom.center, dom.ray_scale, z, opt);
}

namespace {

// Deterministic boundary anchors: the z_n poles and the weighted-coordinate
// extremes in the slice {z_n = 0}. They pin the exact extrema of the round
// cases and give the search good straddles elsewhere.
std::vector<CVec> boundary_anchors(const GeneralEllipsoid& dom) {
  const int dim = dom.ambient_dim();
  std::vector<CVec> out;
  for (double phase : {0.0, 0.5 * kPi, kPi, 1.5 * kPi}) {
    CVec z = CVec::Zero(dim);
    z[dim - 1] = std::polar(1.0, phase);
    out.push_back(z);
  }
  const auto& sig = dom.poly().signature();
  for (int j = 0; j < sig.vars(); ++j) {
    for (int s : {+1, -1}) {
      CVec zp = CVec::Zero(sig.vars());
      zp[j] = Complex(double(s), 0.0);
      const double pv = dom.poly().evaluate(zp);
      if (pv <= 0.0) continue;
      zp = scale_point(sig, dom.r() / pv, zp);
      CVec z(dim);
      z.head(sig.vars()) = zp;
      z[dim - 1] = Complex(0.0, 0.0);
      out.push_back(z);
    }
  }
  return out;
}

}  // namespace

RadiusReport circumscribed_radius(const GeneralEllipsoid& dom, const CVec& z, const GeomOptions& opt) {
  if (z.size() != dom.ambient_dim()) throw error(errc::argument, "dimension mismatch in circumscribed_radius");
  auto rho = [&dom](const CVec& w) { return dom.defining_value(w); };
  RadialReference ref{rho, CVec::Zero(dom.ambient_dim()), 1.0};

  auto samples = sample_boundary(dom, opt.boundary_samples, opt.seed);
  auto anchors = boundary_anchors(dom);
  samples.insert(samples.end(), anchors.begin(), anchors.end());

  std::vector<std::pair<double, CVec>> cands;
  for (const auto& b : samples) cands.push_back({(b - z).norm(), b});
  std::sort(cands.begin(), cands.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  auto objective = [&](const RVec& xr) {
    auto p = radial_project(ref, to_complex(xr));
    if (!p) return 1e100;
    return -(*p - z).norm();
  };
  RadiusReport rep;
  rep.radius = cands.front().first;
  rep.far_point = cands.front().second;
  const int k = std::min<int>(opt.refine_candidates, int(cands.size()));
  for (int i = 0; i < k; ++i) {
    auto nm = nelder_mead(objective, to_real(cands[i].second), 0.1, opt.nm_max_iters, opt.nm_ftol);
    auto p = radial_project(ref, to_complex(nm.x));
    if (!p) continue;
    const double d = (*p - z).norm();
    if (d > rep.radius) {
      rep.radius = d;
      rep.far_point = *p;
    }
  }

  double coord_sum = 1.0;
  for (int j = 0; j < dom.poly().vars(); ++j) coord_sum += dom.coordinate_bound(j);
  rep.analytic_bound = z.norm() + coord_sum;
  return rep;
}

DiameterReport diameter(const GeneralEllipsoid& dom, const GeomOptions& opt) {
  auto rho = [&dom](const CVec& w) { return dom.defining_value(w); };
  RadialReference ref{rho, CVec::Zero(dom.ambient_dim()), 1.0};

  auto samples = sample_boundary(dom, opt.boundary_samples, opt.seed);
  auto anchors = boundary_anchors(dom);
  samples.insert(samples.end(), anchors.begin(), anchors.end());

  DiameterReport rep;
  for (size_t i = 0; i < samples.size(); ++i)
    for (size_t j = i + 1; j < samples.size(); ++j) {
      const double d = (samples[i] - samples[j]).norm();
      if (d > rep.value) {
        rep.value = d;
        rep.a = samples[i];
        rep.b = samples[j];
      }
    }

  // alternate local maximizations over the two endpoints
  for (int round = 0; round < opt.refine_rounds; ++round) {
    for (int side = 0; side < 2; ++side) {
      const CVec& fixed = side == 0 ? rep.b : rep.a;
      CVec& moving = side == 0 ? rep.a : rep.b;
      auto objective = [&](const RVec& xr) {
        auto p = radial_project(ref, to_complex(xr));
        if (!p) return 1e100;
        return -(*p - fixed).norm();
      };
      auto nm = nelder_mead(objective, to_real(moving), 0.1, opt.nm_max_iters, opt.nm_ftol);
      auto p = radial_project(ref, to_complex(nm.x));
      if (!p) continue;
      const double d = (*p - fixed).norm();
      if (d > rep.value) {
        rep.value = d;
        moving = *p;
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// samplers

namespace {

// Draws z' with P(z')/cap = t for the given t in (0,1]; exact by weighted
// homogeneity.
CVec draw_zp_at_level(const WPolynomial& poly, double cap, double t, Rng& rng) {
  const auto& sig = poly.signature();
  for (int attempt = 0; attempt < 64; ++attempt) {
    CVec u = rng.cgaussian(sig.vars());
    const double pu = poly.evaluate(u);
    if (pu > 1e-14) return scale_point(sig, t * cap / pu, u);
  }
  throw error(errc::nonconvergence, "could not draw a polynomial level-set point");
}

}  // namespace

std::vector<CVec> sample_boundary(const GeneralEllipsoid& dom, int count, uint64_t seed) {
  std::vector<CVec> out;
  out.reserve(std::max(count, 0));
  Rng rng(seed);
  const int dim = dom.ambient_dim();
  for (int i = 0; i < count; ++i) {
    Rng st = rng.stream(uint64_t(i));
    const double t = st.uniform01();  // P(z')/r lands at t < 1
    CVec zp = draw_zp_at_level(dom.poly(), dom.r(), t, st);
    const double pv = dom.poly().evaluate(zp) / dom.r();
    CVec z(dim);
    z.head(dim - 1) = zp;
    z[dim - 1] = std::polar(std::sqrt(std::max(0.0, 1.0 - pv)), st.uniform(0.0, 2.0 * kPi));
    out.push_back(z);
  }
  return out;
}

std::vector<CVec> sample_boundary(const HorosphereBall& dom, int count, uint64_t seed) {
  std::vector<CVec> out;
  out.reserve(std::max(count, 0));
  Rng rng(seed ^ 0x9E3779B97F4A7C15ULL);
  const int dim = dom.ambient_dim();
  const double r = dom.r(), lambda = dom.lambda();
  // lambda |z_n - r/lambda|^2 = r^2/lambda - P(z')
  for (int i = 0; i < count; ++i) {
    Rng st = rng.stream(uint64_t(i));
    const double t = st.uniform01();
    CVec zp = draw_zp_at_level(dom.poly(), r * r / lambda, t, st);
    const double pv = dom.poly().evaluate(zp);
    const double rad2 = std::max(0.0, (r * r / lambda - pv) / lambda);
    CVec z(dim);
    z.head(dim - 1) = zp;
    z[dim - 1] = Complex(r / lambda, 0.0) + std::polar(std::sqrt(rad2), st.uniform(0.0, 2.0 * kPi));
    out.push_back(z);
  }
  return out;
}

std::vector<CVec> sample_interior(const GeneralEllipsoid& dom, int count, uint64_t seed) {
  std::vector<CVec> out;
  out.reserve(std::max(count, 0));
  Rng rng(seed ^ 0xD1B54A32D192ED03ULL);
  const int dim = dom.ambient_dim();
  for (int i = 0; i < count; ++i) {
    Rng st = rng.stream(uint64_t(i));
    const double t = st.uniform01();
    CVec zp = t < 1e-12 ? CVec::Zero(dim - 1) : draw_zp_at_level(dom.poly(), dom.r(), t, st);
    const double pv = dom.poly().evaluate(zp) / dom.r();
    const double room = std::max(0.0, 1.0 - pv);
    CVec z(dim);
    z.head(dim - 1) = zp;
    z[dim - 1] =
        std::polar(std::sqrt(room * st.uniform01()) * 0.999, st.uniform(0.0, 2.0 * kPi));
    out.push_back(z);
  }
  return out;
}

std::vector<CVec> sample_interior(const HorosphereBall& dom, int count, uint64_t seed) {
  std::vector<CVec> out;
  out.reserve(std::max(count, 0));
  Rng rng(seed ^ 0xA24BAED4963EE407ULL);
  const int dim = dom.ambient_dim();
  const double r = dom.r(), lambda = dom.lambda();
  for (int i = 0; i < count; ++i) {
    Rng st = rng.stream(uint64_t(i));
    const double t = st.uniform01();
    CVec zp = t < 1e-12 ? CVec::Zero(dim - 1) : draw_zp_at_level(dom.poly(), r * r / lambda, t, st);
    const double pv = dom.poly().evaluate(zp);
    const double rad2 = std::max(0.0, (r * r / lambda - pv) / lambda);
    CVec z(dim);
    z.head(dim - 1) = zp;
    z[dim - 1] = Complex(r / lambda, 0.0) +
                 std::polar(std::sqrt(rad2 * st.uniform01()) * 0.999, st.uniform(0.0, 2.0 * kPi));
    out.push_back(z);
  }
  return out;
}

bool family_covers(const WPolynomial& poly, double lambda, double r, const std::vector<CVec>& K) {
  if (!(lambda > 0.0)) throw error(errc::validation, "lambda must be positive");
  SiegelModel model(poly, r);
  for (const auto& z : K) {
    if (!model.contains(z))
      throw error(errc::validation, "family_covers requires points inside the Siegel model");
    const CVec zp = z.head(z.size() - 1);
    const Complex zn = z[z.size() - 1];
    if (!(lambda * std::norm(zn) + poly.evaluate(zp) < 2.0 * r * zn.real())) return false;
  }
  return true;
}

double defining_value(const AnyDomain& dom, const CVec& z) {
  return std::visit([&](const auto& d) { return d.defining_value(z); }, dom);
}

bool contains(const AnyDomain& dom, const CVec& z) { return defining_value(dom, z) < 0.0; }

}  // namespace sqz
