#include "sqz/squeeze.hpp"

#include <algorithm>
#include <cmath>

#include "sqz/optimize.hpp"

namespace sqz {

const char* to_string(BoundMethod m) {
  switch (m) {
    case BoundMethod::lemma21:
      return "lemma21";
    case BoundMethod::slice_reduced:
      return "slice-reduced";
    case BoundMethod::extreme_point:
      return "extreme-point";
  }
  return "unknown";
}

const char* to_string(BoundStatus s) {
  switch (s) {
    case BoundStatus::ok:
      return "ok";
    case BoundStatus::cone_membership_error:
      return "cone-membership-error";
    case BoundStatus::lambda_solve_error:
      return "lambda-solve-error";
    case BoundStatus::normalization_not_interior:
      return "normalization-not-interior";
  }
  return "unknown";
}

namespace {

NumericsInfo numerics_from(const GeomOptions& opt, int sigma_samples = 0) {
  NumericsInfo n;
  n.seed = opt.seed;
  n.random_rays = opt.random_rays;
  n.refine_candidates = opt.refine_candidates;
  n.nm_max_iters = opt.nm_max_iters;
  n.boundary_samples = opt.boundary_samples;
  n.sigma_samples = sigma_samples;
  n.feasibility_tol = opt.feasibility_tol;
  return n;
}

}  // namespace

SqueezeBoundReport lemma21_bound(const GeneralEllipsoid& dom, const CVec& z, const GeomOptions& opt) {
  SqueezeBoundReport rep;
  rep.point = z;
  rep.method = BoundMethod::lemma21;
  rep.numerics = numerics_from(opt);
  const auto dist = boundary_distance(dom, z, opt);
  const auto rad = circumscribed_radius(dom, z, opt);
  rep.trace.inscribed = dist.distance;
  rep.trace.circumscribed = rad.radius;
  rep.bound = dist.distance / rad.radius;
  return rep;
}

SqueezeBoundReport slice_reduced_bound(const GeneralEllipsoid& dom, const CVec& p,
                                       const GeomOptions& opt) {
  if (!dom.contains(p))
    throw error(errc::validation, "slice_reduced_bound requires an interior point");
  const CVec q = orbit_to_slice(dom.poly(), p);
  SqueezeBoundReport rep = lemma21_bound(dom, q, opt);
  rep.point = p;
  rep.method = BoundMethod::slice_reduced;
  rep.trace.orbit_image = q;
  return rep;
}

// ---------------------------------------------------------------------------
// normalization pipeline

SqueezeBoundReport extreme_point_bound(const WPolynomial& poly, double r, double r_prime, double c,
                                       const CVec& q, const ExtremeOptions& opt) {
  if (!(r > 0.0 && r <= 1.0)) throw error(errc::validation, "horosphere parameter r must lie in (0,1]");
  if (!(r_prime > 0.0 && r_prime < r))
    throw error(errc::validation, "approach parameter r' must satisfy 0 < r' < r");
  if (!(c > 0.0)) throw error(errc::validation, "cone aperture c must be positive");
  if (q.size() != poly.ambient_dim())
    throw error(errc::argument, "dimension mismatch in extreme_point_bound");
  if (!poly.balanced())
    throw error(errc::validation, "the normalization pipeline requires a balanced polynomial");

  SqueezeBoundReport rep;
  rep.point = q;
  rep.method = BoundMethod::extreme_point;
  rep.numerics = numerics_from(opt, opt.sigma_samples);

  ConeRegion cone{poly, r_prime, c};
  if (!cone.contains(q)) {
    rep.status = BoundStatus::cone_membership_error;
    rep.message = "point is outside the approach region (horosphere membership or sector bound failed)";
    return rep;
  }

  double lambda = 0.0;
  try {
    lambda = solve_normalization_scale(poly.signature(), q);
  } catch (const error&) {
    rep.status = BoundStatus::lambda_solve_error;
    rep.message = "normalization scale solve failed";
    return rep;
  }
  rep.trace.lambda = lambda;

  CayleyMap psi(poly);
  Dilation dil(poly.signature(), lambda);
  const CVec w = psi.apply(dil.apply(q));
  rep.trace.normalized_point = w;

  // normalized horosphere image, described through the involution:
  // v belongs to it iff lambda |psi(v)_n|^2 + P(psi(v)') < 2 r Re(psi(v)_n);
  // intersecting with the base ellipsoid keeps the formula trustworthy.
  GeneralEllipsoid base(poly, 1.0);
  const int nv = poly.vars();
  auto rho_image = [&](const CVec& v) -> double {
    const double rho_base = base.defining_value(v);
    const Complex denom = Complex(1.0, 0.0) + v[nv];
    if (std::abs(denom) < 1e-12) return std::max(rho_base, 0.0);
    const CVec u = psi.apply(v);
    const double f =
        lambda * std::norm(u[nv]) + poly.evaluate(u.head(nv)) - 2.0 * r * u[nv].real();
    return std::max(f, rho_base);
  };

  if (!(lambda < 2.0 * r) || !(rho_image(w) < -opt.feasibility_tol)) {
    rep.status = BoundStatus::normalization_not_interior;
    rep.message = "normalized point is not interior to the normalized horosphere image";
    return rep;
  }

  ImplicitDomain image{rho_image, CVec::Zero(poly.ambient_dim()), poly.ambient_dim(), 1.0};
  const auto dist = boundary_distance(image, w, opt);
  rep.trace.delta_q = dist.distance;

  const auto diam = diameter(base, opt);
  rep.trace.domain_diameter = diam.value;
  rep.bound = dist.distance / diam.value;

  // sampled uniform constant: unit-sphere section of the approach cone on
  // the Siegel side, pushed to the bounded side, against the boundary of
  // the r-scaled ellipsoid
  const GeneralEllipsoid shrunk(poly, r);
  Rng rng(opt.seed ^ 0x51A3C0DE51A3C0DEULL);
  int accepted = 0;
  double sigma_gap = 1e300;
  uint64_t stream_id = 0;
  int attempts = opt.sigma_samples * 2000;
  const int dim = poly.ambient_dim();
  while (accepted < opt.sigma_samples && attempts-- > 0) {
    Rng st = rng.stream(stream_id++);
    CVec z = st.cgaussian(dim);
    const double n = z.norm();
    if (n < 1e-12) continue;
    z /= n;
    const Complex zn = z[dim - 1];
    if (!(std::abs(zn.imag()) <= c * std::abs(zn.real()))) continue;
    if (!(poly.evaluate(z.head(dim - 1)) < 2.0 * r_prime * zn.real())) continue;
    const CVec s = psi.apply(z);
    if (!shrunk.contains(s)) continue;
    const auto d = boundary_distance(shrunk, s, opt);
    sigma_gap = std::min(sigma_gap, d.distance);
    ++accepted;
  }
  if (accepted > 0) {
    rep.trace.sigma_gap = sigma_gap;
    rep.trace.gamma0_uniform = 0.5 * sigma_gap / diam.value;
    rep.numerics.sigma_samples = accepted;
  } else {
    rep.numerics.sigma_samples = 0;
  }

  // sharper per-point alternative: replace the diameter by the
  // circumscribed radius seen from the normalized point
  const auto rad = circumscribed_radius(base, w, opt);
  rep.trace.diameter_alt_ratio = dist.distance / rad.radius;
  return rep;
}

// ---------------------------------------------------------------------------
// orbit diagnostics

OrbitTraceReport orbit_trace(const GeneralEllipsoid& dom, const std::vector<CVec>& points) {
  OrbitTraceReport rep;
  rep.rule =
      "case 2 iff the final nontangentiality ratio exceeds 1e3 and the ratios are "
      "non-decreasing over the trailing half of the sequence";
  const auto& poly = dom.poly();
  const int nv = poly.vars();
  for (const auto& a : points) {
    if (!dom.contains(a)) throw error(errc::validation, "orbit_trace requires interior points");
    OrbitRecord rec;
    rec.a = a;
    rec.b = orbit_to_slice(poly, a).head(nv);
    rec.P_b = poly.evaluate(rec.b);
    const double pa = poly.evaluate(a.head(nv)) / dom.r();
    rec.defining_gap = 1.0 - std::norm(a[nv]) - pa;
    rec.ratio = rec.defining_gap > 0.0 ? pa / rec.defining_gap : 1e300;

    // cheap certified upper estimate: nearest axis-ray boundary crossing
    double best = 1e300;
    auto rho = [&dom](const CVec& w) { return dom.defining_value(w); };
    for (int j = 0; j < dom.ambient_dim(); ++j) {
      for (int s = 0; s < 4; ++s) {
        CVec dir = CVec::Zero(dom.ambient_dim());
        dir[j] = s == 0 ? Complex(1, 0) : s == 1 ? Complex(-1, 0) : s == 2 ? Complex(0, 1) : Complex(0, -1);
        auto f = [&](double t) { return rho(a + t * dir); };
        const double t = ray_crossing(f, 0.25, 1e6);
        if (t > 0.0) best = std::min(best, t);
      }
    }
    rec.dist_estimate = best;
    rep.records.push_back(std::move(rec));
  }

  const size_t n = rep.records.size();
  if (n >= 2) {
    const size_t tail_start = n / 2;
    bool nondecreasing = true;
    for (size_t i = tail_start + 1; i < n; ++i)
      if (rep.records[i].ratio < rep.records[i - 1].ratio) nondecreasing = false;
    if (rep.records.back().ratio > 1e3 && nondecreasing) rep.case_classification = 2;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// slice-section scan

HHRProfile hhr_scan(const GeneralEllipsoid& dom, const std::vector<double>& eps_grid,
                    int samples_per_level, uint64_t seed, const GeomOptions& opt) {
  if (!dom.poly().balanced())
    throw error(errc::validation, "hhr_scan requires a balanced polynomial");
  HHRProfile prof;
  prof.seed = seed;
  prof.caveat =
      "bounds hold uniformly on each sampled slice section; the section radius -> boundary "
      "limit degenerates, and uniformity over the whole domain additionally relies on the "
      "cited boundary asymptotics near strongly pseudoconvex points";

  const auto& poly = dom.poly();
  const auto& sig = poly.signature();
  const int dim = dom.ambient_dim();
  Rng rng(seed ^ 0x6868725F7363616EULL);
  for (double eps : eps_grid) {
    if (!(eps > 0.0 && eps <= 1.0))
      throw error(errc::validation, "eps grid values must lie in (0,1]");
    HHRLevel level;
    level.eps = eps;
    const double cap = (1.0 - eps) * dom.r();  // section: P(z') <= cap

    std::vector<CVec> section;
    if (cap <= 0.0) {
      section.assign(1, CVec::Zero(dim));
    } else {
      // rim points carry the extremes; interior shells add coverage
      const int rim = std::max(4, samples_per_level * 3 / 4);
      Rng st0 = rng.stream(uint64_t(std::llround(eps * 1e9)));
      uint64_t attempt = 0;
      while (int(section.size()) < samples_per_level &&
             attempt < uint64_t(std::max(samples_per_level, 1)) * 100) {
        Rng st = st0.stream(attempt++);
        CVec u = st.cgaussian(sig.vars());
        const double pu = poly.evaluate(u);
        if (pu <= 1e-14) continue;
        const double lvl = int(section.size()) < rim ? 1.0 : st.uniform01();
        CVec zp = scale_point(sig, lvl * cap / pu, u);
        CVec z = CVec::Zero(dim);
        z.head(dim - 1) = zp;
        section.push_back(z);
      }
    }

    level.samples = int(section.size());
    std::vector<double> dists(section.size()), radii_at(section.size());
    parallel_for(section.size(), [&](std::size_t i) {
      dists[i] = boundary_distance(dom, section[i], opt).distance;
      radii_at[i] = circumscribed_radius(dom, section[i], opt).radius;
    });
    level.r_K = *std::min_element(dists.begin(), dists.end());
    level.R_K = *std::max_element(radii_at.begin(), radii_at.end());
    level.bound = level.r_K / level.R_K;
    prof.levels.push_back(level);
  }
  return prof;
}

}  // namespace sqz
