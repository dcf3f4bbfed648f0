#include "sqz/levi.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace sqz {

const char* to_string(PseudoconvexityClass c) {
  switch (c) {
    case PseudoconvexityClass::strongly_pseudoconvex:
      return "strongly-pseudoconvex";
    case PseudoconvexityClass::weakly_pseudoconvex:
      return "weakly-pseudoconvex";
    case PseudoconvexityClass::indefinite:
      return "indefinite";
    case PseudoconvexityClass::degenerate_gradient:
      return "degenerate-gradient";
  }
  return "unknown";
}

CVec defining_gradient(const GeneralEllipsoid& dom, const CVec& z) {
  const int nv = dom.poly().vars();
  CVec g(nv + 1);
  g.head(nv) = dom.poly().wirtinger_gradient(z.head(nv)) / dom.r();
  g[nv] = std::conj(z[nv]);
  return g;
}

CMat defining_hessian(const GeneralEllipsoid& dom, const CVec& z) {
  const int nv = dom.poly().vars();
  CMat h = CMat::Zero(nv + 1, nv + 1);
  h.topLeftCorner(nv, nv) = dom.poly().complex_hessian(z.head(nv)) / dom.r();
  h(nv, nv) = Complex(1.0, 0.0);
  return h;
}

CMat tangent_basis_from_gradient(const CVec& gradient) {
  const Eigen::Index n = gradient.size();
  // the tangent condition sum_j g_j t_j = 0 says t is orthogonal to conj(g)
  CVec v = gradient.conjugate();
  const double nv = v.norm();
  if (nv < 1e-14) throw error(errc::validation, "vanishing gradient has no tangent basis");
  v /= nv;
  Eigen::HouseholderQR<CMat> qr(v);
  CMat q = qr.householderQ();
  return q.rightCols(n - 1);
}

std::vector<double> restricted_levi_eigenvalues(const CMat& hessian, const CMat& basis) {
  // Levi form L(t) = sum_{j,k} H_{jk} t_j conj(t_k); in matrix terms the
  // restriction to the basis columns is B^* H^T B, which is Hermitian.
  CMat restricted = basis.adjoint() * hessian.transpose() * basis;
  Eigen::SelfAdjointEigenSolver<CMat> es(restricted);
  std::vector<double> eigs(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

LeviReport levi_report(const GeneralEllipsoid& dom, const CVec& q, double tol) {
  if (q.size() != dom.ambient_dim()) throw error(errc::argument, "dimension mismatch in levi_report");
  const double rho = dom.defining_value(q);
  if (std::abs(rho) > 1e-10)
    throw error(errc::validation, "levi_report requires a boundary point (|rho| <= 1e-10)");

  LeviReport rep;
  rep.point = q;
  rep.tol = tol;
  const CVec g = defining_gradient(dom, q);
  rep.gradient_norm = g.norm();
  if (rep.gradient_norm <= 1e-10) {
    rep.classification = PseudoconvexityClass::degenerate_gradient;
    return rep;
  }
  const CMat basis = tangent_basis_from_gradient(g);
  rep.restricted_eigenvalues = restricted_levi_eigenvalues(defining_hessian(dom, q), basis);
  const double min_eig = rep.restricted_eigenvalues.front();
  if (min_eig > tol)
    rep.classification = PseudoconvexityClass::strongly_pseudoconvex;
  else if (min_eig >= -tol)
    rep.classification = PseudoconvexityClass::weakly_pseudoconvex;
  else
    rep.classification = PseudoconvexityClass::indefinite;
  return rep;
}

WBReport wb_check(const GeneralEllipsoid& dom, double exclusion_radius, int sample_count,
                  uint64_t seed, double tol) {
  if (!(exclusion_radius > 0.0))
    throw error(errc::validation, "exclusion radius must be positive");
  WBReport rep;
  rep.tol = tol;
  rep.exclusion_radius = exclusion_radius;
  rep.seed = seed;
  rep.min_eigenvalue = 1e300;

  constexpr int kTrendLevels = 5;
  std::vector<double> radii(kTrendLevels);
  for (int k = 0; k < kTrendLevels; ++k) radii[k] = exclusion_radius * std::pow(0.5, k);
  const double floor_radius = radii.back();

  // Phase 1: draw boundary points with sigma(z') >= floor_radius until
  // sample_count of them sit at the requested exclusion radius. The draw
  // depends only on the seed, so the worker count cannot perturb it.
  struct Sample {
    double sigma = 0.0;
    double min_eig = 0.0;
    CVec point;
    bool usable = false;
  };
  std::vector<Sample> samples;
  samples.reserve(sample_count);
  Rng rng(seed);
  const auto& sig = dom.poly().signature();
  const int dim = dom.ambient_dim();
  uint64_t stream_id = 0;
  int at_exclusion = 0;
  int attempts_left = sample_count * 1000;
  while (at_exclusion < sample_count && attempts_left-- > 0) {
    Rng st = rng.stream(stream_id++);
    const double t = st.uniform01();
    CVec u = st.cgaussian(sig.vars());
    const double pu = dom.poly().evaluate(u);
    if (pu <= 1e-14) continue;
    CVec zp = scale_point(sig, t * dom.r() / pu, u);
    const double sv = sigma_weight(sig, zp);
    if (sv < floor_radius) continue;
    const double pv = dom.poly().evaluate(zp) / dom.r();
    if (pv >= 1.0) continue;
    CVec z(dim);
    z.head(dim - 1) = zp;
    z[dim - 1] = std::polar(std::sqrt(1.0 - pv), st.uniform(0.0, 6.283185307179586));
    if (sv >= exclusion_radius) ++at_exclusion;
    Sample s;
    s.sigma = sv;
    s.point = z;
    samples.push_back(std::move(s));
  }

  // Phase 2: Levi evaluations, sharded by index; the reduction below is a
  // deterministic merge regardless of the job count.
  parallel_for(samples.size(), [&](std::size_t i) {
    try {
      const LeviReport lr = levi_report(dom, samples[i].point, tol);
      if (lr.classification == PseudoconvexityClass::degenerate_gradient) return;
      samples[i].min_eig = lr.restricted_eigenvalues.front();
      samples[i].usable = true;
    } catch (const error&) {
    }
  });
  samples.erase(std::remove_if(samples.begin(), samples.end(),
                               [](const Sample& s) { return !s.usable; }),
                samples.end());

  rep.trend.resize(kTrendLevels);
  for (int k = 0; k < kTrendLevels; ++k) {
    rep.trend[k].radius = radii[k];
    rep.trend[k].min_eigenvalue = 1e300;
  }
  for (const auto& s : samples) {
    for (int k = 0; k < kTrendLevels; ++k) {
      if (s.sigma >= radii[k]) {
        rep.trend[k].samples += 1;
        rep.trend[k].min_eigenvalue = std::min(rep.trend[k].min_eigenvalue, s.min_eig);
      }
    }
    if (s.sigma >= exclusion_radius && s.min_eig < rep.min_eigenvalue) {
      rep.min_eigenvalue = s.min_eig;
      rep.argmin_point = s.point;
    }
  }
  rep.samples = rep.trend.empty() ? 0 : rep.trend.front().samples;
  rep.pass = rep.samples > 0 && rep.min_eigenvalue > tol;
  rep.note =
      "certificate holds at the sampled boundary points only; the excluded circle itself is "
      "degenerate and the limit radius -> 0 is not covered";
  return rep;
}

}  // namespace sqz
