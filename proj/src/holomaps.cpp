#include "sqz/holomaps.hpp"

#include <algorithm>
#include <cmath>

namespace sqz {

namespace {

void require_balanced(const WPolynomial& poly, const char* who) {
  if (!poly.balanced())
    throw error(errc::validation,
                std::string(who) + " requires a balanced polynomial (every term with wt(K)=wt(L)=1/2)");
}

void check_dim(const WeightSignature& sig, const CVec& z, const char* who) {
  if (z.size() != sig.ambient_dim())
    throw error(errc::argument, std::string("dimension mismatch in ") + who);
}

}  // namespace

CayleyMap::CayleyMap(const WPolynomial& poly) : sig_(poly.signature()) {
  require_balanced(poly, "the Cayley map");
}

CVec CayleyMap::apply(const CVec& z) const {
  check_dim(sig_, z, "CayleyMap::apply");
  const int nv = sig_.vars();
  const Complex zn = z[nv];
  const Complex denom = Complex(1.0, 0.0) + zn;
  if (std::abs(denom) < 1e-14)
    throw error(errc::validation, "Cayley map is singular at z_n = -1");
  CVec out(z.size());
  for (int j = 0; j < nv; ++j) {
    const double m = double(sig_.m[j]);
    out[j] = std::pow(2.0, 0.5 / m) / std::pow(denom, 1.0 / m) * z[j];
  }
  out[nv] = (Complex(1.0, 0.0) - zn) / denom;
  return out;
}

EllipsoidAutomorphism::EllipsoidAutomorphism(const WPolynomial& poly, Complex a, double theta)
    : sig_(poly.signature()), a_(a), theta_(theta) {
  require_balanced(poly, "the ellipsoid automorphism");
  if (!(std::abs(a) < 1.0))
    throw error(errc::validation, "automorphism parameter a must satisfy |a| < 1");
}

CVec EllipsoidAutomorphism::apply(const CVec& z) const {
  check_dim(sig_, z, "EllipsoidAutomorphism::apply");
  const int nv = sig_.vars();
  const Complex zn = z[nv];
  const Complex denom = Complex(1.0, 0.0) - std::conj(a_) * zn;
  if (std::abs(denom) < 1e-14)
    throw error(errc::validation, "automorphism denominator 1 - conj(a) z_n vanishes");
  const double one_minus_a2 = 1.0 - std::norm(a_);
  CVec out(z.size());
  for (int j = 0; j < nv; ++j) {
    const double m = double(sig_.m[j]);
    out[j] = std::pow(one_minus_a2, 0.5 / m) / std::pow(denom, 1.0 / m) * z[j];
  }
  out[nv] = std::polar(1.0, theta_) * (zn - a_) / denom;
  return out;
}

Dilation::Dilation(const WeightSignature& sig, double lambda) : sig_(sig), lambda_(lambda) {
  if (!(lambda > 0.0)) throw error(errc::validation, "dilation scale lambda must be positive");
}

CVec Dilation::apply(const CVec& z) const {
  check_dim(sig_, z, "Dilation::apply");
  const int nv = sig_.vars();
  CVec out(z.size());
  for (int j = 0; j < nv; ++j) out[j] = z[j] / std::pow(lambda_, 0.5 / double(sig_.m[j]));
  out[nv] = z[nv] / lambda_;
  return out;
}

NormalizationMap::NormalizationMap(const WPolynomial& poly, double lambda)
    : cayley_(poly), dilation_(poly.signature(), lambda), lambda_(lambda) {}

CVec NormalizationMap::apply(const CVec& z) const { return cayley_.apply(dilation_.apply(z)); }

CVec apply_map(const HolomorphicMap& map, const CVec& z) {
  return std::visit([&](const auto& m) { return m.apply(z); }, map);
}

CVec orbit_to_slice(const WPolynomial& poly, const CVec& p) {
  const int nv = poly.vars();
  if (p.size() != poly.ambient_dim()) throw error(errc::argument, "dimension mismatch in orbit_to_slice");
  const Complex pn = p[nv];
  EllipsoidAutomorphism phi(poly, pn, 0.0);
  return phi.apply(p);
}

double solve_normalization_scale(const WeightSignature& sig, const CVec& q, double tol) {
  if (q.size() != sig.ambient_dim())
    throw error(errc::argument, "dimension mismatch in solve_normalization_scale");
  const double qn = q.norm();
  if (!(qn > 0.0)) throw error(errc::validation, "cannot normalize the origin");

  auto scaled_norm = [&](double lambda) {
    double s = 0.0;
    for (int j = 0; j < sig.vars(); ++j)
      s += std::norm(q[j]) / std::pow(lambda, 1.0 / double(sig.m[j]));
    s += std::norm(q[sig.vars()]) / (lambda * lambda);
    return std::sqrt(s);
  };

  const double e = 2.0 * sig.max_m();
  double lo = std::min(std::pow(qn, e), std::pow(qn, 1.0 / e));
  double hi = std::max(std::pow(qn, e), std::pow(qn, 1.0 / e));
  // the scale map is strictly decreasing; expand until it straddles 1
  for (int i = 0; i < 200 && !(scaled_norm(lo) >= 1.0); ++i) lo *= 0.25;
  for (int i = 0; i < 200 && !(scaled_norm(hi) <= 1.0); ++i) hi *= 4.0;
  if (!(scaled_norm(lo) >= 1.0 && scaled_norm(hi) <= 1.0))
    throw error(errc::nonconvergence, "normalization scale bracket expansion failed");

  double best = lo;
  double best_res = std::abs(scaled_norm(lo) - 1.0);
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double v = scaled_norm(mid);
    const double res = std::abs(v - 1.0);
    if (res < best_res) {
      best_res = res;
      best = mid;
    }
    if (res <= tol) break;
    if (v > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  if (best_res > tol)
    throw error(errc::nonconvergence, "normalization scale bisection did not reach tolerance");
  return best;
}

// ---------------------------------------------------------------------------
// verification harness

namespace {

struct SamplePack {
  std::vector<CVec> interior;
  std::vector<CVec> boundary;
  std::vector<CVec> exterior;
};

// Exterior points with |z_n| < 1: inflate the polynomial part of interior
// samples past the boundary level.
std::vector<CVec> make_exterior(const GeneralEllipsoid& dom, const std::vector<CVec>& interior) {
  std::vector<CVec> out;
  const auto& sig = dom.poly().signature();
  for (const auto& z : interior) {
    const CVec zp = z.head(z.size() - 1);
    const double pv = dom.poly().evaluate(zp);
    if (pv < 1e-10) continue;
    const double room = 1.0 - std::norm(z[z.size() - 1]);
    if (room < 1e-8) continue;
    const double target = 1.2 * room * dom.r();
    CVec w = z;
    w.head(z.size() - 1) = scale_point(sig, target / pv, zp);
    out.push_back(w);
  }
  return out;
}

GeneralEllipsoid bounded_proxy(const AnyDomain& dom) {
  if (std::holds_alternative<GeneralEllipsoid>(dom)) return std::get<GeneralEllipsoid>(dom);
  if (std::holds_alternative<SiegelModel>(dom)) {
    const auto& s = std::get<SiegelModel>(dom);
    return GeneralEllipsoid(s.poly(), s.r());
  }
  const auto& h = std::get<HorosphereBall>(dom);
  return GeneralEllipsoid(h.poly(), 1.0);
}

SamplePack sample_source(const AnyDomain& source, int count, uint64_t seed) {
  SamplePack pack;
  const GeneralEllipsoid proxy = bounded_proxy(source);
  if (std::holds_alternative<SiegelModel>(source)) {
    // transport bounded-side samples with the Cayley map
    CayleyMap psi(proxy.poly());
    for (const auto& z : sample_interior(proxy, count, seed)) pack.interior.push_back(psi.apply(z));
    for (const auto& z : sample_boundary(proxy, count, seed + 1)) {
      if (std::abs(Complex(1.0, 0.0) + z[z.size() - 1]) < 1e-3) continue;
      pack.boundary.push_back(psi.apply(z));
    }
    for (const auto& z : make_exterior(proxy, sample_interior(proxy, count, seed + 2)))
      pack.exterior.push_back(psi.apply(z));
    return pack;
  }
  if (std::holds_alternative<HorosphereBall>(source)) {
    const auto& h = std::get<HorosphereBall>(source);
    pack.interior = sample_interior(h, count, seed);
    pack.boundary = sample_boundary(h, count, seed + 1);
    return pack;  // no cheap exterior generator for the horosphere; signs
                  // are still exercised by interior/boundary samples
  }
  pack.interior = sample_interior(proxy, count, seed);
  pack.boundary = sample_boundary(proxy, count, seed + 1);
  pack.exterior = make_exterior(proxy, sample_interior(proxy, count, seed + 2));
  return pack;
}

double cayley_identity_residual(const WPolynomial& poly, const CVec& z) {
  CayleyMap psi(poly);
  const int nv = poly.vars();
  const Complex zn = z[nv];
  const CVec w = psi.apply(z);
  const CVec wp = w.head(nv);
  const CVec zp = z.head(nv);
  const double lhs = 2.0 * w[nv].real() - poly.evaluate(wp);
  const double rhs = 2.0 * (1.0 - std::norm(zn) - poly.evaluate(zp)) / std::norm(Complex(1.0, 0.0) + zn);
  return std::abs(lhs - rhs);
}

}  // namespace

MapVerificationReport verify_map(const HolomorphicMap& map, const AnyDomain& source,
                                 const AnyDomain& target, int sample_count, uint64_t seed) {
  MapVerificationReport rep;
  rep.seed = seed;
  const SamplePack pack = sample_source(source, sample_count, seed);

  const bool is_cayley = std::holds_alternative<CayleyMap>(map);
  const WPolynomial poly = bounded_proxy(source).poly();

  auto sign_check = [&](const std::vector<CVec>& pts) {
    for (const auto& z : pts) {
      const double sv = defining_value(source, z);
      if (std::abs(sv) <= 1e-8) continue;
      CVec w;
      try {
        w = apply_map(map, z);
      } catch (const error&) {
        continue;  // singular locus of the formula; not a sign witness
      }
      const double tv = defining_value(target, w);
      if (sv * tv < 0.0 && std::abs(tv) > 1e-12) ++rep.sign_disagreements;
      ++rep.samples;
    }
  };
  sign_check(pack.interior);
  sign_check(pack.exterior);

  for (const auto& z : pack.boundary) {
    CVec w;
    try {
      w = apply_map(map, z);
    } catch (const error&) {
      continue;
    }
    rep.max_boundary_residual = std::max(rep.max_boundary_residual, std::abs(defining_value(target, w)));
    ++rep.samples;
  }

  if (is_cayley) {
    for (const auto& z : pack.interior)
      rep.max_cayley_identity_residual =
          std::max(rep.max_cayley_identity_residual, cayley_identity_residual(poly, z));
    for (const auto& z : pack.boundary) {
      if (std::abs(Complex(1.0, 0.0) + z[z.size() - 1]) < 1e-3) continue;
      rep.max_cayley_identity_residual =
          std::max(rep.max_cayley_identity_residual, cayley_identity_residual(poly, z));
    }
  }

  rep.max_violation = std::max({rep.sign_disagreements > 0 ? 1.0 : 0.0, rep.max_boundary_residual,
                                rep.max_cayley_identity_residual});
  return rep;
}

}  // namespace sqz
