#include "sqz/wpoly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace sqz {

namespace {

Complex pow_int(Complex z, int k) {
  Complex r(1.0, 0.0);
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

Complex monomial(const CVec& z, const MultiIndex& K) {
  Complex r(1.0, 0.0);
  for (size_t j = 0; j < K.k.size(); ++j) r *= pow_int(z[Eigen::Index(j)], K.k[j]);
  return r;
}

std::string index_str(const std::vector<int>& k) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i];
  os << ")";
  return os.str();
}

}  // namespace

Rational Rational::make(long long n, long long d) {
  if (d == 0) throw error(errc::argument, "rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const long long g = std::gcd(n < 0 ? -n : n, d);
  return Rational{g ? n / g : n, g ? d / g : d};
}

Rational Rational::operator+(const Rational& o) const {
  return Rational::make(num * o.den + o.num * den, den * o.den);
}

int WeightSignature::max_m() const {
  int r = 1;
  for (int v : m) r = std::max(r, v);
  return r;
}

int MultiIndex::order() const { return std::accumulate(k.begin(), k.end(), 0); }

Rational MultiIndex::weight(const WeightSignature& sig) const {
  Rational w{0, 1};
  for (size_t j = 0; j < k.size(); ++j) w = w + Rational::make(k[j], 2LL * sig.m[j]);
  return w;
}

CVec scale_point(const WeightSignature& sig, double t, const CVec& zp) {
  if (!(t > 0.0)) throw error(errc::validation, "scale factor must be positive");
  if (zp.size() != sig.vars()) throw error(errc::argument, "dimension mismatch in scale_point");
  CVec out(zp.size());
  for (int j = 0; j < sig.vars(); ++j) out[j] = zp[j] * std::pow(t, 1.0 / (2.0 * sig.m[j]));
  return out;
}

double sigma_weight(const WeightSignature& sig, const CVec& zp) {
  if (zp.size() != sig.vars()) throw error(errc::argument, "dimension mismatch in sigma_weight");
  double s = 0.0;
  for (int j = 0; j < sig.vars(); ++j) s += std::pow(std::norm(zp[j]), double(sig.m[j]));
  return s;
}

CVec retract_to_weighted_sphere(const WeightSignature& sig, const CVec& zp) {
  const double s = sigma_weight(sig, zp);
  if (!(s > 0.0)) throw error(errc::argument, "cannot retract the origin onto the weighted sphere");
  return scale_point(sig, 1.0 / s, zp);
}

// ---------------------------------------------------------------------------
// validation and canonical storage

namespace {

struct Canonicalized {
  std::vector<PolyTerm> terms;
  std::vector<ValidationIssue> hermitian;
  std::vector<ValidationIssue> weight;
  bool balanced = true;
};

std::vector<ValidationIssue> structural_check(const RawPolynomial& raw) {
  std::vector<ValidationIssue> out;
  if (raw.n < 2) out.push_back({-1, "ambient dimension n must be at least 2"});
  if (int(raw.m.size()) != raw.n - 1)
    out.push_back({-1, "weight list must have n-1 entries"});
  for (size_t j = 0; j < raw.m.size(); ++j)
    if (raw.m[j] < 1) out.push_back({-1, "weight m[" + std::to_string(j) + "] must be a positive integer"});
  if (raw.terms.empty()) out.push_back({-1, "term list is empty"});
  const size_t vars = raw.m.size();
  for (size_t i = 0; i < raw.terms.size(); ++i) {
    const auto& t = raw.terms[i];
    if (t.K.size() != vars || t.L.size() != vars)
      out.push_back({int(i), "multi-index length must equal n-1"});
    for (int k : t.K)
      if (k < 0) out.push_back({int(i), "negative exponent in K"});
    for (int l : t.L)
      if (l < 0) out.push_back({int(i), "negative exponent in L"});
  }
  return out;
}

Canonicalized canonicalize(const RawPolynomial& raw) {
  Canonicalized res;
  WeightSignature sig{raw.m};
  const Rational one{1, 1};
  const Rational half{1, 2};

  // keyed by the unordered pair, value holds the coefficient oriented to the
  // lexicographically smaller index first
  std::map<std::pair<MultiIndex, MultiIndex>, Complex> acc;
  std::map<std::pair<MultiIndex, MultiIndex>, int> first_seen;
  std::map<std::pair<MultiIndex, MultiIndex>, std::pair<bool, bool>> orientations_seen;

  for (size_t i = 0; i < raw.terms.size(); ++i) {
    const auto& t = raw.terms[i];
    MultiIndex K{t.K}, L{t.L};
    const Rational wK = K.weight(sig), wL = L.weight(sig);
    if (!(wK + wL == one)) {
      std::ostringstream os;
      os << "term " << i << ": wt(K)+wt(L) = " << (wK + wL).num << "/" << (wK + wL).den
         << " for K=" << index_str(t.K) << " L=" << index_str(t.L) << ", expected 1";
      res.weight.push_back({int(i), os.str()});
      continue;
    }
    if (!(wK == half)) res.balanced = false;

    const Complex a(t.re, t.im);
    if (K == L) {
      if (t.im != 0.0) {
        res.hermitian.push_back({int(i), "diagonal term K=L=" + index_str(t.K) + " must have a real coefficient"});
        continue;
      }
      auto key = std::make_pair(K, L);
      if (acc.count(key)) {
        res.hermitian.push_back({int(i), "duplicate diagonal term for K=" + index_str(t.K)});
        continue;
      }
      acc[key] = a;
      first_seen[key] = int(i);
    } else {
      const bool flip = L < K;
      auto key = flip ? std::make_pair(L, K) : std::make_pair(K, L);
      const Complex oriented = flip ? std::conj(a) : a;
      auto it = acc.find(key);
      if (it == acc.end()) {
        acc[key] = oriented;
        first_seen[key] = int(i);
        orientations_seen[key] = {!flip, flip};
      } else {
        auto& seen = orientations_seen[key];
        const bool repeat = flip ? seen.second : seen.first;
        if (repeat) {
          std::ostringstream os;
          os << "term " << i << " duplicates term " << first_seen[key] << " for K=" << index_str(t.K)
             << " L=" << index_str(t.L);
          res.hermitian.push_back({int(i), os.str()});
          continue;
        }
        (flip ? seen.second : seen.first) = true;
        // the other orientation was already supplied; it must agree with
        // the conjugate of the stored coefficient
        if (std::abs(it->second - oriented) > 1e-15 * std::max(1.0, std::abs(oriented))) {
          std::ostringstream os;
          os << "term " << i << " conflicts with term " << first_seen[key]
             << ": coefficient of (L,K) must be the conjugate of a_KL";
          res.hermitian.push_back({int(i), os.str()});
        }
      }
    }
  }
  for (auto& [key, a] : acc) res.terms.push_back(PolyTerm{key.first, key.second, a});
  return res;
}

}  // namespace

// ---------------------------------------------------------------------------
// core

struct WPolynomial::Core {
  WeightSignature sig;
  std::vector<PolyTerm> terms;
  bool balanced = false;
  ValidationReport report;
  SphereOptimOptions optim;

  mutable std::once_flag comp_once;
  mutable ComparabilityConstants comp;
};

namespace {

struct SpherePoint {
  CVec x;
  double value;
  bool converged;
};

// Minimizes P/sigma over the weighted sphere via projected gradient descent
// with backtracking; the retraction is exact by homogeneity.
SpherePoint sphere_descent(const WPolynomial& p, CVec x0, int max_iters, double grad_tol, bool maximize) {
  const auto& sig = p.signature();
  const double sgn = maximize ? -1.0 : 1.0;
  CVec x = retract_to_weighted_sphere(sig, x0);
  double f = sgn * p.evaluate(x);
  bool converged = false;
  for (int it = 0; it < max_iters; ++it) {
    // gradient of P/sigma on {sigma=1}: grad P - P * grad sigma
    const CVec gP = p.wirtinger_gradient(x);
    const CVec gS = p.sigma_wirtinger_gradient(x);
    const double Pv = sgn * f;
    RVec g(2 * x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      const Complex w = sgn * (gP[j] - Pv * gS[j]);
      g[2 * j] = 2.0 * w.real();
      g[2 * j + 1] = -2.0 * w.imag();
    }
    const double gn = g.norm();
    if (gn <= grad_tol * std::max(1.0, std::abs(f))) {
      converged = true;
      break;
    }
    double alpha = 1.0 / (1.0 + gn);
    bool stepped = false;
    const RVec xr = to_real(x);
    for (int bt = 0; bt < 60; ++bt) {
      RVec yr = xr - alpha * g;
      CVec y = to_complex(yr);
      if (sigma_weight(sig, y) <= 0.0) {
        alpha *= 0.5;
        continue;
      }
      y = retract_to_weighted_sphere(sig, y);
      const double fy = sgn * p.evaluate(y);
      if (fy <= f - 1e-4 * alpha * gn * gn) {
        x = y;
        f = fy;
        stepped = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!stepped) {
      converged = gn <= 1e-7 * std::max(1.0, std::abs(f));
      break;
    }
  }
  return SpherePoint{x, sgn * f, converged};
}

struct SphereExtremum {
  double value;
  CVec point;
  int converged;
};

SphereExtremum sphere_extremum(const WPolynomial& p, const SphereOptimOptions& o, bool maximize) {
  Rng rng(o.seed + (maximize ? 1 : 0));
  SphereExtremum best{maximize ? -1e300 : 1e300, CVec(), 0};
  const int dim = p.vars();
  for (int r = 0; r < o.restarts; ++r) {
    Rng stream = rng.stream(uint64_t(r));
    CVec x0 = stream.cgaussian(dim);
    if (x0.norm() < 1e-12) continue;
    auto res = sphere_descent(p, x0, o.max_iters, o.grad_tol, maximize);
    if (res.converged) ++best.converged;
    const bool better = maximize ? res.value > best.value : res.value < best.value;
    if (better) {
      best.value = res.value;
      best.point = res.x;
    }
  }
  return best;
}

}  // namespace

ValidationReport validate(const RawPolynomial& raw, const SphereOptimOptions& opts) {
  ValidationReport rep;
  rep.structural_errors = structural_check(raw);
  if (!rep.structural_errors.empty()) return rep;

  auto canon = canonicalize(raw);
  rep.hermitian_violations = std::move(canon.hermitian);
  rep.weight_violations = std::move(canon.weight);
  rep.balanced = canon.balanced;
  if (!rep.structure_ok() || canon.terms.empty()) return rep;

  WPolynomial p(raw, opts);
  rep.positivity = p.validation().positivity;
  return rep;
}

WPolynomial::WPolynomial(const RawPolynomial& raw, const SphereOptimOptions& opts) {
  auto structural = structural_check(raw);
  if (!structural.empty()) throw error(errc::validation, structural.front().what);
  auto canon = canonicalize(raw);
  if (!canon.hermitian.empty()) throw error(errc::validation, canon.hermitian.front().what);
  if (!canon.weight.empty()) throw error(errc::validation, canon.weight.front().what);
  if (canon.terms.empty()) throw error(errc::validation, "term list is empty after canonicalization");

  auto core = std::make_shared<Core>();
  core->sig = WeightSignature{raw.m};
  core->terms = std::move(canon.terms);
  core->balanced = canon.balanced;
  core->optim = opts;
  core->report.balanced = core->balanced;
  core_ = core;

  // positivity certificate, computed once on the canonical polynomial
  auto ext = sphere_extremum(*this, opts, /*maximize=*/false);
  PositivityCertificate cert;
  cert.min_value = ext.value;
  cert.argmin = ext.point;
  cert.restarts = opts.restarts;
  cert.converged_restarts = ext.converged;
  cert.tol = 1e-8;
  cert.passed = ext.value > cert.tol;
  core->report.positivity = cert;
}

const WeightSignature& WPolynomial::signature() const { return core_->sig; }
const std::vector<PolyTerm>& WPolynomial::terms() const { return core_->terms; }
bool WPolynomial::balanced() const { return core_->balanced; }
const ValidationReport& WPolynomial::validation() const { return core_->report; }
bool WPolynomial::positivity_passed() const {
  return core_->report.positivity && core_->report.positivity->passed;
}

WPolynomial::EvalDetail WPolynomial::evaluate_detailed(const CVec& zp) const {
  if (zp.size() != vars()) throw error(errc::argument, "dimension mismatch in evaluate");
  Complex sum(0.0, 0.0);
  double abs_sum = 0.0;
  for (const auto& t : core_->terms) {
    const Complex first = t.a * monomial(zp, t.K) * std::conj(monomial(zp, t.L));
    sum += first;
    abs_sum += std::abs(first);
    if (!(t.K == t.L)) {
      const Complex second = std::conj(t.a) * monomial(zp, t.L) * std::conj(monomial(zp, t.K));
      sum += second;
      abs_sum += std::abs(second);
    }
  }
  return EvalDetail{sum.real(), std::abs(sum.imag()), abs_sum};
}

double WPolynomial::evaluate(const CVec& zp) const { return evaluate_detailed(zp).value; }

CVec WPolynomial::wirtinger_gradient(const CVec& zp) const {
  if (zp.size() != vars()) throw error(errc::argument, "dimension mismatch in wirtinger_gradient");
  CVec g = CVec::Zero(vars());
  auto add_pair = [&](const MultiIndex& K, const MultiIndex& L, Complex a) {
    const Complex zbarL = std::conj(monomial(zp, L));
    for (int j = 0; j < vars(); ++j) {
      if (K.k[j] == 0) continue;
      MultiIndex Km = K;
      Km.k[j] -= 1;
      g[j] += a * double(K.k[j]) * monomial(zp, Km) * zbarL;
    }
  };
  for (const auto& t : core_->terms) {
    add_pair(t.K, t.L, t.a);
    if (!(t.K == t.L)) add_pair(t.L, t.K, std::conj(t.a));
  }
  return g;
}

CMat WPolynomial::complex_hessian(const CVec& zp) const {
  if (zp.size() != vars()) throw error(errc::argument, "dimension mismatch in complex_hessian");
  CMat h = CMat::Zero(vars(), vars());
  auto add_pair = [&](const MultiIndex& K, const MultiIndex& L, Complex a) {
    for (int j = 0; j < vars(); ++j) {
      if (K.k[j] == 0) continue;
      MultiIndex Km = K;
      Km.k[j] -= 1;
      const Complex zK = monomial(zp, Km);
      for (int l = 0; l < vars(); ++l) {
        if (L.k[l] == 0) continue;
        MultiIndex Lm = L;
        Lm.k[l] -= 1;
        h(j, l) += a * double(K.k[j]) * double(L.k[l]) * zK * std::conj(monomial(zp, Lm));
      }
    }
  };
  for (const auto& t : core_->terms) {
    add_pair(t.K, t.L, t.a);
    if (!(t.K == t.L)) add_pair(t.L, t.K, std::conj(t.a));
  }
  return h;
}

double WPolynomial::sigma_weight(const CVec& zp) const { return sqz::sigma_weight(core_->sig, zp); }

CVec WPolynomial::sigma_wirtinger_gradient(const CVec& zp) const {
  if (zp.size() != vars()) throw error(errc::argument, "dimension mismatch in sigma gradient");
  CVec g(vars());
  for (int j = 0; j < vars(); ++j) {
    const int m = core_->sig.m[j];
    g[j] = double(m) * std::pow(std::norm(zp[j]), double(m - 1)) * std::conj(zp[j]);
  }
  return g;
}

const ComparabilityConstants& WPolynomial::comparability_constants() const {
  std::call_once(core_->comp_once, [this] {
    if (!positivity_passed())
      throw error(errc::validation, "comparability constants require a positive polynomial");
    const auto& o = core_->optim;
    auto lo = sphere_extremum(*this, o, /*maximize=*/false);
    auto hi = sphere_extremum(*this, o, /*maximize=*/true);
    ComparabilityConstants c;
    c.c1 = lo.value;
    c.c2 = hi.value;
    c.argmin = lo.point;
    c.argmax = hi.point;
    c.restarts = o.restarts;
    c.converged_restarts = lo.converged + hi.converged;
    c.converged = lo.converged > 0 && hi.converged > 0;
    core_->comp = c;
  });
  if (!core_->comp.converged)
    throw error(errc::nonconvergence,
                "comparability constant search did not converge in any restart");
  return core_->comp;
}

}  // namespace sqz
