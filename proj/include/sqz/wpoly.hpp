#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sqz/common.hpp"

namespace sqz {

/// Exact rational, used for weight bookkeeping so that the balance checks
/// never depend on floating-point rounding.
struct Rational {
  long long num = 0;
  long long den = 1;

  static Rational make(long long n, long long d);
  Rational operator+(const Rational& o) const;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  double to_double() const { return double(num) / double(den); }
};

/// Coordinate weights m_1..m_{n-1} for ambient dimension n; coordinate j
/// carries exponent 1/(2 m_j) under the anisotropic scaling group.
struct WeightSignature {
  std::vector<int> m;

  int vars() const { return int(m.size()); }
  int ambient_dim() const { return int(m.size()) + 1; }
  int max_m() const;
};

struct MultiIndex {
  std::vector<int> k;

  int order() const;
  Rational weight(const WeightSignature& sig) const;  // sum k_j / (2 m_j)
  bool operator==(const MultiIndex& o) const { return k == o.k; }
  bool operator<(const MultiIndex& o) const { return k < o.k; }
};

/// One term of a polynomial spec as supplied by the user, before
/// canonicalization: a * z^K * conj(z)^L.
struct RawTerm {
  std::vector<int> K;
  std::vector<int> L;
  double re = 0.0;
  double im = 0.0;
};

struct RawPolynomial {
  int n = 0;  // ambient dimension
  std::vector<int> m;
  std::vector<RawTerm> terms;
};

/// Canonical stored term. Diagonal terms (K == L) have a real coefficient;
/// off-diagonal pairs are stored once with K < L lexicographically, the
/// conjugate partner being implied.
struct PolyTerm {
  MultiIndex K;
  MultiIndex L;
  Complex a;
};

struct ValidationIssue {
  int term_index = -1;  // -1 for signature-level problems
  std::string what;
};

struct PositivityCertificate {
  double min_value = 0.0;
  CVec argmin;
  bool passed = false;
  int restarts = 0;
  int converged_restarts = 0;
  double tol = 0.0;
};

struct ValidationReport {
  std::vector<ValidationIssue> structural_errors;
  std::vector<ValidationIssue> hermitian_violations;
  std::vector<ValidationIssue> weight_violations;
  bool balanced = false;
  std::optional<PositivityCertificate> positivity;

  bool structure_ok() const {
    return structural_errors.empty() && hermitian_violations.empty() && weight_violations.empty();
  }
  bool valid() const { return structure_ok() && positivity && positivity->passed; }
};

struct SphereOptimOptions {
  int restarts = 64;
  int max_iters = 500;
  uint64_t seed = 20240801ULL;
  double grad_tol = 1e-11;
};

struct ComparabilityConstants {
  double c1 = 0.0;
  double c2 = 0.0;
  CVec argmin;
  CVec argmax;
  bool converged = false;
  int restarts = 0;
  int converged_restarts = 0;
};

/// Validation of a raw spec. Never throws on content problems; everything
/// lands in the report. Positivity is only probed when the structure is
/// sound enough to evaluate the polynomial.
ValidationReport validate(const RawPolynomial& raw, const SphereOptimOptions& opts = {});

/// Immutable weighted homogeneous Hermitian polynomial. Construction
/// canonicalizes the term list and throws error(validation) when the raw
/// spec is structurally broken. Thread-safe for concurrent evaluation.
class WPolynomial {
 public:
  explicit WPolynomial(const RawPolynomial& raw, const SphereOptimOptions& opts = {});

  const WeightSignature& signature() const;
  const std::vector<PolyTerm>& terms() const;
  bool balanced() const;
  int vars() const { return signature().vars(); }
  int ambient_dim() const { return signature().ambient_dim(); }

  double evaluate(const CVec& zp) const;
  struct EvalDetail {
    double value;
    double imag_residue;
    double abs_sum;
  };
  EvalDetail evaluate_detailed(const CVec& zp) const;

  CVec wirtinger_gradient(const CVec& zp) const;
  CMat complex_hessian(const CVec& zp) const;

  double sigma_weight(const CVec& zp) const;
  CVec sigma_wirtinger_gradient(const CVec& zp) const;

  const ValidationReport& validation() const;
  bool positivity_passed() const;

  /// (c1, c2) with c1*sigma <= P <= c2*sigma; computed lazily, cached.
  /// Throws error(nonconvergence) when no restart of either search
  /// converged.
  const ComparabilityConstants& comparability_constants() const;

 private:
  struct Core;
  std::shared_ptr<Core> core_;
};

/// Coordinate-wise anisotropic scaling z_j -> t^{1/(2 m_j)} z_j, t > 0.
CVec scale_point(const WeightSignature& sig, double t, const CVec& zp);

/// sigma(z') = sum |z_j|^{2 m_j}.
double sigma_weight(const WeightSignature& sig, const CVec& zp);

/// Retraction onto the weighted unit sphere {sigma = 1}.
CVec retract_to_weighted_sphere(const WeightSignature& sig, const CVec& zp);

}  // namespace sqz
