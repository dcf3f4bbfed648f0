#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Core>

namespace sqz {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

/// Error categories; they map 1:1 onto the C API status codes and the
/// CLI exit codes.
enum class errc {
  parse = 1,           // malformed input text (JSON syntax, point strings)
  validation = 2,      // structural/content rejection, violated precondition
  nonconvergence = 3,  // an optimizer or solver did not reach its tolerance
  argument = 4,        // null handle, dimension mismatch, bad enum value
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

inline uint64_t splitmix64(uint64_t& s) {
  uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Deterministic xoshiro256++ stream. Substreams derived by `stream(id)`
/// are independent of evaluation order, which keeps parallel sampling
/// reproducible for a fixed seed regardless of the worker count.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t s = seed;
    for (auto& w : state_) w = splitmix64(s);
  }

  Rng stream(uint64_t id) const {
    uint64_t s = state_[0] ^ (0xA0761D6478BD642FULL * (id + 1));
    return Rng(s);
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform in [0,1) with 53 random bits.
  double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Standard normal (Box-Muller, no cached spare).
  double normal() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  Complex cnormal() { return {normal(), normal()}; }

  /// Isotropic complex vector of the given complex dimension.
  CVec cgaussian(int dim) {
    CVec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = cnormal();
    return v;
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t state_[4];
};

namespace detail {
inline int& job_count() {
  static int jobs = 1;
  return jobs;
}
}  // namespace detail

inline void set_jobs(int jobs) { detail::job_count() = jobs < 1 ? 1 : jobs; }
inline int jobs() { return detail::job_count(); }

/// Index-sharded parallel loop. Results must be written by index so that
/// the outcome does not depend on the shard layout.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const int workers = std::min<std::size_t>(jobs(), n == 0 ? 1 : n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

/// Real view of a complex vector: (Re z_0, Im z_0, Re z_1, ...).
inline RVec to_real(const CVec& z) {
  RVec x(2 * z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    x[2 * i] = z[i].real();
    x[2 * i + 1] = z[i].imag();
  }
  return x;
}

inline CVec to_complex(const RVec& x) {
  CVec z(x.size() / 2);
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = Complex(x[2 * i], x[2 * i + 1]);
  return z;
}

}  // namespace sqz
