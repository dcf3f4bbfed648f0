#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "sqz/holomaps.hpp"

using namespace sqz;

namespace {

CVec pt2(Complex a, Complex b) {
  CVec v(2);
  v[0] = a;
  v[1] = b;
  return v;
}

std::vector<WPolynomial> balanced_fixtures() {
  return {oracles::poly_ball(), oracles::poly_quartic(), oracles::poly_twovar()};
}

}  // namespace

TEST_CASE("cayley map on the axis") {
  auto poly = oracles::poly_ball();
  CayleyMap psi(poly);
  const CVec a = psi.apply(pt2(0.0, 0.0));
  CHECK(std::abs(a[0]) == doctest::Approx(0.0));
  CHECK(std::abs(a[1] - Complex(1.0, 0.0)) <= 1e-15);
  const CVec b = psi.apply(pt2(0.0, 1.0));
  CHECK(std::abs(b[1]) <= 1e-15);
  CHECK_THROWS_AS(psi.apply(pt2(0.0, -1.0)), error);
}

TEST_CASE("cayley map needs a balanced polynomial") {
  CHECK_THROWS_AS(CayleyMap(oracles::poly_intro()), error);
  CHECK_THROWS_AS(EllipsoidAutomorphism(oracles::poly_intro(), Complex(0.1, 0.0), 0.0), error);
  CHECK_THROWS_AS(NormalizationMap(oracles::poly_intro(), 0.5), error);
}

TEST_CASE("property: the cayley map is an involution") {
  for (const auto& poly : balanced_fixtures()) {
    CayleyMap psi(poly);
    GeneralEllipsoid dom(poly);
    for (const auto& z : sample_interior(dom, 2000, 71)) {
      const CVec back = psi.apply(psi.apply(z));
      CHECK((back - z).norm() <= 1e-9);
    }
  }
}

TEST_CASE("property: defining-function transfer identity of the cayley map") {
  for (const auto& poly : balanced_fixtures()) {
    CayleyMap psi(poly);
    GeneralEllipsoid dom(poly);
    const int nv = poly.vars();
    for (const auto& z : sample_interior(dom, 2000, 72)) {
      const CVec w = psi.apply(z);
      const Complex zn = z[nv];
      const double lhs = 2.0 * w[nv].real() - poly.evaluate(w.head(nv));
      const double rhs =
          2.0 * (1.0 - std::norm(zn) - poly.evaluate(z.head(nv))) / std::norm(Complex(1.0) + zn);
      CHECK(std::abs(lhs - rhs) <= 1e-9);
    }
  }
}

TEST_CASE("automorphism basics") {
  auto poly = oracles::poly_quartic();
  SUBCASE("zero parameters give the identity") {
    EllipsoidAutomorphism id(poly, Complex(0, 0), 0.0);
    Rng rng(1);
    for (int i = 0; i < 50; ++i) {
      Rng st = rng.stream(uint64_t(i));
      const CVec z = st.cgaussian(2) * 0.4;
      CHECK((id.apply(z) - z).norm() <= 1e-15);
    }
  }
  SUBCASE("parameter bound") {
    CHECK_THROWS_AS(EllipsoidAutomorphism(poly, Complex(1.0, 0.0), 0.0), error);
    CHECK_THROWS_AS(EllipsoidAutomorphism(poly, Complex(0.8, 0.7), 0.0), error);
  }
  SUBCASE("recentering kills the last coordinate and rescales the block") {
    Rng rng(2);
    for (int i = 0; i < 50; ++i) {
      Rng st = rng.stream(uint64_t(i));
      const Complex pn = std::polar(st.uniform(0.0, 0.95), st.uniform(0.0, 6.28));
      const CVec p = pt2(std::polar(st.uniform(0.0, 0.5), st.uniform(0.0, 6.28)), pn);
      EllipsoidAutomorphism phi(poly, pn, 0.0);
      const CVec q = phi.apply(p);
      CHECK(std::abs(q[1]) == 0.0);
      const double expected = std::abs(p[0]) / std::pow(1.0 - std::norm(pn), 0.25);
      CHECK(std::abs(q[0]) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("property: automorphisms preserve the defining-value sign") {
  for (const auto& poly : balanced_fixtures()) {
    GeneralEllipsoid dom(poly);
    Rng rng(1234);
    int checked = 0;
    for (uint64_t trial = 0; trial < 200; ++trial) {
      Rng st = rng.stream(trial);
      const Complex a = std::polar(st.uniform(0.0, 0.95), st.uniform(0.0, 6.28));
      const double theta = st.uniform(0.0, 6.28);
      EllipsoidAutomorphism phi(poly, a, theta);
      for (int i = 0; i < 10; ++i) {
        CVec z(dom.ambient_dim());
        for (int j = 0; j < dom.ambient_dim(); ++j)
          z[j] = Complex(st.uniform(-1.0, 1.0), st.uniform(-1.0, 1.0));
        if (std::abs(z[dom.ambient_dim() - 1]) >= 0.98) continue;
        const double rho = dom.defining_value(z);
        if (std::abs(rho) <= 1e-8) continue;
        const double rho_img = dom.defining_value(phi.apply(z));
        CHECK(rho * rho_img > 0.0);
        // exact transfer factor for balanced polynomials
        const Complex denom = Complex(1.0) - std::conj(a) * z[dom.ambient_dim() - 1];
        const double lhs = rho_img * std::norm(denom);
        const double rhs = rho * (1.0 - std::norm(a));
        CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, std::abs(rhs)));
        ++checked;
      }
    }
    CHECK(checked > 500);
  }
}

TEST_CASE("dilations") {
  auto poly = oracles::poly_twovar();
  const auto& sig = poly.signature();
  SUBCASE("unit dilation is the identity") {
    Dilation one(sig, 1.0);
    Rng rng(3);
    const CVec z = rng.cgaussian(3);
    CHECK((one.apply(z) - z).norm() == 0.0);
  }
  SUBCASE("group law") {
    Rng rng(4);
    for (uint64_t i = 0; i < 200; ++i) {
      Rng st = rng.stream(i);
      const double lambda = st.uniform(0.1, 10.0), mu = st.uniform(0.1, 10.0);
      const CVec z = st.cgaussian(3);
      const CVec lhs = Dilation(sig, lambda).apply(Dilation(sig, mu).apply(z));
      const CVec rhs = Dilation(sig, lambda * mu).apply(z);
      CHECK((lhs - rhs).norm() <= 1e-12 * std::max(1.0, rhs.norm()));
    }
  }
  SUBCASE("dilation invariance of the Siegel model") {
    SiegelModel model(poly, 0.5);
    Rng rng(5);
    for (uint64_t i = 0; i < 200; ++i) {
      Rng st = rng.stream(i);
      CVec z = st.cgaussian(3);
      z[2] = Complex(st.uniform(-2.0, 2.0), z[2].imag());
      const double lambda = st.uniform(0.1, 10.0);
      const double rho = model.defining_value(z);
      const double rho_scaled = model.defining_value(Dilation(sig, lambda).apply(z));
      // rho scales exactly by 1/lambda, so membership transfers both ways
      CHECK(std::abs(lambda * rho_scaled - rho) <= 1e-12 * std::max(1.0, std::abs(rho)));
    }
  }
  SUBCASE("lambda must be positive") { CHECK_THROWS_AS(Dilation(sig, 0.0), error); }
}

TEST_CASE("normalization composite on the axis") {
  auto poly = oracles::poly_ball();
  for (double t : {0.25, 0.7}) {
    NormalizationMap g(poly, t);
    const CVec w = g.apply(pt2(0.0, t));
    CHECK(w.norm() <= 1e-14);
  }
}

TEST_CASE("orbit_to_slice") {
  auto poly = oracles::poly_ball();
  SUBCASE("axis points recenter to the origin") {
    const CVec q = orbit_to_slice(poly, pt2(0.0, Complex(0.3, 0.55)));
    CHECK(q.norm() <= 1e-15);
  }
  SUBCASE("slice points are fixed") {
    const CVec p = pt2(Complex(0.4, 0.1), 0.0);
    CHECK((orbit_to_slice(poly, p) - p).norm() == 0.0);
  }
  SUBCASE("reference computation inside the ball") {
    const CVec q = orbit_to_slice(poly, pt2(0.3, 0.4));
    CHECK(q[1] == Complex(0.0, 0.0));
    CHECK(q[0].real() == doctest::Approx(0.3 / std::sqrt(1.0 - 0.16)).epsilon(1e-14));
  }
  SUBCASE("interior points stay interior") {
    GeneralEllipsoid dom(oracles::poly_twovar());
    for (const auto& p : sample_interior(dom, 500, 33)) {
      CHECK(dom.contains(orbit_to_slice(dom.poly(), p)));
    }
  }
  SUBCASE("|p_n| >= 1 is rejected") {
    CHECK_THROWS_AS(orbit_to_slice(poly, pt2(0.0, 1.0)), error);
  }
}

TEST_CASE("normalization scale solve") {
  SUBCASE("axis points") {
    WeightSignature sig{{1}};
    for (double t : {1e-4, 0.01, 0.5, 3.0}) {
      const double lambda = solve_normalization_scale(sig, pt2(0.0, t));
      CHECK(std::abs(lambda - t) <= 1e-12 * std::max(1.0, t));
    }
  }
  SUBCASE("unit vectors stay put") {
    WeightSignature sig{{2, 3}};
    Rng rng(6);
    for (int i = 0; i < 20; ++i) {
      Rng st = rng.stream(uint64_t(i));
      CVec q = st.cgaussian(3);
      q /= q.norm();
      CHECK(solve_normalization_scale(sig, q) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
  SUBCASE("single-coordinate closed form") {
    WeightSignature sig{{2}};
    CVec q = pt2(16.0, 0.0);
    CHECK(solve_normalization_scale(sig, q) == doctest::Approx(65536.0).epsilon(1e-9));
    CHECK(solve_normalization_scale(sig, pt2(1.0, 0.0)) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("residual contract") {
    WeightSignature sig{{2, 3}};
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
      Rng st = rng.stream(uint64_t(i));
      const CVec q = st.cgaussian(3) * st.uniform(1e-3, 10.0);
      const double lambda = solve_normalization_scale(sig, q);
      CHECK(std::abs(Dilation(sig, lambda).apply(q).norm() - 1.0) <= 1e-12);
    }
  }
  SUBCASE("origin rejected") {
    CHECK_THROWS_AS(solve_normalization_scale(WeightSignature{{1}}, pt2(0.0, 0.0)), error);
  }
}

TEST_CASE("map verification harness") {
  auto poly = oracles::poly_ball();
  const AnyDomain ball = GeneralEllipsoid(poly, 1.0);
  const AnyDomain siegel = SiegelModel(poly, 1.0);

  SUBCASE("cayley map on the ball") {
    const auto rep = verify_map(CayleyMap(poly), ball, siegel, 2000, 42);
    CHECK(rep.sign_disagreements == 0);
    CHECK(rep.max_boundary_residual <= 1e-9);
    CHECK(rep.max_cayley_identity_residual <= 1e-9);
    CHECK(rep.max_violation <= 1e-9);
  }
  SUBCASE("identity dilation has no violations") {
    const auto rep = verify_map(Dilation(poly.signature(), 1.0), siegel, siegel, 2000, 43);
    CHECK(rep.sign_disagreements == 0);
    CHECK(rep.max_violation <= 1e-9);
  }
  SUBCASE("automorphism maps the ellipsoid to itself") {
    const auto rep =
        verify_map(EllipsoidAutomorphism(poly, Complex(0.4, 0.2), 1.1), ball, ball, 2000, 44);
    CHECK(rep.sign_disagreements == 0);
    CHECK(rep.max_boundary_residual <= 1e-8);
  }
  SUBCASE("normalization maps the Siegel side into the ellipsoid") {
    const auto rep = verify_map(NormalizationMap(poly, 0.35), siegel, ball, 1000, 45);
    CHECK(rep.sign_disagreements == 0);
  }
}
