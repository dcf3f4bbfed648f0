#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "sqz/domains.hpp"

using namespace sqz;

namespace {

CVec pt2(Complex a, Complex b) {
  CVec v(2);
  v[0] = a;
  v[1] = b;
  return v;
}

CVec random_box_point(Rng& rng, int dim, double half_width) {
  CVec z(dim);
  for (int i = 0; i < dim; ++i)
    z[i] = Complex(rng.uniform(-half_width, half_width), rng.uniform(-half_width, half_width));
  return z;
}

}  // namespace

TEST_CASE("defining values and membership on the reference domains") {
  GeneralEllipsoid ball(oracles::poly_ball());
  CHECK(ball.defining_value(pt2(0.0, 0.0)) == doctest::Approx(-1.0));
  CHECK(ball.contains(pt2(0.0, 0.0)));

  HorosphereBall d1(oracles::poly_ball(), 1.0);
  CHECK(d1.defining_value(pt2(0.0, 1.0)) == doctest::Approx(-1.0));
  CHECK(d1.contains(pt2(0.0, 1.0)));

  SiegelModel siegel(oracles::poly_ball());
  CHECK(siegel.defining_value(pt2(0.0, -1.0)) == doctest::Approx(2.0));
  CHECK_FALSE(siegel.contains(pt2(0.0, -1.0)));

  CHECK_THROWS_AS(ball.defining_value(CVec::Ones(3)), error);
}

TEST_CASE("property: membership agrees with the defining-value sign") {
  GeneralEllipsoid ball(oracles::poly_ball());
  GeneralEllipsoid quartic(oracles::poly_quartic());
  Rng rng(99);
  for (uint64_t i = 0; i < 100000; ++i) {
    Rng st = rng.stream(i);
    const CVec z = random_box_point(st, 2, 1.2);
    CHECK(ball.contains(z) == (ball.defining_value(z) < 0.0));
    CHECK(quartic.contains(z) == (quartic.defining_value(z) < 0.0));
  }
}

TEST_CASE("horosphere: dilated form at lambda=1 equals the centered form") {
  auto poly = oracles::poly_quartic();
  Rng rng(3);
  for (uint64_t i = 0; i < 1000; ++i) {
    Rng st = rng.stream(i);
    const double r = st.uniform(0.1, 1.0);
    HorosphereBall dom(poly, r, 1.0);
    const CVec z = random_box_point(st, 2, 1.5);
    const double expanded = dom.defining_value(z);
    const Complex zn = z[1];
    const double centered = std::norm(zn - Complex(r, 0.0)) + poly.evaluate(z.head(1)) - r * r;
    CHECK(std::abs(expanded - centered) <= 1e-12 * std::max(1.0, std::abs(centered)));
  }
}

TEST_CASE("boundary distance on the unit ball") {
  GeneralEllipsoid ball(oracles::poly_ball());
  auto center = boundary_distance(ball, pt2(0.0, 0.0));
  CHECK(center.distance == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(center.residual <= 1e-10);

  auto off = boundary_distance(ball, pt2(0.0, 0.5));
  CHECK(off.distance == doctest::Approx(0.5).epsilon(1e-9));

  CHECK_THROWS_AS(boundary_distance(ball, pt2(0.0, 2.0)), error);

  auto on_bd = boundary_distance(ball, pt2(0.0, 1.0));
  CHECK(on_bd.on_boundary_warning);
  CHECK(on_bd.distance == 0.0);
}

TEST_CASE("boundary distance against brute-force scans") {
  GeneralEllipsoid quartic(oracles::poly_quartic());
  auto rho = [&](const CVec& w) { return quartic.defining_value(w); };
  const auto profile = oracles::quartic_profile();
  Rng rng(31);
  for (uint64_t i = 0; i < 6; ++i) {
    Rng st = rng.stream(i);
    CVec z = pt2(std::polar(st.uniform(0.0, 0.8), st.uniform(0.0, 6.28)),
                 std::polar(st.uniform(0.0, 0.5), st.uniform(0.0, 6.28)));
    if (!quartic.contains(z)) continue;
    const auto rep = boundary_distance(quartic, z);
    const double grid = profile.boundary_distance(std::abs(z[0]), std::abs(z[1]));
    CHECK(rep.distance == doctest::Approx(grid).epsilon(1e-6));
    const double scan = oracles::rayscan_boundary_distance(rho, z, 10000, 7 + i);
    CHECK(rep.distance == doctest::Approx(scan).epsilon(1e-5));
    CHECK(rep.residual <= 1e-10);
  }
  // the specific interior point fixture
  const auto rep = boundary_distance(quartic, pt2(0.5, 0.0));
  CHECK(rep.distance == doctest::Approx(profile.boundary_distance(0.5, 0.0)).epsilon(1e-6));
}

TEST_CASE("circumscribed radius") {
  GeneralEllipsoid ball(oracles::poly_ball());
  CHECK(circumscribed_radius(ball, pt2(0.0, 0.0)).radius == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(circumscribed_radius(ball, pt2(0.0, 0.5)).radius == doctest::Approx(1.5).epsilon(1e-9));

  GeneralEllipsoid quartic(oracles::poly_quartic());
  const auto profile = oracles::quartic_profile();
  const auto rep = circumscribed_radius(quartic, pt2(0.0, 0.0));
  CHECK(rep.radius == doctest::Approx(profile.circumscribed(0.0, 0.0)).epsilon(1e-6));
  CHECK(rep.radius == doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-6));
  CHECK(rep.radius <= rep.analytic_bound);
}

TEST_CASE("diameter") {
  GeneralEllipsoid ball(oracles::poly_ball());
  const auto ball_diam = diameter(ball);
  CHECK(ball_diam.value == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(ball_diam.value == doctest::Approx(2.0 * circumscribed_radius(ball, pt2(0, 0)).radius)
                               .epsilon(1e-9));

  GeneralEllipsoid quartic(oracles::poly_quartic());
  const auto profile = oracles::quartic_profile();
  const auto qd = diameter(quartic);
  CHECK(qd.value == doctest::Approx(profile.diameter()).epsilon(1e-4));
  CHECK(qd.value >= 2.0);
  CHECK(qd.value <= 2.0 * circumscribed_radius(quartic, pt2(0, 0)).radius + 1e-9);
}

TEST_CASE("boundary sampler") {
  GeneralEllipsoid ball(oracles::poly_ball());
  CHECK(sample_boundary(ball, 0, 1).empty());
  for (const auto& z : sample_boundary(ball, 500, 5)) {
    CHECK(std::abs(z.norm() - 1.0) <= 1e-10);
  }
  GeneralEllipsoid quartic(oracles::poly_quartic(), 0.75);
  for (const auto& z : sample_boundary(quartic, 500, 6)) {
    CHECK(std::abs(quartic.defining_value(z)) <= 1e-10);
  }
  // determinism under a fixed seed
  auto a = sample_boundary(ball, 50, 12);
  auto b = sample_boundary(ball, 50, 12);
  for (size_t i = 0; i < a.size(); ++i) CHECK((a[i] - b[i]).norm() == 0.0);
}

TEST_CASE("interior sampler stays inside") {
  GeneralEllipsoid quartic(oracles::poly_quartic());
  for (const auto& z : sample_interior(quartic, 500, 8)) CHECK(quartic.contains(z));
  HorosphereBall horo(oracles::poly_ball(), 0.5);
  for (const auto& z : sample_interior(horo, 200, 9)) CHECK(horo.contains(z));
}

TEST_CASE("inscribed radius never exceeds the circumscribed radius") {
  GeneralEllipsoid quartic(oracles::poly_quartic());
  for (const auto& z : sample_interior(quartic, 10, 21)) {
    const double r = boundary_distance(quartic, z).distance;
    const double R = circumscribed_radius(quartic, z).radius;
    CHECK(r <= R);
  }
}

TEST_CASE("horosphere nesting: smaller parameter sits inside larger") {
  auto poly = oracles::poly_quartic();
  HorosphereBall small(poly, 0.3);
  HorosphereBall large(poly, 0.7);
  for (const auto& z : sample_interior(small, 300, 4)) CHECK(large.contains(z));
  for (const auto& z : sample_boundary(small, 300, 4)) {
    CHECK(large.defining_value(z) <= 1e-12);
  }
}

TEST_CASE("family coverage of compact pieces of the Siegel model") {
  auto poly = oracles::poly_ball();
  SUBCASE("reference values") {
    std::vector<CVec> K = {pt2(0.0, 1.0)};
    CHECK(family_covers(poly, 1.0, 1.0, K));
    CHECK_FALSE(family_covers(poly, 3.0, 1.0, K));
  }
  SUBCASE("monotone in lambda") {
    Rng rng(17);
    const double r = 0.5;
    std::vector<CVec> K;
    for (uint64_t i = 0; i < 50; ++i) {
      Rng st = rng.stream(i);
      CVec zp = st.cgaussian(1) * 0.3;
      const double pv = poly.evaluate(zp) / r;
      K.push_back(pt2(zp[0], Complex(0.5 * pv * (1.0 + st.uniform(0.1, 2.0)), st.uniform(-1, 1))));
    }
    bool prev = false;
    for (double lambda : {4.0, 2.0, 1.0, 0.5, 0.25, 0.05}) {
      const bool now = family_covers(poly, lambda, r, K);
      if (prev) CHECK(now);  // covered at larger lambda implies covered at smaller
      prev = now;
    }
    CHECK(family_covers(poly, 1e-6, r, K));
  }
  SUBCASE("points outside the model are rejected") {
    std::vector<CVec> K = {pt2(0.0, -1.0)};
    CHECK_THROWS_AS(family_covers(poly, 1.0, 1.0, K), error);
  }
}
