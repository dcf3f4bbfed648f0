#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <string>

#include <nlohmann/json.hpp>

#include "sqz/sqz_c.h"

using nlohmann::json;

namespace {

const char* kBallSpec = R"({"n":2,"m":[1],"terms":[{"K":[1],"L":[1],"re":1.0,"im":0.0}],
                            "model":"ellipsoid","r":1.0})";
const char* kQuarticSpec = R"({"n":2,"m":[2],"terms":[{"K":[2],"L":[2],"re":1.0,"im":0.0}]})";
const char* kBadDiagonal = R"({"n":2,"m":[1],"terms":[{"K":[1],"L":[1],"re":0.0,"im":1.0}]})";

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { sqz_string_free(s); }
  std::string str() const { return s ? std::string(s) : std::string(); }
};

struct Poly {
  sqz_poly* p = nullptr;
  ~Poly() { sqz_poly_free(p); }
};

struct Domain {
  sqz_domain* d = nullptr;
  ~Domain() { sqz_domain_free(d); }
};

}  // namespace

TEST_CASE("version and error plumbing") {
  CHECK(std::strlen(sqz_version()) > 0);
  sqz_poly* p = nullptr;
  CHECK(sqz_poly_from_json(nullptr, &p) == SQZ_ERR_ARGUMENT);
  CHECK(std::strlen(sqz_last_error()) > 0);
}

TEST_CASE("polynomial lifecycle") {
  Poly poly;
  REQUIRE(sqz_poly_from_json(kBallSpec, &poly.p) == SQZ_OK);
  CHECK(sqz_poly_ambient_dim(poly.p) == 2);
  CHECK(sqz_poly_balanced(poly.p) == 1);

  const double zp[2] = {1.0, 0.0};
  double out = 0.0;
  REQUIRE(sqz_poly_evaluate(poly.p, zp, 2, &out) == SQZ_OK);
  CHECK(out == doctest::Approx(1.0));

  double c1 = 0.0, c2 = 0.0;
  REQUIRE(sqz_poly_comparability(poly.p, &c1, &c2) == SQZ_OK);
  CHECK(c1 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(c2 == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("validation endpoint succeeds on rejected polynomials") {
  OwnedString rep;
  REQUIRE(sqz_validate_json(kBadDiagonal, &rep.s) == SQZ_OK);
  const json j = json::parse(rep.str());
  CHECK_FALSE(j.at("valid").get<bool>());
  CHECK(j.at("hermitian_violations").size() == 1);
}

TEST_CASE("malformed json reports parse status with location") {
  OwnedString rep;
  const sqz_status st = sqz_validate_json("{\"n\": 2,, }", &rep.s);
  CHECK(st == SQZ_ERR_PARSE);
  const std::string msg = sqz_last_error();
  CHECK(msg.find("line") != std::string::npos);
  CHECK(msg.find("column") != std::string::npos);
}

TEST_CASE("domain lifecycle and membership") {
  Domain dom;
  REQUIRE(sqz_domain_from_json(kBallSpec, &dom.d) == SQZ_OK);
  const double origin[4] = {0.0, 0.0, 0.0, 0.0};
  double rho = 0.0;
  REQUIRE(sqz_domain_defining_value(dom.d, origin, 4, &rho) == SQZ_OK);
  CHECK(rho == doctest::Approx(-1.0));
  int inside = 0;
  REQUIRE(sqz_domain_contains(dom.d, origin, 4, &inside) == SQZ_OK);
  CHECK(inside == 1);

  OwnedString diam;
  REQUIRE(sqz_domain_diameter(dom.d, &diam.s) == SQZ_OK);
  CHECK(json::parse(diam.str()).at("value").get<double>() == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("bound pipelines through the C surface") {
  Domain dom;
  REQUIRE(sqz_domain_from_json(kBallSpec, &dom.d) == SQZ_OK);
  const double origin[4] = {0.0, 0.0, 0.0, 0.0};
  OwnedString rep;
  REQUIRE(sqz_bound(dom.d, "lemma21", origin, 4, 7, &rep.s) == SQZ_OK);
  const json j = json::parse(rep.str());
  CHECK(j.at("bound").get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(j.at("method").get<std::string>() == "lemma21");

  OwnedString rep2;
  CHECK(sqz_bound(dom.d, "nonsense", origin, 4, 7, &rep2.s) == SQZ_ERR_ARGUMENT);
}

TEST_CASE("normalization pipeline and its failure statuses") {
  Poly poly;
  REQUIRE(sqz_poly_from_json(kBallSpec, &poly.p) == SQZ_OK);

  const double q_ok[4] = {0.0, 0.0, 0.01, 0.0};
  OwnedString rep;
  REQUIRE(sqz_bound_extreme(poly.p, 1.0, 0.5, 1.0, q_ok, 4, 8, 21, &rep.s) == SQZ_OK);
  const json j = json::parse(rep.str());
  CHECK(j.at("status").get<std::string>() == "ok");
  const double bound = j.at("bound").get<double>();
  CHECK(bound > 0.4);
  CHECK(bound <= 0.5);

  const double q_bad[4] = {0.0, 0.0, -0.1, 0.0};
  OwnedString rep_bad;
  CHECK(sqz_bound_extreme(poly.p, 1.0, 0.5, 1.0, q_bad, 4, 8, 21, &rep_bad.s) ==
        SQZ_ERR_VALIDATION);
  CHECK(json::parse(rep_bad.str()).at("status").get<std::string>() == "cone-membership-error");
}

TEST_CASE("levi and wb endpoints") {
  Domain dom;
  REQUIRE(sqz_domain_from_json(kBallSpec, &dom.d) == SQZ_OK);
  const double s = 1.0 / std::sqrt(2.0);
  const double q[4] = {s, 0.0, s, 0.0};
  OwnedString levi;
  REQUIRE(sqz_levi_report(dom.d, q, 4, 1e-8, &levi.s) == SQZ_OK);
  const json j = json::parse(levi.str());
  CHECK(j.at("classification").get<std::string>() == "strongly-pseudoconvex");
  CHECK(j.at("restricted_eigenvalues")[0].get<double>() == doctest::Approx(1.0).epsilon(1e-10));

  OwnedString wb;
  REQUIRE(sqz_wb_check(dom.d, 0.1, 500, 3, 1e-8, &wb.s) == SQZ_OK);
  CHECK(json::parse(wb.str()).at("pass").get<bool>());
}

TEST_CASE("map endpoints") {
  Poly poly;
  REQUIRE(sqz_poly_from_json(kQuarticSpec, &poly.p) == SQZ_OK);
  const double z[4] = {0.0, 0.0, 0.0, 0.0};
  double out[4] = {0, 0, 0, 0};
  REQUIRE(sqz_map_apply(poly.p, R"({"map":"cayley"})", z, 4, out) == SQZ_OK);
  CHECK(out[2] == doctest::Approx(1.0));

  double lambda = 0.0;
  const double qv[4] = {0.0, 0.0, 0.25, 0.0};
  REQUIRE(sqz_solve_normalization_scale(poly.p, qv, 4, &lambda) == SQZ_OK);
  CHECK(lambda == doctest::Approx(0.25).epsilon(1e-10));

  Domain dom;
  REQUIRE(sqz_domain_from_json(kQuarticSpec, &dom.d) == SQZ_OK);
  OwnedString rep;
  REQUIRE(sqz_maps_verify(dom.d, R"({"map":"cayley"})", 500, 5, &rep.s) == SQZ_OK);
  CHECK(json::parse(rep.str()).at("max_violation").get<double>() <= 1e-9);
}

TEST_CASE("scan endpoints") {
  Domain dom;
  REQUIRE(sqz_domain_from_json(kBallSpec, &dom.d) == SQZ_OK);
  const double eps[2] = {0.5, 0.19};
  OwnedString rep;
  REQUIRE(sqz_hhr_scan(dom.d, eps, 2, 16, 4, &rep.s) == SQZ_OK);
  const json j = json::parse(rep.str());
  CHECK(j.at("levels").size() == 2);

  const double pts[8] = {0.0, 0.0, 0.5, 0.0, 0.0, 0.0, 0.75, 0.0};
  OwnedString orbit;
  REQUIRE(sqz_orbit_trace(dom.d, pts, 2, 4, &orbit.s) == SQZ_OK);
  CHECK(json::parse(orbit.str()).at("records").size() == 2);
}

TEST_CASE("fixed seeds reproduce reports byte for byte") {
  Domain dom;
  REQUIRE(sqz_domain_from_json(kQuarticSpec, &dom.d) == SQZ_OK);
  OwnedString a, b;
  REQUIRE(sqz_wb_check(dom.d, 0.2, 400, 123, 1e-8, &a.s) == SQZ_OK);
  REQUIRE(sqz_wb_check(dom.d, 0.2, 400, 123, 1e-8, &b.s) == SQZ_OK);
  CHECK(a.str() == b.str());

  const double z[4] = {0.2, 0.1, 0.3, 0.0};
  OwnedString c, d;
  REQUIRE(sqz_bound(dom.d, "slice", z, 4, 9, &c.s) == SQZ_OK);
  REQUIRE(sqz_bound(dom.d, "slice", z, 4, 9, &d.s) == SQZ_OK);
  CHECK(c.str() == d.str());
}

TEST_CASE("samplers through the C surface") {
  Domain dom;
  REQUIRE(sqz_domain_from_json(kBallSpec, &dom.d) == SQZ_OK);
  double buf[40] = {0};
  REQUIRE(sqz_domain_sample_boundary(dom.d, 10, 17, buf) == SQZ_OK);
  for (int i = 0; i < 10; ++i) {
    const double n2 = buf[4 * i] * buf[4 * i] + buf[4 * i + 1] * buf[4 * i + 1] +
                      buf[4 * i + 2] * buf[4 * i + 2] + buf[4 * i + 3] * buf[4 * i + 3];
    CHECK(std::abs(n2 - 1.0) <= 1e-10);
  }
}
