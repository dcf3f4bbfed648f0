#include "sqz/json_io.hpp"

#include <nlohmann/json.hpp>

namespace sqz {

namespace {

int require_int(const json& j, const std::string& where) {
  if (!j.is_number_integer())
    throw error(errc::validation, where + " must be an integer");
  return j.get<int>();
}

double require_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw error(errc::validation, where + " must be a number");
  return j.get<double>();
}

std::vector<int> require_int_array(const json& j, const std::string& where) {
  if (!j.is_array()) throw error(errc::validation, where + " must be an array of integers");
  std::vector<int> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(require_int(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

RawPolynomial parse_raw_polynomial(const json& j) {
  if (!j.is_object()) throw error(errc::validation, "polynomial spec must be a JSON object");
  RawPolynomial raw;
  if (!j.contains("n")) throw error(errc::validation, "polynomial spec is missing \"n\"");
  raw.n = require_int(j.at("n"), "\"n\"");
  if (!j.contains("m")) throw error(errc::validation, "polynomial spec is missing \"m\"");
  raw.m = require_int_array(j.at("m"), "\"m\"");
  if (!j.contains("terms") || !j.at("terms").is_array())
    throw error(errc::validation, "polynomial spec is missing the \"terms\" array");
  for (size_t i = 0; i < j.at("terms").size(); ++i) {
    const json& t = j.at("terms")[i];
    const std::string where = "terms[" + std::to_string(i) + "]";
    if (!t.is_object()) throw error(errc::validation, where + " must be an object");
    RawTerm term;
    term.K = require_int_array(t.at("K"), where + ".K");
    term.L = require_int_array(t.at("L"), where + ".L");
    term.re = t.contains("re") ? require_number(t.at("re"), where + ".re") : 0.0;
    term.im = t.contains("im") ? require_number(t.at("im"), where + ".im") : 0.0;
    raw.terms.push_back(std::move(term));
  }
  return raw;
}

DomainSpec parse_domain_spec(const json& j) {
  DomainSpec spec;
  spec.raw = parse_raw_polynomial(j);
  if (j.contains("model")) {
    spec.model = j.at("model").get<std::string>();
    if (spec.model != "ellipsoid" && spec.model != "siegel" && spec.model != "horosphere")
      throw error(errc::validation, "model must be one of ellipsoid|siegel|horosphere");
  }
  if (j.contains("r")) spec.r = require_number(j.at("r"), "\"r\"");
  if (j.contains("lambda")) spec.lambda = require_number(j.at("lambda"), "\"lambda\"");
  return spec;
}

AnyDomain make_domain(const DomainSpec& spec, const SphereOptimOptions& opts) {
  WPolynomial poly(spec.raw, opts);
  if (!poly.positivity_passed())
    throw error(errc::validation, "polynomial failed the positivity certificate");
  if (spec.model == "siegel") return SiegelModel(poly, spec.r);
  if (spec.model == "horosphere") return HorosphereBall(poly, spec.r, spec.lambda);
  return GeneralEllipsoid(poly, spec.r);
}

HolomorphicMap parse_map(const json& j, const WPolynomial& poly) {
  if (!j.is_object() || !j.contains("map"))
    throw error(errc::validation, "map descriptor must be an object with a \"map\" field");
  const std::string kind = j.at("map").get<std::string>();
  if (kind == "cayley") return CayleyMap(poly);
  if (kind == "automorphism") {
    Complex a(0.0, 0.0);
    if (j.contains("a")) {
      const auto arr = j.at("a");
      if (!arr.is_array() || arr.size() != 2)
        throw error(errc::validation, "automorphism parameter \"a\" must be [re, im]");
      a = Complex(require_number(arr[0], "a[0]"), require_number(arr[1], "a[1]"));
    }
    const double theta = j.contains("theta") ? require_number(j.at("theta"), "theta") : 0.0;
    return EllipsoidAutomorphism(poly, a, theta);
  }
  if (kind == "dilation") {
    const double lambda = j.contains("lambda") ? require_number(j.at("lambda"), "lambda") : 1.0;
    return Dilation(poly.signature(), lambda);
  }
  if (kind == "normalization") {
    const double lambda = j.contains("lambda") ? require_number(j.at("lambda"), "lambda") : 1.0;
    return NormalizationMap(poly, lambda);
  }
  throw error(errc::validation, "unknown map kind: " + kind);
}

CVec parse_point(const json& j) {
  if (!j.is_array() || j.size() % 2 != 0)
    throw error(errc::validation, "a point must be an interleaved [re, im, ...] array of even length");
  CVec z(j.size() / 2);
  for (size_t i = 0; i + 1 < j.size(); i += 2)
    z[Eigen::Index(i / 2)] = Complex(require_number(j[i], "point"), require_number(j[i + 1], "point"));
  return z;
}

json point_to_json(const CVec& z) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    arr.push_back(z[i].real());
    arr.push_back(z[i].imag());
  }
  return arr;
}

std::vector<CVec> parse_points(const json& j) {
  if (!j.is_array()) throw error(errc::validation, "points must be an array of point arrays");
  std::vector<CVec> out;
  out.reserve(j.size());
  for (const auto& p : j) out.push_back(parse_point(p));
  return out;
}

namespace {

json issues_to_json(const std::vector<ValidationIssue>& issues) {
  json arr = json::array();
  for (const auto& i : issues) arr.push_back({{"term", i.term_index}, {"what", i.what}});
  return arr;
}

}  // namespace

json to_json(const ValidationReport& rep) {
  json j;
  j["valid"] = rep.valid();
  j["balanced"] = rep.balanced;
  j["structural_errors"] = issues_to_json(rep.structural_errors);
  j["hermitian_violations"] = issues_to_json(rep.hermitian_violations);
  j["weight_violations"] = issues_to_json(rep.weight_violations);
  if (rep.positivity) {
    const auto& p = *rep.positivity;
    j["positivity"] = {{"min_value", p.min_value},
                       {"argmin", point_to_json(p.argmin)},
                       {"passed", p.passed},
                       {"restarts", p.restarts},
                       {"converged_restarts", p.converged_restarts},
                       {"tol", p.tol}};
  }
  return j;
}

json to_json(const ComparabilityConstants& c) {
  return json{{"c1", c.c1},
              {"c2", c.c2},
              {"argmin", point_to_json(c.argmin)},
              {"argmax", point_to_json(c.argmax)},
              {"restarts", c.restarts},
              {"converged_restarts", c.converged_restarts}};
}

json to_json(const DistanceReport& rep) {
  return json{{"distance", rep.distance},
              {"boundary_point", point_to_json(rep.boundary_point)},
              {"residual", rep.residual},
              {"seed_spread", rep.seed_spread},
              {"seeds", rep.seeds},
              {"on_boundary_warning", rep.on_boundary_warning},
              {"label", "numerical estimate (certified-feasible upper bound)"}};
}

json to_json(const RadiusReport& rep) {
  return json{{"radius", rep.radius},
              {"far_point", point_to_json(rep.far_point)},
              {"analytic_bound", rep.analytic_bound},
              {"label", "numerical estimate (lower envelope of the supremum)"}};
}

json to_json(const DiameterReport& rep) {
  return json{{"value", rep.value}, {"a", point_to_json(rep.a)}, {"b", point_to_json(rep.b)}};
}

json to_json(const LeviReport& rep) {
  return json{{"point", point_to_json(rep.point)},
              {"gradient_norm", rep.gradient_norm},
              {"restricted_eigenvalues", rep.restricted_eigenvalues},
              {"classification", to_string(rep.classification)},
              {"tol", rep.tol}};
}

json to_json(const WBReport& rep) {
  json trend = json::array();
  for (const auto& t : rep.trend)
    trend.push_back({{"radius", t.radius}, {"min_eig", t.min_eigenvalue}, {"samples", t.samples}});
  return json{{"pass", rep.pass},
              {"tol", rep.tol},
              {"min_eigenvalue", rep.min_eigenvalue},
              {"argmin_point", point_to_json(rep.argmin_point)},
              {"samples", rep.samples},
              {"exclusion_radius", rep.exclusion_radius},
              {"trend", trend},
              {"seed", rep.seed},
              {"note", rep.note}};
}

json to_json(const SqueezeBoundReport& rep) {
  json t;
  if (rep.trace.orbit_image) t["orbit_image"] = point_to_json(*rep.trace.orbit_image);
  if (rep.trace.inscribed) t["r"] = *rep.trace.inscribed;
  if (rep.trace.circumscribed) t["R"] = *rep.trace.circumscribed;
  if (rep.trace.lambda) t["lambda"] = *rep.trace.lambda;
  if (rep.trace.normalized_point) t["normalized_point"] = point_to_json(*rep.trace.normalized_point);
  if (rep.trace.delta_q) t["delta"] = *rep.trace.delta_q;
  if (rep.trace.domain_diameter) t["d"] = *rep.trace.domain_diameter;
  if (rep.trace.gamma0_uniform) t["gamma0_uniform"] = *rep.trace.gamma0_uniform;
  if (rep.trace.sigma_gap) t["sigma_gap"] = *rep.trace.sigma_gap;
  if (rep.trace.diameter_alt_ratio) t["delta_over_R_alt"] = *rep.trace.diameter_alt_ratio;

  json n{{"seed", rep.numerics.seed},
         {"random_rays", rep.numerics.random_rays},
         {"refine_candidates", rep.numerics.refine_candidates},
         {"nm_max_iters", rep.numerics.nm_max_iters},
         {"boundary_samples", rep.numerics.boundary_samples},
         {"sigma_samples", rep.numerics.sigma_samples},
         {"feasibility_tol", rep.numerics.feasibility_tol}};

  json j{{"point", point_to_json(rep.point)},
         {"bound", rep.bound},
         {"method", to_string(rep.method)},
         {"status", to_string(rep.status)},
         {"trace", t},
         {"numerics", n}};
  if (!rep.message.empty()) j["message"] = rep.message;
  return j;
}

json to_json(const OrbitTraceReport& rep) {
  json recs = json::array();
  for (const auto& r : rep.records)
    recs.push_back({{"a", point_to_json(r.a)},
                    {"b", point_to_json(r.b)},
                    {"P_b", r.P_b},
                    {"dist_estimate", r.dist_estimate},
                    {"defining_gap", r.defining_gap},
                    {"ratio", r.ratio}});
  return json{{"records", recs}, {"case", rep.case_classification}, {"rule", rep.rule}};
}

json to_json(const HHRProfile& rep) {
  json levels = json::array();
  for (const auto& l : rep.levels)
    levels.push_back(
        {{"eps", l.eps}, {"r_K", l.r_K}, {"R_K", l.R_K}, {"bound", l.bound}, {"samples", l.samples}});
  return json{{"levels", levels}, {"seed", rep.seed}, {"caveat", rep.caveat}};
}

json to_json(const MapVerificationReport& rep) {
  return json{{"samples", rep.samples},
              {"seed", rep.seed},
              {"sign_disagreements", rep.sign_disagreements},
              {"max_boundary_residual", rep.max_boundary_residual},
              {"max_cayley_identity_residual", rep.max_cayley_identity_residual},
              {"max_violation", rep.max_violation}};
}

}  // namespace sqz
