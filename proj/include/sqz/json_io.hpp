#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "sqz/squeeze.hpp"

namespace sqz {

using json = nlohmann::json;

/// Polynomial spec:
///   {"n": int, "m": [int,...],
///    "terms": [{"K": [int,...], "L": [int,...], "re": float, "im": float}, ...]}
/// Off-diagonal pairs may be listed once (the conjugate partner is implied)
/// or twice with conjugate coefficients. Content problems are thrown as
/// error(validation) with the offending term index in the message.
RawPolynomial parse_raw_polynomial(const json& j);

struct DomainSpec {
  RawPolynomial raw;
  std::string model = "ellipsoid";  // "ellipsoid" | "siegel" | "horosphere"
  double r = 1.0;
  double lambda = 1.0;
};

DomainSpec parse_domain_spec(const json& j);
AnyDomain make_domain(const DomainSpec& spec, const SphereOptimOptions& opts = {});

/// Map descriptor:
///   {"map": "cayley"|"automorphism"|"dilation"|"normalization",
///    "a": [re,im]?, "theta": float?, "lambda": float?}
HolomorphicMap parse_map(const json& j, const WPolynomial& poly);

/// Points are interleaved [re, im, re, im, ...] arrays.
CVec parse_point(const json& j);
json point_to_json(const CVec& z);
std::vector<CVec> parse_points(const json& j);

json to_json(const ValidationReport& rep);
json to_json(const ComparabilityConstants& c);
json to_json(const DistanceReport& rep);
json to_json(const RadiusReport& rep);
json to_json(const DiameterReport& rep);
json to_json(const LeviReport& rep);
json to_json(const WBReport& rep);
json to_json(const SqueezeBoundReport& rep);
json to_json(const OrbitTraceReport& rep);
json to_json(const HHRProfile& rep);
json to_json(const MapVerificationReport& rep);

}  // namespace sqz
