#pragma once

// JSON schemas for distributions, T laws, sequences and reports.
//
// Distribution: a family name ("exponential") or an object
//   {"kind": "exponential", "rate": 1}
//   {"kind": "piecewise_quantile", "knots": [[u, x], ...]}
//   {"kind": "discrete", "atoms": [[x, p], ...]}
// T law:
//   {"kind": "atoms", "atoms": [[t, p], ...]}
//   {"kind": "density", "family": "lognormal", "mu": 0, "sigma": 1}
//   {"kind": "stieltjes_lambda", "lambda": 0.5}
//   {"kind": "mixture", "atoms": [[t, p], ...],
//    "components": [{"weight": w, "family": "gamma", "shape": a, "rate": b}]}
//   {"kind": "dense_support", "poisson_terms": 21, "rationals": 40}
// Unknown keys are rejected.

#include <string>
#include <string_view>

#include <json.hpp>

#include "recseq/distributions.hpp"
#include "recseq/records.hpp"
#include "recseq/sequences.hpp"
#include "recseq/transform.hpp"

namespace recseq {

using Json = nlohmann::ordered_json;

// Accepts inline JSON, a path to a JSON file, or a bare family name.
Json load_json_arg(std::string_view text_or_path);

QuantileRep distribution_from_json(const Json& j);
TDist tdist_from_json(const Json& j);

Json to_json(const ErsSeq& rho);
ErsSeq ers_from_json(const Json& j);

Json to_json(const MomentSeq& m);
MomentSeq moments_from_json(const Json& j);

Json to_json(const MembershipReport& report);
Json summary_json(const RecordSample& sample);

}  // namespace recseq
