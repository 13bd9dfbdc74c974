#pragma once

// JSON exchange formats for every public value type. Rationals travel as
// "p/q" strings; integer JSON numbers are accepted on input.

#include "dysongraph/dse.hpp"
#include "dysongraph/graphon.hpp"
#include "dysongraph/graphpoly.hpp"
#include "dysongraph/hopf.hpp"
#include "dysongraph/laurent.hpp"
#include "dysongraph/renorm.hpp"
#include "dysongraph/trees.hpp"

#include "json.hpp"

#include <string>
#include <string_view>

namespace dysongraph {

using Json = nlohmann::json;

/// Throws ParseError naming the byte offset of the first bad character.
Json parse_json(std::string_view text);
/// Throws ValidationError if the file cannot be read, ParseError on bad JSON.
Json read_json_file(const std::string& path);

// Shape errors below throw ValidationError with a path such as
// "cocycles[1].omega"; malformed rationals throw ParseError.

Json to_json(const Rational& q);
Rational rational_from_json(const Json& j, const std::string& where = "value");

/// {"d": label, "c": [children]}
Json to_json(const RootedTree& t);
RootedTree tree_from_json(const Json& j, const std::string& where = "tree");
/// Array of trees.
Json to_json(const Forest& f);
Forest forest_from_json(const Json& j, const std::string& where = "forest");
/// [{"coef": "p/q", "forest": [...]}]
Json to_json(const ForestSum& x);
ForestSum forest_sum_from_json(const Json& j, const std::string& where = "sum");
/// [{"coef": "p/q", "left": [...], "right": [...]}]
Json to_json(const TensorSum& t);
TensorSum tensor_sum_from_json(const Json& j, const std::string& where = "tensor");

/// {"cocycles": [{"decoration", "omega"}], "order", "coupling"}; order
/// defaults to 6 and coupling to 1. The result is validated.
Json to_json(const DSESpec& spec);
DSESpec dse_spec_from_json(const Json& j);
/// {"spec": ..., "grades": [{"grade": n, "sum": ForestSum}]} with X_0 .. X_N.
Json to_json(const DSESolution& sol);
/// Accepts a solution document, a DSESpec (solved on the spot), or any
/// object holding one of them under "solution".
DSESolution solution_from_json(const Json& j);

/// {"window": [lo, hi], "terms": [{"pow": k, "coef": [["p/q", L-power]]}]}.
/// Exact series carry "exact": true and hi is their top power.
Json to_json(const LaurentSeries& s);
LaurentSeries laurent_from_json(const Json& j, const std::string& where = "series");

/// {"scale": null | "p/q", "residues": {label: "p/q"}, "window": [lo, hi]};
/// every key is optional.
Json to_json(const ToyRules& rules);
ToyRules toy_rules_from_json(const Json& j);

/// {"measures": [...], "values": [[...]]}
Json to_json(const StepGraphon& w);
StepGraphon step_graphon_from_json(const Json& j);
/// graph6 -> density
Json to_json(const DensityFingerprint& f);

/// {"n": 3, "edges": [[0,1], ...]} with optional "weights": [1, 2, ...].
Json to_json(const MultiGraph& g);
MultiGraph multigraph_from_json(const Json& j, const std::string& where = "graph");
/// [{"coef": "1", "exps": {"x": 2}}]
Json to_json(const MultiPoly& p);
MultiPoly multi_poly_from_json(const Json& j, const std::string& where = "polynomial");

Json to_json(const CutNorm& c);
Json to_json(const CutDistance& d);

}  // namespace dysongraph
