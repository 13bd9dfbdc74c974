#include "dysongraph/io.hpp"

#include "dysongraph/errors.hpp"

#include <fstream>
#include <sstream>

namespace dysongraph {

namespace {

const Json& member(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw ValidationError(where + ": expected an object");
    const auto it = j.find(key);
    if (it == j.end()) throw ValidationError(where + ": missing \"" + key + "\"");
    return *it;
}

const Json* optional_member(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw ValidationError(where + ": expected an object");
    const auto it = j.find(key);
    return it == j.end() || it->is_null() ? nullptr : &*it;
}

const Json& array(const Json& j, const std::string& where) {
    if (!j.is_array()) throw ValidationError(where + ": expected an array");
    return j;
}

std::string string_value(const Json& j, const std::string& where) {
    if (!j.is_string()) throw ValidationError(where + ": expected a string");
    return j.get<std::string>();
}

std::size_t index_value(const Json& j, const std::string& where) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
        throw ValidationError(where + ": expected a nonnegative integer");
    return j.get<std::size_t>();
}

int int_value(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ValidationError(where + ": expected an integer");
    const auto v = j.get<long long>();
    if (v < -1000000 || v > 1000000) throw ValidationError(where + ": integer out of range");
    return static_cast<int>(v);
}

std::string at(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

std::pair<int, int> window_from_json(const Json& j, const std::string& where) {
    array(j, where);
    if (j.size() != 2) throw ValidationError(where + ": expected [lo, hi]");
    const int lo = int_value(j[0], where + "[0]"), hi = int_value(j[1], where + "[1]");
    if (lo > hi) throw ValidationError(where + ": lo exceeds hi");
    return {lo, hi};
}

}  // namespace

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError("malformed JSON at byte " + std::to_string(e.byte) + " (line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ")");
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_json(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
    if (j.is_number_unsigned()) return Rational(Integer(std::to_string(j.get<unsigned long long>())));
    if (!j.is_string()) throw ValidationError(where + ": expected a rational \"p/q\" string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
    }
}

Json to_json(const RootedTree& t) {
    Json children = Json::array();
    for (const auto& c : t.children()) children.push_back(to_json(c));
    return Json{{"d", t.label()}, {"c", children}};
}

namespace {

RawTree raw_tree_from_json(const Json& j, const std::string& where, std::size_t depth) {
    if (depth > 10000) throw ValidationError(where + ": tree nested too deeply");
    RawTree t{string_value(member(j, "d", where), where + ".d"), {}};
    if (const Json* c = optional_member(j, "c", where)) {
        array(*c, where + ".c");
        for (std::size_t i = 0; i < c->size(); ++i) t.children.push_back(raw_tree_from_json((*c)[i], at(where + ".c", i), depth + 1));
    }
    return t;
}

}  // namespace

RootedTree tree_from_json(const Json& j, const std::string& where) {
    try {
        return canonicalize(raw_tree_from_json(j, where, 0));
    } catch (const ValidationError&) {
        throw;
    } catch (const Error& e) {
        throw ValidationError(where + ": " + e.what());
    }
}

Json to_json(const Forest& f) {
    Json out = Json::array();
    for (const auto& t : f.trees()) out.push_back(to_json(t));
    return out;
}

Forest forest_from_json(const Json& j, const std::string& where) {
    array(j, where);
    std::vector<RootedTree> trees;
    for (std::size_t i = 0; i < j.size(); ++i) trees.push_back(tree_from_json(j[i], at(where, i)));
    return Forest(std::move(trees));
}

Json to_json(const ForestSum& x) {
    Json out = Json::array();
    for (const auto& [f, c] : x.terms()) out.push_back(Json{{"coef", to_json(c)}, {"forest", to_json(f)}});
    return out;
}

ForestSum forest_sum_from_json(const Json& j, const std::string& where) {
    array(j, where);
    ForestSum out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto w = at(where, i);
        out.add(forest_from_json(member(j[i], "forest", w), w + ".forest"), rational_from_json(member(j[i], "coef", w), w + ".coef"));
    }
    return out;
}

Json to_json(const TensorSum& t) {
    Json out = Json::array();
    for (const auto& [key, c] : t.terms())
        out.push_back(Json{{"coef", to_json(c)}, {"left", to_json(key.first)}, {"right", to_json(key.second)}});
    return out;
}

TensorSum tensor_sum_from_json(const Json& j, const std::string& where) {
    array(j, where);
    TensorSum out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto w = at(where, i);
        out.add(forest_from_json(member(j[i], "left", w), w + ".left"), forest_from_json(member(j[i], "right", w), w + ".right"),
                rational_from_json(member(j[i], "coef", w), w + ".coef"));
    }
    return out;
}

Json to_json(const DSESpec& spec) {
    Json cocycles = Json::array();
    for (const auto& c : spec.cocycles) cocycles.push_back(Json{{"decoration", c.decoration.label()}, {"omega", to_json(c.omega)}});
    return Json{{"cocycles", cocycles}, {"order", spec.order}, {"coupling", to_json(spec.coupling)}};
}

DSESpec dse_spec_from_json(const Json& j) {
    DSESpec spec;
    const Json& cocycles = array(member(j, "cocycles", "spec"), "cocycles");
    for (std::size_t i = 0; i < cocycles.size(); ++i) {
        const auto w = at("cocycles", i);
        Cocycle c{Decoration(string_value(member(cocycles[i], "decoration", w), w + ".decoration")), 1};
        if (const Json* omega = optional_member(cocycles[i], "omega", w)) c.omega = rational_from_json(*omega, w + ".omega");
        spec.cocycles.push_back(std::move(c));
    }
    if (const Json* order = optional_member(j, "order", "spec")) spec.order = index_value(*order, "order");
    if (const Json* coupling = optional_member(j, "coupling", "spec")) spec.coupling = rational_from_json(*coupling, "coupling");
    spec.validate();
    return spec;
}

Json to_json(const DSESolution& sol) {
    Json grades = Json::array();
    for (std::size_t n = 0; n < sol.coefficients.size(); ++n) grades.push_back(Json{{"grade", n}, {"sum", to_json(sol.coefficients[n])}});
    return Json{{"spec", to_json(sol.spec)}, {"coupling", to_json(sol.coupling)}, {"grades", grades}};
}

DSESolution solution_from_json(const Json& j) {
    if (j.is_object() && j.contains("solution")) return solution_from_json(j["solution"]);
    if (j.is_object() && j.contains("cocycles")) return solve(dse_spec_from_json(j));
    DSESolution sol;
    sol.spec = dse_spec_from_json(member(j, "spec", "solution"));
    sol.coupling = sol.spec.coupling;
    if (const Json* coupling = optional_member(j, "coupling", "solution")) sol.coupling = rational_from_json(*coupling, "solution.coupling");
    const Json& grades = array(member(j, "grades", "solution"), "solution.grades");
    for (std::size_t i = 0; i < grades.size(); ++i) {
        const auto w = at("solution.grades", i);
        if (index_value(member(grades[i], "grade", w), w + ".grade") != i)
            throw ValidationError(w + ": grades must run 0, 1, 2, ... in order");
        sol.coefficients.push_back(forest_sum_from_json(member(grades[i], "sum", w), w + ".sum"));
    }
    if (sol.coefficients.size() < 2) throw ValidationError("solution.grades: need X_0 and at least X_1");
    return sol;
}

Json to_json(const LaurentSeries& s) {
    int hi = s.precision();
    const bool exact = s.is_exact();
    if (exact) hi = s.terms().empty() ? s.lo() : std::max(s.lo(), s.terms().rbegin()->first);
    Json terms = Json::array();
    for (const auto& [k, c] : s.terms()) {
        Json coef = Json::array();
        for (const auto& [p, q] : c.terms()) coef.push_back(Json::array({to_json(q), p}));
        terms.push_back(Json{{"pow", k}, {"coef", coef}});
    }
    Json out{{"window", Json::array({s.lo(), hi})}, {"terms", terms}};
    if (exact) out["exact"] = true;
    return out;
}

LaurentSeries laurent_from_json(const Json& j, const std::string& where) {
    const auto [lo, hi] = window_from_json(member(j, "window", where), where + ".window");
    bool exact = false;
    if (const Json* e = optional_member(j, "exact", where)) {
        if (!e->is_boolean()) throw ValidationError(where + ".exact: expected a boolean");
        exact = e->get<bool>();
    }
    const int precision = exact ? LaurentSeries::kExact : hi;
    LaurentSeries out = LaurentSeries::monomial(lo, LPoly(), precision);
    const Json& terms = array(member(j, "terms", where), where + ".terms");
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto w = at(where + ".terms", i);
        const int k = int_value(member(terms[i], "pow", w), w + ".pow");
        if (k < lo || k > hi) throw ValidationError(w + ".pow: outside the window");
        const Json& coef = array(member(terms[i], "coef", w), w + ".coef");
        LPoly c;
        for (std::size_t t = 0; t < coef.size(); ++t) {
            const auto wt = at(w + ".coef", t);
            if (!coef[t].is_array() || coef[t].size() != 2) throw ValidationError(wt + ": expected [\"p/q\", L-power]");
            const int p = int_value(coef[t][1], wt + "[1]");
            if (p < 0) throw ValidationError(wt + "[1]: negative L-power");
            c += LPoly::monomial(rational_from_json(coef[t][0], wt + "[0]"), static_cast<unsigned>(p));
        }
        out += LaurentSeries::monomial(k, c, precision);
    }
    return out;
}

Json to_json(const ToyRules& rules) {
    Json residues = Json::object();
    for (const auto& [label, r] : rules.residues) residues[label] = to_json(r);
    return Json{{"scale", rules.scale ? to_json(*rules.scale) : Json(nullptr)},
                {"residues", residues},
                {"window", Json::array({rules.lo, rules.hi})}};
}

ToyRules toy_rules_from_json(const Json& j) {
    ToyRules rules;
    if (const Json* scale = optional_member(j, "scale", "rules")) rules.scale = rational_from_json(*scale, "rules.scale");
    if (const Json* residues = optional_member(j, "residues", "rules")) {
        if (!residues->is_object()) throw ValidationError("rules.residues: expected an object");
        for (const auto& [label, r] : residues->items()) rules.residues[label] = rational_from_json(r, "rules.residues." + label);
    }
    if (const Json* window = optional_member(j, "window", "rules")) {
        const auto [lo, hi] = window_from_json(*window, "rules.window");
        rules.lo = lo;
        rules.hi = hi;
    }
    return rules;
}

Json to_json(const StepGraphon& w) {
    Json measures = Json::array(), values = Json::array();
    for (const auto& m : w.measures()) measures.push_back(to_json(m));
    for (const auto& row : w.values()) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(to_json(v));
        values.push_back(r);
    }
    return Json{{"measures", measures}, {"values", values}};
}

StepGraphon step_graphon_from_json(const Json& j) {
    const Json& measures = array(member(j, "measures", "graphon"), "graphon.measures");
    const Json& values = array(member(j, "values", "graphon"), "graphon.values");
    std::vector<Rational> mu;
    for (std::size_t i = 0; i < measures.size(); ++i) mu.push_back(rational_from_json(measures[i], at("graphon.measures", i)));
    RationalMatrix w;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto wr = at("graphon.values", i);
        const Json& row = array(values[i], wr);
        w.emplace_back();
        for (std::size_t k = 0; k < row.size(); ++k) w.back().push_back(rational_from_json(row[k], at(wr, k)));
    }
    return StepGraphon(std::move(mu), std::move(w));
}

Json to_json(const DensityFingerprint& f) {
    Json out = Json::object();
    for (const auto& [g6, t] : f) out[g6] = to_json(t);
    return out;
}

Json to_json(const MultiGraph& g) {
    Json edges = Json::array();
    for (const auto& [u, v] : g.edges()) edges.push_back(Json::array({u, v}));
    Json out{{"n", g.vertex_count()}, {"edges", edges}};
    bool default_weights = true;
    for (std::size_t i = 0; i < g.edge_count(); ++i) default_weights = default_weights && g.weight(i) == i + 1;
    if (!default_weights) out["weights"] = g.weights();
    return out;
}

MultiGraph multigraph_from_json(const Json& j, const std::string& where) {
    const std::size_t n = index_value(member(j, "n", where), where + ".n");
    const Json& edges = array(member(j, "edges", where), where + ".edges");
    std::vector<Edge> e;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto w = at(where + ".edges", i);
        if (!edges[i].is_array() || edges[i].size() != 2) throw ValidationError(w + ": expected [u, v]");
        e.emplace_back(index_value(edges[i][0], w + "[0]"), index_value(edges[i][1], w + "[1]"));
    }
    if (const Json* weights = optional_member(j, "weights", where)) {
        array(*weights, where + ".weights");
        std::vector<std::size_t> w;
        for (std::size_t i = 0; i < weights->size(); ++i) w.push_back(index_value((*weights)[i], at(where + ".weights", i)));
        return MultiGraph(n, std::move(e), std::move(w));
    }
    return MultiGraph(n, std::move(e));
}

Json to_json(const MultiPoly& p) {
    Json out = Json::array();
    for (const auto& [m, c] : p.terms()) {
        Json exps = Json::object();
        for (const auto& [v, k] : m) exps[v] = k;
        out.push_back(Json{{"coef", to_json(c)}, {"exps", exps}});
    }
    return out;
}

MultiPoly multi_poly_from_json(const Json& j, const std::string& where) {
    array(j, where);
    MultiPoly out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto w = at(where, i);
        MultiPoly::Monomial m;
        if (const Json* exps = optional_member(j[i], "exps", w)) {
            if (!exps->is_object()) throw ValidationError(w + ".exps: expected an object");
            for (const auto& [v, k] : exps->items()) {
                const std::size_t e = index_value(k, w + ".exps." + v);
                if (e > 0) m[v] = static_cast<unsigned>(e);
            }
        }
        out.add(m, rational_from_json(member(j[i], "coef", w), w + ".coef"));
    }
    return out;
}

Json to_json(const CutNorm& c) { return Json{{"value", to_json(c.value)}, {"exact", c.exact}}; }

Json to_json(const CutDistance& d) {
    return Json{{"value", to_json(d.value)}, {"lower_bound", to_json(d.lower_bound)}, {"exact", d.exact},
                {"value_exact", d.value_exact}, {"certified", d.certified}, {"atoms", d.atoms}};
}

}  // namespace dysongraph
