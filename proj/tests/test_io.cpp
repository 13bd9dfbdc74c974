#include "doctest.h"

#include "dysongraph/errors.hpp"
#include "dysongraph/io.hpp"
#include "test_support.hpp"

#include <string>

using namespace dysongraph;
using namespace dysongraph::testing;

TEST_CASE("malformed JSON reports its position") {
    try {
        parse_json(R"({"a": [1, 2,, 3]})");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        const std::string what = e.what();
        // the second comma is the 13th byte
        CHECK(what.find("byte 13") != std::string::npos);
        CHECK(what.find("line 1, column 13") != std::string::npos);
    }
    try {
        parse_json("{\n  \"a\": tru\n}");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(read_json_file("/nonexistent/spec.json"), ValidationError);
}

TEST_CASE("rationals") {
    CHECK(rational_from_json(Json("-3/6")) == make_rational(-1, 2));
    CHECK(rational_from_json(Json(7)) == 7);
    CHECK(to_json(make_rational(2, 4)) == Json("1/2"));
    CHECK_THROWS_AS(rational_from_json(Json(0.5)), ValidationError);
    CHECK_THROWS_AS(rational_from_json(Json("1/0")), ParseError);
}

TEST_CASE("trees ignore child order") {
    const auto a = tree_from_json(parse_json(R"({"d":"a","c":[{"d":"b"},{"d":"c","c":[{"d":"d"}]}]})"));
    const auto b = tree_from_json(parse_json(R"({"d":"a","c":[{"d":"c","c":[{"d":"d"}]},{"d":"b","c":[]}]})"));
    CHECK(a == b);
    CHECK(a.size() == 4);
    CHECK(tree_from_json(to_json(a)) == a);
    CHECK_THROWS_AS(tree_from_json(parse_json(R"({"c":[]})")), ValidationError);
}

TEST_CASE("forest sums, tensors and solutions round-trip") {
    const auto sol = solve(single_cocycle_spec(5));
    for (const auto& x : sol.coefficients) CHECK(forest_sum_from_json(to_json(x)) == x);
    const ForestSum x = sum(l3(), 3) + sum(forest({dot(), l2()}), -1) * make_rational(1, 2);
    const auto j = to_json(x);
    CHECK(j.size() == 2);
    CHECK(forest_sum_from_json(j) == x);
    const auto t = coproduct(x);
    CHECK(tensor_sum_from_json(to_json(t)) == t);

    const auto back = solution_from_json(to_json(sol));
    CHECK(back.coefficients == sol.coefficients);
    CHECK(back.coupling == sol.coupling);
    // a bare spec is solved on the spot
    CHECK(solution_from_json(to_json(sol.spec)).coefficients == sol.coefficients);
    CHECK(solution_from_json(Json{{"solution", to_json(sol)}}).coefficients == sol.coefficients);
}

TEST_CASE("DSE specs") {
    const auto spec = dse_spec_from_json(parse_json(R"({"cocycles":[{"decoration":"g1","omega":"1"}],"order":6,"coupling":"1"})"));
    CHECK(spec.order == 6);
    CHECK(spec.cocycles.size() == 1);
    CHECK(spec.cocycles[0].decoration.label() == "g1");
    const auto defaults = dse_spec_from_json(parse_json(R"({"cocycles":[{"decoration":"a"},{"decoration":"b","omega":"-2/3"}]})"));
    CHECK(defaults.order == 6);
    CHECK(defaults.coupling == 1);
    CHECK(defaults.cocycles[1].omega == make_rational(-2, 3));
    CHECK(dse_spec_from_json(to_json(defaults)).cocycles[1].omega == make_rational(-2, 3));
    CHECK_THROWS_AS(dse_spec_from_json(parse_json(R"({"cocycles":[{"decoration":"g1"}],"order":0})")), ValidationError);
    CHECK_THROWS_AS(dse_spec_from_json(parse_json(R"({"order":3})")), ValidationError);
    CHECK_THROWS_AS(dse_spec_from_json(parse_json(R"({"cocycles":[{"decoration":"g1","omega":"x"}]})")), ParseError);
    CHECK_THROWS_AS(dse_spec_from_json(parse_json(R"({"cocycles":[{"decoration":"g1"}],"order":-1})")), ValidationError);
}

TEST_CASE("Laurent series and rules") {
    const auto j = parse_json(R"({"window":[-2,1],"terms":[{"pow":-2,"coef":[["1/2",0]]},{"pow":0,"coef":[["-1",1],["3",2]]}]})");
    const auto s = laurent_from_json(j);
    CHECK(s.precision() == 1);
    CHECK(s.coefficient(-2) == LPoly(make_rational(1, 2)));
    CHECK(s.coefficient(0) == LPoly::monomial(-1, 1) + LPoly::monomial(3, 2));
    CHECK(s.coefficient(1).is_zero());
    CHECK_THROWS_AS(s.coefficient(2), TruncationError);
    CHECK(laurent_from_json(to_json(s)) == s);

    const ToyRules rules;
    const auto ct = counterterm(rules, Forest(l2()));
    CHECK(ct.is_exact());
    CHECK(laurent_from_json(to_json(ct)) == ct);
    const auto value = renormalized_value(rules, Forest(l3()));
    CHECK(laurent_from_json(to_json(value)) == value);
    CHECK_THROWS_AS(laurent_from_json(parse_json(R"({"window":[0,1],"terms":[{"pow":3,"coef":[]}]})")), ValidationError);

    const auto r = toy_rules_from_json(parse_json(R"({"scale":"2","residues":{"g1":"1/3"},"window":[-5,1]})"));
    CHECK(r.scale == Rational(2));
    CHECK(r.residue("g1") == make_rational(1, 3));
    CHECK(r.lo == -5);
    CHECK(r.hi == 1);
    const auto d = toy_rules_from_json(Json::object());
    CHECK_FALSE(d.scale.has_value());
    const auto back = toy_rules_from_json(to_json(r));
    CHECK(back.scale == r.scale);
    CHECK(back.residues == r.residues);
    CHECK_THROWS_AS(toy_rules_from_json(parse_json(R"({"window":[2,1]})")), ValidationError);
}

TEST_CASE("graphons, graphs and polynomials") {
    const auto w = step_graphon_from_json(parse_json(R"({"measures":["1/3","1/3","1/3"],"values":[["0","1","0"],["1","0","1"],["0","1","0"]]})"));
    CHECK(w.blocks() == 3);
    CHECK(w.integral() == make_rational(4, 9));
    CHECK(step_graphon_from_json(to_json(w)) == w);
    CHECK_THROWS_AS(step_graphon_from_json(parse_json(R"({"measures":["1/2","1/2"],"values":[["0","1"],["0","0"]]})")),
                    ValidationError);

    const auto g = multigraph_from_json(parse_json(R"({"n":3,"edges":[[0,1],[1,2],[0,2]]})"));
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 3);
    CHECK(multigraph_from_json(to_json(g)) == g);
    CHECK_FALSE(to_json(g).contains("weights"));
    const MultiGraph weighted(2, {{0, 1}, {1, 1}}, {4, 9});
    CHECK(multigraph_from_json(to_json(weighted)) == weighted);
    CHECK_THROWS_AS(multigraph_from_json(parse_json(R"({"n":2,"edges":[[0,5]]})")), ValidationError);
    CHECK_THROWS_AS(multigraph_from_json(parse_json(R"({"n":2,"edges":[[0]]})")), ValidationError);

    const auto p = multi_poly_from_json(parse_json(R"([{"coef":"1","exps":{"x":2}},{"coef":"-1/2","exps":{}},{"coef":"3","exps":{"x":1,"y":1}}])"));
    CHECK(to_string(p) == "x^2 + 3*x*y - 1/2");
    CHECK(multi_poly_from_json(to_json(p)) == p);
    CHECK(multi_poly_from_json(to_json(tutte(g))) == tutte(g));
}
