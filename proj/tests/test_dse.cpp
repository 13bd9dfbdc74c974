#include "doctest.h"

#include "dse_fixtures.hpp"
#include "dse_oracle.hpp"
#include "dysongraph/dse.hpp"
#include "dysongraph/errors.hpp"
#include "test_support.hpp"

using namespace dysongraph;
using namespace dysongraph::testing;
using namespace dysongraph::fixtures;

TEST_CASE("single-cocycle coefficients") {
    const auto sol = solve(single_cocycle_spec(3));
    REQUIRE(sol.order() == 3);
    CHECK(sol[0] == ForestSum::unit());
    CHECK(sol[1] == sum(dot()));
    CHECK(sol[2] == sum(l2(), 2));
    CHECK(sol[3] == sum(l3(), 4) + sum(cherry()));
}

TEST_CASE("spec validation") {
    DSESpec spec = single_cocycle_spec(3);
    spec.order = 0;
    CHECK_THROWS_AS(solve(spec), ValidationError);
    spec = single_cocycle_spec(3);
    spec.cocycles.front().omega = 0;
    CHECK_THROWS_AS(solve(spec), ValidationError);
    spec.cocycles.clear();
    CHECK_THROWS_AS(solve(spec), ValidationError);
    spec = single_cocycle_spec(3);
    spec.cocycles.push_back(spec.cocycles.front());
    CHECK_THROWS_AS(solve(spec), ValidationError);
    spec = single_cocycle_spec(3);
    spec.coupling = Rational(3, 2);
    CHECK_THROWS_AS(solve(spec), ValidationError);
}

TEST_CASE("solver agrees with fixed-point expansion") {
    for (std::size_t order = 1; order <= 5; ++order) {
        for (const DSESpec& spec : {single_cocycle_spec(order), two_cocycle_spec(order), two_cocycle_spec(order, 2, -3)}) {
            const auto sol = solve(spec);
            const auto expected = oracle::fixed_point_expansion(spec);
            for (std::size_t n = 0; n <= order; ++n) CHECK(sol[n] == expected[n]);
        }
    }
}

TEST_CASE("coefficients are homogeneous; single-cocycle coefficients are nonnegative integers") {
    const auto sol = solve(single_cocycle_spec(6));
    for (std::size_t n = 0; n <= 6; ++n) {
        CHECK(is_homogeneous(sol[n], n));
        for (const auto& [f, c] : sol[n].terms()) {
            CHECK(c > 0);
            CHECK(c.get_den() == 1);
            CHECK(f.trees().size() <= 1);
        }
    }
    // with two cocycles a g2 vertex carries loop number 2: homogeneous in loop
    // grade, not in vertex count
    const DSESpec two_spec = two_cocycle_spec(5);
    const auto two = solve(two_spec);
    for (std::size_t n = 0; n <= 5; ++n) CHECK(is_loop_homogeneous(two_spec, two[n], n));
    CHECK_FALSE(is_homogeneous(two[3], 3));
    for (std::size_t n = 0; n <= 6; ++n) CHECK(is_loop_homogeneous(sol.spec, sol[n], n));
    // X_n for the single cocycle sums to the Catalan-like count of plane
    // binary insertions: 1, 1, 2, 5, 14, 42, 132 (sum of coefficients)
    const std::vector<long> catalan{1, 1, 2, 5, 14, 42, 132};
    for (std::size_t n = 0; n <= 6; ++n) {
        Rational total = 0;
        for (const auto& [f, c] : sol[n].terms()) total += c;
        CHECK(total == catalan[n]);
    }
}

TEST_CASE("partial sums") {
    auto sol = solve(single_cocycle_spec(3));
    CHECK(partial_sum(sol, 1) == sum(dot()));
    CHECK(partial_sum(sol, 2) == sum(dot()) + sum(l2(), 2));
    CHECK(partial_sum(sol, 0).is_zero());
    CHECK_THROWS_AS(partial_sum(sol, 4), TruncationError);
    sol = rescale(sol, Rational(1, 2));
    CHECK(partial_sum(sol, 2) == sum(dot()) * Rational(1, 2) + sum(l2()) * Rational(1, 2));
    CHECK(partial_sum_unscaled(sol, 2) == sum(dot()) + sum(l2(), 2));
}

TEST_CASE("rescaling") {
    const auto sol = solve(single_cocycle_spec(3));
    CHECK(rescale(sol, 1).coupling == sol.coupling);
    CHECK(rescale(rescale(sol, Rational(1, 2)), Rational(1, 2)).coupling == rescale(sol, Rational(1, 4)).coupling);
    CHECK(rescale(sol, Rational(1, 3)).coefficients == sol.coefficients);
    CHECK_THROWS_AS(rescale(sol, 0), DomainError);
    CHECK_THROWS_AS(rescale(sol, Rational(5, 4)), DomainError);
    // lambda_n = n/(n+1) gives couplings increasing toward 1
    Rational previous = 0;
    for (long n = 1; n <= 6; ++n) {
        Rational c = rescale(sol, Rational(n, n + 1)).coupling;
        CHECK(c > previous);
        CHECK(c < 1);
        previous = c;
    }
}

TEST_CASE("monomials in the generators") {
    CHECK(monomials_of_grade(0, 3).size() == 1);
    CHECK(monomials_of_grade(4, 4).size() == 5);  // partitions of 4
    CHECK(monomials_of_grade(4, 2).size() == 3);  // 2+2, 2+1+1, 1+1+1+1
    CHECK(to_string(XMonomial{{2, 0, 1}}) == "X1^2*X3");
}

TEST_CASE("subalgebra witnesses match frozen decompositions") {
    for (const DSESpec& spec : {single_cocycle_spec(4), two_cocycle_spec(4)}) {
        const auto sol = solve(spec);
        for (std::size_t n = 1; n <= 4; ++n) {
            CAPTURE(n);
            const auto w = subalgebra_witness(sol, n);
            REQUIRE(w.certified);
            CHECK(w.failure.empty());
            CHECK(frozen(w) == expected_witnesses[n]);
        }
    }
    CHECK_THROWS_AS(subalgebra_witness(solve(single_cocycle_spec(2)), 3), TruncationError);
}

TEST_CASE("subalgebra membership for other cocycle weights") {
    const std::vector<std::pair<long, long>> weights{{2, -3}, {-1, 4}, {3, 3}};
    for (const auto& [w1, w2] : weights) {
        const auto sol = solve(two_cocycle_spec(4, w1, w2));
        bool same_constants = true;
        for (std::size_t n = 1; n <= 4; ++n) {
            const auto w = subalgebra_witness(sol, n);
            CHECK(w.certified);
            same_constants = same_constants && frozen(w) == expected_witnesses[n];
        }
        MESSAGE("omega = (" << w1 << ", " << w2 << "): structure constants "
                            << std::string(same_constants ? "coincide with" : "differ from") << " the unit-weight spec");
    }
}
