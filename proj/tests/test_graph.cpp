#include "doctest.h"

#include "dysongraph/errors.hpp"
#include "dysongraph/graph.hpp"
#include "graphon_oracle.hpp"

#include <numeric>
#include <random>

using namespace dysongraph;

TEST_CASE("simple graph validation and storage") {
    SimpleGraph g(3, {{2, 0}, {1, 2}});
    CHECK(g.edges() == std::vector<Edge>{{0, 2}, {1, 2}});
    CHECK(g.adjacent(2, 0));
    CHECK_FALSE(g.adjacent(0, 1));
    CHECK(g.degrees() == std::vector<std::size_t>{1, 1, 2});
    CHECK_THROWS_AS(SimpleGraph(2, {{0, 0}}), ValidationError);
    CHECK_THROWS_AS(SimpleGraph(2, {{0, 1}, {1, 0}}), ValidationError);
    CHECK_THROWS_AS(SimpleGraph(2, {{0, 2}}), ValidationError);
    CHECK(SimpleGraph(4, {{0, 1}, {2, 3}}).components().size() == 2);
    CHECK(path_graph(4).is_forest());
    CHECK_FALSE(cycle_graph(4).is_forest());
    CHECK(complete_graph(4).edge_count() == 6);
}

TEST_CASE("graph6 encoding") {
    CHECK(to_graph6(SimpleGraph(0)) == "?");
    CHECK(to_graph6(SimpleGraph(1)) == "@");
    CHECK(to_graph6(complete_graph(2)) == "A_");
    CHECK(to_graph6(complete_graph(3)) == "Bw");
    CHECK(to_graph6(complete_graph(4)) == "C~");
    CHECK(to_graph6(path_graph(3)) == "Bg");  // bits 1 0 1 padded: 101000
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        SimpleGraph g = oracle::random_graph(rng, 1 + i % 12, 0.4);
        CHECK(from_graph6(to_graph6(g)) == g);
    }
    SimpleGraph big = oracle::random_graph(rng, 70, 0.1);
    CHECK(from_graph6(to_graph6(big)) == big);
    CHECK_THROWS_AS(from_graph6(""), ParseError);
    CHECK_THROWS_AS(from_graph6("Bw~"), ParseError);
    CHECK_THROWS_AS(from_graph6("B "), ParseError);
}

TEST_CASE("canonical form is a complete invariant on small graphs") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 1 + i % 7;
        SimpleGraph g = oracle::random_graph(rng, n, 0.5);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(canonical_form(relabel(g, perm)) == canonical_form(g));
        CHECK(isomorphic(g, relabel(g, perm)));
    }
    // same degree sequence, not isomorphic
    CHECK_FALSE(isomorphic(cycle_graph(6), disjoint_union(cycle_graph(3), cycle_graph(3))));
    CHECK_FALSE(isomorphic(SimpleGraph(4, {{0, 1}, {1, 2}, {2, 3}}), SimpleGraph(4, {{0, 1}, {0, 2}, {0, 3}})));
    CHECK_THROWS_AS(canonical_form(SimpleGraph(11)), SizeError);
}

TEST_CASE("connected graphs by edge count") {
    // connected graphs with e edges: 1, 1, 1, 3, 5, 12 for e = 0..5
    const std::vector<std::size_t> expected{1, 1, 1, 3, 5, 12};
    const auto all = connected_graphs(5);
    std::vector<std::size_t> counts(6, 0);
    for (const auto& g : all) {
        CHECK(g.is_connected());
        CHECK(canonical_form(g) == g);
        ++counts.at(g.edge_count());
    }
    CHECK(counts == expected);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) CHECK_FALSE(isomorphic(all[i], all[j]));
}
