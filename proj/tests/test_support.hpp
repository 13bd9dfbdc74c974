#pragma once

// Shared fixtures for the test suites.

#include "dysongraph/trees.hpp"

#include <random>
#include <vector>

namespace dysongraph::testing {

inline const Decoration& deco_a() {
    static const Decoration d("g1");
    return d;
}

inline const Decoration& deco_b() {
    static const Decoration d("g2");
    return d;
}

inline RootedTree dot(const Decoration& d = deco_a()) { return RootedTree(d); }
inline RootedTree l2(const Decoration& d = deco_a()) { return ladder(2, d); }
inline RootedTree l3(const Decoration& d = deco_a()) { return ladder(3, d); }
/// Root with two leaf children.
inline RootedTree cherry(const Decoration& d = deco_a()) { return RootedTree(d, {dot(d), dot(d)}); }

inline Forest forest(std::vector<RootedTree> ts) { return Forest(std::move(ts)); }
inline ForestSum sum(const RootedTree& t, long c = 1) { return ForestSum(t, Rational(c)); }
inline ForestSum sum(const Forest& f, long c = 1) { return ForestSum(f, Rational(c)); }

/// All forests of grade <= max_grade over the given labels.
inline std::vector<Forest> forests_up_to(std::size_t max_grade, const std::vector<Decoration>& labels) {
    std::vector<Forest> out;
    for (std::size_t n = 0; n <= max_grade; ++n) {
        auto fs = enumerate_forests(n, labels);
        out.insert(out.end(), fs.begin(), fs.end());
    }
    return out;
}

inline Rational small_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

/// Random combination of up to `terms` forests drawn from `pool`.
inline ForestSum random_sum(std::mt19937_64& rng, const std::vector<Forest>& pool, int terms = 3) {
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> count(1, terms);
    ForestSum out;
    for (int i = count(rng); i > 0; --i) out.add(pool[pick(rng)], small_rational(rng));
    return out;
}

}  // namespace dysongraph::testing
