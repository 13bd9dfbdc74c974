#pragma once

// Exact identity checks for the Hopf structure, shared by the unit and
// acceptance suites.

#include "dysongraph/hopf.hpp"

#include <map>
#include <tuple>

namespace dysongraph::checks {

using Triple = std::map<std::tuple<Forest, Forest, Forest>, Rational>;

inline void add_triple(Triple& t, const Forest& a, const Forest& b, const Forest& c, const Rational& v) {
    if (v == 0) return;
    auto& slot = t[{a, b, c}];
    slot += v;
    if (slot == 0) t.erase({a, b, c});
}

/// (Delta (x) id) Delta == (id (x) Delta) Delta
inline bool coassociative(const Forest& f) {
    Triple left, right;
    for (const auto held = coproduct(f); const auto& [k, c] : held.terms()) {
        for (const auto sub = coproduct(k.first); const auto& [k2, c2] : sub.terms()) add_triple(left, k2.first, k2.second, k.second, c * c2);
        for (const auto sub = coproduct(k.second); const auto& [k2, c2] : sub.terms()) add_triple(right, k.first, k2.first, k2.second, c * c2);
    }
    return left == right;
}

/// (eps (x) id) Delta == id == (id (x) eps) Delta
inline bool counit_axiom(const Forest& f) {
    ForestSum left, right;
    for (const auto held = coproduct(f); const auto& [k, c] : held.terms()) {
        if (k.first.empty()) left.add(k.second, c);
        if (k.second.empty()) right.add(k.first, c);
    }
    return left == ForestSum(f) && right == ForestSum(f);
}

/// m (S (x) id) Delta == eps 1 == m (id (x) S) Delta
inline bool antipode_axiom(const Forest& f) {
    ForestSum left, right;
    for (const auto held = coproduct(f); const auto& [k, c] : held.terms()) {
        left += antipode(k.first) * ForestSum(k.second) * c;
        right += ForestSum(k.first) * antipode(k.second) * c;
    }
    ForestSum expected = f.empty() ? ForestSum::unit() : ForestSum{};
    return left == expected && right == expected;
}

inline bool grade_compatible(const Forest& f) {
    for (const auto held = coproduct(f); const auto& [k, c] : held.terms())
        if (k.first.grade() + k.second.grade() != f.grade()) return false;
    return true;
}

/// Delta B+ == (B+ (x) id) Delta + 1 (x) B+, root part on the left.
inline bool cocycle_root_left(const Decoration& d, const ForestSum& x) {
    const ForestSum bx = graft(d, x);
    TensorSum rhs = map_factors(
        coproduct(x), [&](const Forest& f) { return graft(d, ForestSum(f)); }, [](const Forest& f) { return ForestSum(f); });
    rhs += tensor(ForestSum::unit(), bx);
    return coproduct(bx) == rhs;
}

/// Delta B+ == (id (x) B+) Delta + B+ (x) 1 with Delta in the opposite
/// (pruned-left) order, i.e. applied to the flipped coproduct.
inline bool cocycle_pruned_left(const Decoration& d, const ForestSum& x) {
    const ForestSum bx = graft(d, x);
    TensorSum rhs = map_factors(
        flip(coproduct(x)), [](const Forest& f) { return ForestSum(f); }, [&](const Forest& f) { return graft(d, ForestSum(f)); });
    rhs += tensor(bx, ForestSum::unit());
    return flip(coproduct(bx)) == rhs;
}

/// The pruned-left formula evaluated naively with the root-left coproduct.
inline bool cocycle_pruned_left_formula_in_root_left_order(const Decoration& d, const ForestSum& x) {
    const ForestSum bx = graft(d, x);
    TensorSum rhs = map_factors(
        coproduct(x), [](const Forest& f) { return ForestSum(f); }, [&](const Forest& f) { return graft(d, ForestSum(f)); });
    rhs += tensor(bx, ForestSum::unit());
    return coproduct(bx) == rhs;
}

}  // namespace dysongraph::checks
