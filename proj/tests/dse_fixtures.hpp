#pragma once

// DSE specs and frozen regression values shared by the unit and acceptance suites.

#include "dysongraph/dse.hpp"
#include "test_support.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace dysongraph::fixtures {

inline DSESpec two_cocycle_spec(std::size_t order, long omega1 = 1, long omega2 = 1) {
    DSESpec spec;
    spec.cocycles = {{testing::deco_a(), Rational(omega1)}, {testing::deco_b(), Rational(omega2)}};
    spec.order = order;
    return spec;
}

using FrozenWitness = std::map<std::pair<std::string, std::string>, std::string>;

inline FrozenWitness frozen(const SubalgebraWitness& w) {
    FrozenWitness out;
    for (const auto& [k, c] : w.decomposition) out[{to_string(k.first), to_string(k.second)}] = to_string(c);
    return out;
}

// Delta(X_n) in the generators, root part on the left
inline const std::vector<FrozenWitness> expected_witnesses{
    {},
    {{{"1", "X1"}, "1"}, {{"X1", "1"}, "1"}},
    {{{"1", "X2"}, "1"}, {{"X2", "1"}, "1"}, {{"X1", "X1"}, "2"}},
    {{{"1", "X3"}, "1"}, {{"X3", "1"}, "1"}, {{"X2", "X1"}, "3"}, {{"X1", "X2"}, "2"}, {{"X1", "X1^2"}, "1"}},
    {{{"1", "X4"}, "1"},
     {{"X4", "1"}, "1"},
     {{"X3", "X1"}, "4"},
     {{"X2", "X2"}, "3"},
     {{"X2", "X1^2"}, "3"},
     {{"X1", "X3"}, "2"},
     {{"X1", "X1*X2"}, "2"}},
};

}  // namespace dysongraph::fixtures
