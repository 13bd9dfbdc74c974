#pragma once

// Dense exact linear algebra over the rationals.

#include "dysongraph/rational.hpp"

#include <optional>
#include <vector>

namespace dysongraph {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Some solution of A x = b (free variables set to zero), or nullopt when
/// the system is inconsistent.
std::optional<std::vector<Rational>> solve_linear(RationalMatrix a, std::vector<Rational> b);

Rational determinant(RationalMatrix a);

std::size_t rank(RationalMatrix a);

}  // namespace dysongraph
