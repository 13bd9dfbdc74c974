#pragma once

// Combinatorial Dyson-Schwinger equations
//     X = 1 + sum_j (lambda g)^j omega_j B+_{gamma_j}(X^{j+1})
// solved order by order in the coupling.

#include "dysongraph/hopf.hpp"
#include "dysongraph/trees.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace dysongraph {

struct Cocycle {
    Decoration decoration;
    Rational omega = 1;
};

/// The j-th cocycle (1-based) inserts into X^{j+1}.
struct DSESpec {
    std::vector<Cocycle> cocycles;
    std::size_t order = 6;
    Rational coupling = 1;

    /// Throws ValidationError unless there is at least one cocycle, every
    /// weight is nonzero, decorations are distinct, order >= 1 and coupling
    /// lies in (0, 1].
    void validate() const;

    /// Loop number carried by a vertex: j for the decoration of the j-th
    /// cocycle, 1 for any other label.
    std::size_t loop_weight(const Decoration& d) const;
};

/// Sum of loop weights over all vertices. For a single cocycle this is the
/// vertex count.
std::size_t loop_grade(const DSESpec& spec, const Forest& f);

/// Every term has loop grade n.
bool is_loop_homogeneous(const DSESpec& spec, const ForestSum& x, std::size_t n);

/// Single cocycle with weight one: X = 1 + g B+(X^2).
DSESpec single_cocycle_spec(std::size_t order = 6, const std::string& label = "g1");

struct DSESolution {
    std::vector<ForestSum> coefficients;  // X_0 .. X_N
    Rational coupling = 1;
    DSESpec spec;

    std::size_t order() const noexcept { return coefficients.empty() ? 0 : coefficients.size() - 1; }
    const ForestSum& operator[](std::size_t n) const { return coefficients.at(n); }
};

DSESolution solve(const DSESpec& spec);

/// sum_{n=1}^m (lambda g)^n X_n. Throws TruncationError if m exceeds the order.
ForestSum partial_sum(const DSESolution& sol, std::size_t m);

/// sum_{n=1}^m X_n, the coupling-free forest content of the m-th partial sum.
ForestSum partial_sum_unscaled(const DSESolution& sol, std::size_t m);

/// Same coefficients at coupling lambda * coupling; lambda must lie in (0, 1].
DSESolution rescale(const DSESolution& sol, const Rational& lambda);

/// Monomial in the generators X_1..X_n: exponents[i] is the power of X_{i+1}.
struct XMonomial {
    std::vector<unsigned> exponents;
    std::size_t grade() const;
    friend auto operator<=>(const XMonomial&, const XMonomial&) = default;
};

std::string to_string(const XMonomial& m);

/// Delta(X_n) written in A (x) A, A the polynomial algebra on X_0..X_n.
struct SubalgebraWitness {
    std::size_t n = 0;
    bool certified = false;
    /// (left monomial, right monomial) -> coefficient; present only when certified.
    std::map<std::pair<XMonomial, XMonomial>, Rational> decomposition;
    /// Number of unknowns and equations of the exact linear system.
    std::size_t unknowns = 0;
    std::size_t equations = 0;
    std::string failure;
};

SubalgebraWitness subalgebra_witness(const DSESolution& sol, std::size_t n);

/// Evaluates a monomial in the X's as a ForestSum.
ForestSum evaluate_monomial(const DSESolution& sol, const XMonomial& m);

/// All monomials of total grade exactly `grade` in X_1..X_n.
std::vector<XMonomial> monomials_of_grade(std::size_t grade, std::size_t n);

}  // namespace dysongraph
