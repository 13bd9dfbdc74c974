#pragma once

// The toy Feynman rules evaluated by their defining recursion
//     phi(B+_d(w)) = r_d * exp(-eps L) / ((|w| + 1) eps) * phi(w)
// with Laurent arithmetic, independent of the closed form used by the library.

#include "dysongraph/laurent.hpp"
#include "dysongraph/renorm.hpp"

namespace dysongraph::oracle {

/// exp(-eps * weight * L) through eps^precision.
inline LaurentSeries exp_minus_scale(long weight, int precision, const ToyRules& rules) {
    LaurentSeries out = LaurentSeries::zero(precision);
    Rational term = 1;
    for (int k = 0; k <= precision; ++k) {
        if (k > 0) term *= Rational(-weight) / Rational(k);
        LPoly c = rules.scale ? LPoly(term * rational_pow(*rules.scale, k)) : LPoly::monomial(term, static_cast<unsigned>(k));
        out += LaurentSeries::monomial(k, c, precision);
    }
    return out;
}

inline LaurentSeries phi_recursive(const ToyRules& rules, const RootedTree& t, int precision);

inline LaurentSeries phi_recursive(const ToyRules& rules, const Forest& f, int precision) {
    LaurentSeries acc(Rational(1));
    // each tree of grade g contributes poles down to -g; widen accordingly
    for (const auto& t : f.trees()) acc = acc * phi_recursive(rules, t, precision + static_cast<int>(f.grade()));
    return acc.truncated(precision);
}

inline LaurentSeries phi_recursive(const ToyRules& rules, const RootedTree& t, int precision) {
    const Forest below(t.children());
    const int inner = precision + static_cast<int>(t.size());
    LaurentSeries factor = exp_minus_scale(1, inner, rules) *
                           LaurentSeries::monomial(-1, LPoly(rules.residue(t.label()) / Rational(static_cast<long>(t.size()))));
    return (factor * phi_recursive(rules, below, inner)).truncated(precision);
}

}  // namespace dysongraph::oracle
