#pragma once

// BPHZ renormalization of a toy regularized Feynman-rules character with
// minimal subtraction, and its Birkhoff factorization.
//
// The toy rule is
//     phi(1) = 1,  phi(B+_d(w)) = r_d * exp(-eps L) / ((|w| + 1) eps) * phi(w),
// extended multiplicatively, so that phi(l_n)|_{L=0} = 1 / (n! eps^n).

#include "dysongraph/dse.hpp"
#include "dysongraph/hopf.hpp"
#include "dysongraph/laurent.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace dysongraph {

struct ToyRules {
    /// Numeric scale L; nullopt keeps L symbolic.
    std::optional<Rational> scale;
    /// Residue per decoration label; unlisted decorations use 1.
    std::map<std::string, Rational> residues;
    /// Output window [lo, hi] in powers of eps.
    int lo = -8;
    int hi = 2;

    Rational residue(const std::string& label) const;
};

LaurentSeries toy_feynman_rules(const ToyRules& rules, const ForestSum& x);
LaurentSeries toy_feynman_rules(const ToyRules& rules, const Forest& x);

/// BPHZ machinery bound to one set of rules. Counterterms are memoized per
/// tree; results are deterministic, so sharing one instance across threads
/// is safe.
class Renormalizer {
public:
    explicit Renormalizer(ToyRules rules);

    const ToyRules& rules() const noexcept { return rules_; }

    /// phi(x) known through eps^precision.
    LaurentSeries phi(const Forest& x, int precision) const;
    LaurentSeries phi(const Forest& x) const { return phi(x, rules_.hi); }

    /// S_R(x) = -R(phi(x) + sum S_R(x') phi(x'')) over the reduced coproduct
    /// (root part on the left). Pure pole part, exact.
    LaurentSeries counterterm(const Forest& x) const;
    LaurentSeries counterterm(const ForestSum& x) const;

    /// (S_R * phi)(x); pole-free, truncated to the output window.
    LaurentSeries renormalized_value(const Forest& x) const;
    LaurentSeries renormalized_value(const ForestSum& x) const;

    /// The regularized character phi, with tree values known through
    /// eps^precision.
    Character feynman_character(int precision) const;
    /// phi_- = S_R.
    Character negative_character() const;
    /// phi_+ = phi_- * phi, tree values known through eps^precision.
    Character positive_character(int precision) const;

    /// Throws TruncationError naming the required lo when the window cannot
    /// hold a forest of this grade.
    void check_window(std::size_t grade) const;

private:
    LaurentSeries counterterm_tree(const RootedTree& t) const;
    LaurentSeries renormalized_tree(const RootedTree& t, int precision) const;

    struct Memo;
    ToyRules rules_;
    std::shared_ptr<Memo> memo_;
};

LaurentSeries counterterm(const ToyRules& rules, const Forest& x);
LaurentSeries renormalized_value(const ToyRules& rules, const Forest& x);

struct BirkhoffParts {
    LaurentSeries negative;  // phi_-(x), pole part only
    LaurentSeries positive;  // phi_+(x), regular
};

BirkhoffParts birkhoff(const ToyRules& rules, const ForestSum& x);

struct RenormalizedSolution {
    std::vector<LaurentSeries> renormalized;  // entry n-1 belongs to X_n
    std::vector<LaurentSeries> counterterms;
};

RenormalizedSolution renormalize_solution(const ToyRules& rules, const DSESolution& sol, std::size_t m);

}  // namespace dysongraph
