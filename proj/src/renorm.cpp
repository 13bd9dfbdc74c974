#include "dysongraph/renorm.hpp"

#include "dysongraph/errors.hpp"

#include <mutex>
#include <unordered_map>

namespace dysongraph {

Rational ToyRules::residue(const std::string& label) const {
    auto it = residues.find(label);
    return it == residues.end() ? Rational(1) : it->second;
}

namespace {

// prod over vertices v of r_{d(v)} / |subtree(v)|
Rational tree_weight(const ToyRules& rules, const RootedTree& t) {
    Rational w = rules.residue(t.label()) / Rational(static_cast<long>(t.size()));
    for (const auto& c : t.children()) w *= tree_weight(rules, c);
    return w;
}

}  // namespace

struct Renormalizer::Memo {
    std::mutex mutex;
    std::unordered_map<std::string, LaurentSeries> counterterms;
};

Renormalizer::Renormalizer(ToyRules rules) : rules_(std::move(rules)), memo_(std::make_shared<Memo>()) {
    if (rules_.hi < 0) throw ValidationError("window hi must be >= 0");
    if (rules_.lo > 0) throw ValidationError("window lo must be <= 0");
}

void Renormalizer::check_window(std::size_t grade) const {
    const int need = -static_cast<int>(grade);
    if (rules_.lo > need)
        throw TruncationError("window lo = " + std::to_string(rules_.lo) + " cannot hold poles of a grade-" +
                                  std::to_string(grade) + " forest; use lo <= " + std::to_string(need),
                              need);
}

// phi(x) = c * eps^{-N} * exp(-N eps L), c = prod_t tree_weight(t), N = |x|.
LaurentSeries Renormalizer::phi(const Forest& x, int precision) const {
    const int n = static_cast<int>(x.grade());
    if (n == 0) return LaurentSeries(Rational(1)).truncated(precision);
    Rational c = 1;
    for (const auto& t : x.trees()) c *= tree_weight(rules_, t);

    LaurentSeries out = LaurentSeries::zero(precision);
    Rational term = c;  // c (-N)^k / k!
    for (int k = 0; k - n <= precision; ++k) {
        if (k > 0) term *= Rational(-n) / Rational(k);
        LPoly coef = rules_.scale ? LPoly(term * rational_pow(*rules_.scale, k))
                                  : LPoly::monomial(term, static_cast<unsigned>(k));
        out += LaurentSeries::monomial(k - n, coef, precision);
    }
    return out;
}

LaurentSeries Renormalizer::counterterm_tree(const RootedTree& t) const {
    {
        std::lock_guard lock(memo_->mutex);
        auto it = memo_->counterterms.find(t.encoding());
        if (it != memo_->counterterms.end()) return it->second;
    }
    // S_R(x') has poles down to -|x'| <= -|t|, so phi to eps^{|t|} keeps
    // every product exact through eps^{-1}.
    const int precision = static_cast<int>(t.size());
    LaurentSeries prepared = phi(Forest(t), precision);
    for (const auto& [cut, mult] : admissible_cuts(t)) {
        if (cut.second.empty()) continue;
        LaurentSeries piece = counterterm(Forest(cut.first)) * phi(cut.second, precision);
        prepared += piece * Rational(mult);
    }
    LaurentSeries s = -prepared.pole_part();
    std::lock_guard lock(memo_->mutex);
    memo_->counterterms.insert_or_assign(t.encoding(), s);
    return s;
}

LaurentSeries Renormalizer::counterterm(const Forest& x) const {
    check_window(x.grade());
    LaurentSeries acc(Rational(1));
    for (const auto& t : x.trees()) acc = acc * counterterm_tree(t);
    return acc;
}

LaurentSeries Renormalizer::counterterm(const ForestSum& x) const {
    LaurentSeries acc;
    for (const auto& [f, c] : x.terms()) acc += counterterm(f) * c;
    return acc;
}

LaurentSeries Renormalizer::renormalized_tree(const RootedTree& t, int precision) const {
    const int inner = precision + static_cast<int>(t.size());
    LaurentSeries acc = phi(Forest(t), inner) + counterterm_tree(t);
    for (const auto& [cut, mult] : admissible_cuts(t)) {
        if (cut.second.empty()) continue;
        acc += counterterm(Forest(cut.first)) * phi(cut.second, inner) * Rational(mult);
    }
    acc = acc.truncated(precision);
    if (!acc.pole_free())
        throw InternalError("renormalized value of " + to_string(t) + " retains a pole: " + to_string(acc));
    return acc;
}

LaurentSeries Renormalizer::renormalized_value(const Forest& x) const {
    check_window(x.grade());
    const int inner = rules_.hi + static_cast<int>(x.grade());
    LaurentSeries acc = LaurentSeries::zero(inner);
    for (const auto held = coproduct(x); const auto& [k, c] : held.terms()) acc += counterterm(k.first) * phi(k.second, inner) * c;
    acc = acc.truncated(rules_.hi);
    if (!acc.pole_free())
        throw InternalError("renormalized value of " + to_string(x) + " retains a pole: " + to_string(acc));
    return acc;
}

LaurentSeries Renormalizer::renormalized_value(const ForestSum& x) const {
    LaurentSeries acc = LaurentSeries::zero(rules_.hi);
    for (const auto& [f, c] : x.terms()) acc += renormalized_value(f) * c;
    return acc;
}

Character Renormalizer::feynman_character(int precision) const {
    Renormalizer self = *this;
    return Character(Target::laurent, [self, precision](const RootedTree& t) -> CharValue {
        return self.phi(Forest(t), precision);
    });
}

Character Renormalizer::negative_character() const {
    Renormalizer self = *this;
    return Character(Target::laurent, [self](const RootedTree& t) -> CharValue { return self.counterterm_tree(t); });
}

Character Renormalizer::positive_character(int precision) const {
    Renormalizer self = *this;
    return Character(Target::laurent,
                     [self, precision](const RootedTree& t) -> CharValue { return self.renormalized_tree(t, precision); });
}

// ---- free functions -------------------------------------------------------

LaurentSeries toy_feynman_rules(const ToyRules& rules, const Forest& x) {
    Renormalizer r(rules);
    r.check_window(x.grade());
    return r.phi(x);
}

LaurentSeries toy_feynman_rules(const ToyRules& rules, const ForestSum& x) {
    Renormalizer r(rules);
    LaurentSeries acc = LaurentSeries::zero(rules.hi);
    for (const auto& [f, c] : x.terms()) {
        r.check_window(f.grade());
        acc += r.phi(f) * c;
    }
    return acc;
}

LaurentSeries counterterm(const ToyRules& rules, const Forest& x) { return Renormalizer(rules).counterterm(x); }

LaurentSeries renormalized_value(const ToyRules& rules, const Forest& x) {
    return Renormalizer(rules).renormalized_value(x);
}

BirkhoffParts birkhoff(const ToyRules& rules, const ForestSum& x) {
    Renormalizer r(rules);
    return {r.counterterm(x), r.renormalized_value(x)};
}

RenormalizedSolution renormalize_solution(const ToyRules& rules, const DSESolution& sol, std::size_t m) {
    if (m > sol.order())
        throw TruncationError("renormalization order " + std::to_string(m) + " exceeds truncation order " +
                              std::to_string(sol.order()));
    Renormalizer r(rules);
    RenormalizedSolution out;
    for (std::size_t n = 1; n <= m; ++n) {
        out.renormalized.push_back(r.renormalized_value(sol[n]));
        out.counterterms.push_back(r.counterterm(sol[n]));
    }
    return out;
}

}  // namespace dysongraph
