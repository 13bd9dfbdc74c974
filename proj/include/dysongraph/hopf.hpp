#pragma once

// Connes-Kreimer Hopf algebra on decorated rooted forests.
//
// Tensor factors follow the root-part-left convention:
//   Delta(t) = 1 (x) t + t (x) 1 + sum_c R_c(t) (x) P_c(t)
// where R_c keeps the original root and P_c is the pruned forest.

#include "dysongraph/laurent.hpp"
#include "dysongraph/trees.hpp"

#include <functional>
#include <map>
#include <memory>
#include <utility>
#include <variant>

namespace dysongraph {

class TensorSum {
public:
    using Key = std::pair<Forest, Forest>;
    using Terms = std::map<Key, Rational>;

    TensorSum() = default;
    TensorSum(const Forest& left, const Forest& right, const Rational& coef = 1);

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }
    Rational coefficient(const Forest& left, const Forest& right) const;

    void add(const Forest& left, const Forest& right, const Rational& coef);
    TensorSum& operator+=(const TensorSum& o);
    TensorSum& operator-=(const TensorSum& o);
    TensorSum& operator*=(const Rational& s);
    friend TensorSum operator+(TensorSum a, const TensorSum& b) { return a += b; }
    friend TensorSum operator-(TensorSum a, const TensorSum& b) { return a -= b; }
    /// Componentwise product in H (x) H.
    friend TensorSum operator*(const TensorSum& a, const TensorSum& b);
    friend bool operator==(const TensorSum& a, const TensorSum& b) { return a.terms_ == b.terms_; }

private:
    Terms terms_;
};

/// a (x) b for forest sums.
TensorSum tensor(const ForestSum& a, const ForestSum& b);

/// Applies f to the left factor and g to the right factor of every term.
TensorSum map_factors(const TensorSum& t, const std::function<ForestSum(const Forest&)>& left,
                      const std::function<ForestSum(const Forest&)>& right);

/// Swaps the tensor factors.
TensorSum flip(const TensorSum& t);

std::string to_string(const TensorSum& t);

// ---- structure maps -------------------------------------------------------

/// Admissible cuts of `tree` as (root part, pruned forest) -> multiplicity,
/// including the empty cut (tree, 1) but not the total cut (1, tree).
std::map<std::pair<RootedTree, Forest>, Integer> admissible_cuts(const RootedTree& tree);

TensorSum coproduct(const RootedTree& tree);
TensorSum coproduct(const Forest& forest);
TensorSum coproduct(const ForestSum& x);

/// Delta(x) - x (x) 1 - 1 (x) x on the augmentation ideal, extended linearly
/// (the unit component of x contributes nothing).
TensorSum reduced_coproduct(const ForestSum& x);

Rational counit(const ForestSum& x);

ForestSum antipode(const RootedTree& tree);
ForestSum antipode(const Forest& forest);
ForestSum antipode(const ForestSum& x);

/// Grafting operator B+_d: new d-decorated root above each forest, linear.
ForestSum graft(const Decoration& d, const ForestSum& x);

/// Multiplication H (x) H -> H.
ForestSum multiply(const TensorSum& t);

/// Drops memoized coproducts and antipodes.
void clear_hopf_caches();

// ---- characters -----------------------------------------------------------

enum class Target { scalar, laurent };

using CharValue = std::variant<Rational, LaurentSeries>;

CharValue unit_value(Target target);
CharValue zero_value(Target target);
CharValue add_values(const CharValue& a, const CharValue& b);
CharValue multiply_values(const CharValue& a, const CharValue& b);
CharValue scale_value(const CharValue& a, const Rational& s);
Target target_of(const CharValue& v);

/// Algebra morphism into a commutative target, given by its value on trees.
/// Tree values are memoized per character (thread-safe).
class Character {
public:
    using Rule = std::function<CharValue(const RootedTree&)>;

    Character(Target target, Rule rule);

    Target target() const noexcept { return target_; }
    CharValue operator()(const RootedTree& tree) const;
    CharValue operator()(const Forest& forest) const;
    CharValue operator()(const ForestSum& x) const;

    /// The counit as a character: 1 on the empty forest, 0 on every tree.
    static Character counit(Target target);

private:
    struct Memo;
    Target target_;
    Rule rule_;
    std::shared_ptr<Memo> memo_;
};

/// phi o S, again a character because H is commutative.
Character compose_antipode(const Character& phi);

/// (f * g)(x) = sum f(x') g(x'') over Delta(x). Throws MismatchError when
/// the targets differ.
CharValue convolve(const Character& f, const Character& g, const ForestSum& x);

}  // namespace dysongraph
