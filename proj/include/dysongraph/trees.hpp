#pragma once

// Decorated non-planar rooted trees, forests, and their formal linear
// combinations over the rationals.

#include "dysongraph/rational.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace dysongraph {

/// Label of a primitive cocycle decorating a vertex.
class Decoration {
public:
    explicit Decoration(std::string label);
    const std::string& label() const noexcept { return label_; }
    friend bool operator==(const Decoration&, const Decoration&) = default;
    friend auto operator<=>(const Decoration&, const Decoration&) = default;

private:
    std::string label_;
};

/// A rooted tree as supplied by a caller: child order is arbitrary.
struct RawTree {
    std::string label;
    std::vector<RawTree> children;
};

/// Canonical decorated rooted tree. Children are kept sorted by their
/// canonical encoding, so two trees compare equal iff they are isomorphic.
/// Copies share structure.
class RootedTree {
public:
    /// Single vertex.
    explicit RootedTree(const Decoration& root);
    RootedTree(const Decoration& root, std::vector<RootedTree> children);

    const std::string& label() const noexcept { return node_->label; }
    const std::vector<RootedTree>& children() const noexcept { return node_->children; }
    std::size_t size() const noexcept { return node_->size; }
    std::size_t edge_count() const noexcept { return node_->size - 1; }
    /// Length-prefixed recursive encoding; total order and exact equality.
    const std::string& encoding() const noexcept { return node_->encoding; }

    RawTree to_raw() const;

    friend bool operator==(const RootedTree& a, const RootedTree& b) {
        return a.node_ == b.node_ || a.encoding() == b.encoding();
    }
    friend std::strong_ordering operator<=>(const RootedTree& a, const RootedTree& b) {
        return a.encoding() <=> b.encoding();
    }

private:
    struct Node {
        std::string label;
        std::vector<RootedTree> children;
        std::size_t size;
        std::string encoding;
    };
    std::shared_ptr<const Node> node_;
};

RootedTree canonicalize(const RawTree& tree);

/// Human-readable nested form, e.g. "a(b,c(d))".
std::string to_string(const RootedTree& tree);

/// Commutative monomial of trees. The empty forest is the algebra unit.
class Forest {
public:
    Forest() = default;
    explicit Forest(std::vector<RootedTree> trees);
    explicit Forest(RootedTree tree);

    const std::vector<RootedTree>& trees() const noexcept { return trees_; }
    std::size_t grade() const noexcept { return grade_; }
    std::size_t edge_count() const noexcept;
    bool empty() const noexcept { return trees_.empty(); }

    friend Forest operator*(const Forest& a, const Forest& b);

    friend bool operator==(const Forest& a, const Forest& b) { return a.trees_ == b.trees_; }
    friend std::strong_ordering operator<=>(const Forest& a, const Forest& b);

private:
    std::vector<RootedTree> trees_;
    std::size_t grade_ = 0;
};

std::string to_string(const Forest& forest);

/// Finite rational linear combination of forests; zero coefficients are never stored.
class ForestSum {
public:
    using Terms = std::map<Forest, Rational>;

    ForestSum() = default;
    ForestSum(const Forest& forest, const Rational& coef = 1);
    ForestSum(const RootedTree& tree, const Rational& coef = 1);

    static ForestSum unit() { return ForestSum(Forest{}); }

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    Rational coefficient(const Forest& forest) const;
    std::size_t size() const noexcept { return terms_.size(); }

    void add(const Forest& forest, const Rational& coef);

    ForestSum& operator+=(const ForestSum& other);
    ForestSum& operator-=(const ForestSum& other);
    ForestSum& operator*=(const Rational& scalar);

    friend ForestSum operator+(ForestSum a, const ForestSum& b) { return a += b; }
    friend ForestSum operator-(ForestSum a, const ForestSum& b) { return a -= b; }
    friend ForestSum operator-(ForestSum a) { return a *= Rational(-1); }
    friend ForestSum operator*(ForestSum a, const Rational& s) { return a *= s; }
    friend ForestSum operator*(const Rational& s, ForestSum a) { return a *= s; }
    /// Bilinear concatenation product.
    friend ForestSum operator*(const ForestSum& a, const ForestSum& b);

    friend bool operator==(const ForestSum& a, const ForestSum& b) { return a.terms_ == b.terms_; }

private:
    Terms terms_;
};

ForestSum product(const ForestSum& x, const ForestSum& y);

/// Homogeneous components keyed by vertex count; summing them gives back x.
std::map<std::size_t, ForestSum> grade(const ForestSum& x);

bool is_homogeneous(const ForestSum& x, std::size_t n);

std::string to_string(const ForestSum& x);

/// All canonical trees with exactly n vertices, decorated from `labels`, sorted.
std::vector<RootedTree> enumerate_trees(std::size_t n, std::span<const Decoration> labels);

/// All forests of grade exactly n (n = 0 gives the empty forest), sorted.
std::vector<Forest> enumerate_forests(std::size_t n, std::span<const Decoration> labels);

/// Ladder (path rooted at one end) with n >= 1 vertices.
RootedTree ladder(std::size_t n, const Decoration& label);

}  // namespace dysongraph
