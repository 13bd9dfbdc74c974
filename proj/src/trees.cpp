#include "dysongraph/trees.hpp"

#include "dysongraph/errors.hpp"

#include <algorithm>
#include <functional>

namespace dysongraph {

Decoration::Decoration(std::string label) : label_(std::move(label)) {
    if (label_.empty()) throw ValidationError("decoration label must be nonempty");
}

RootedTree::RootedTree(const Decoration& root) : RootedTree(root, {}) {}

RootedTree::RootedTree(const Decoration& root, std::vector<RootedTree> children) {
    std::sort(children.begin(), children.end());
    std::size_t size = 1;
    std::string enc = "(" + std::to_string(root.label().size()) + ":" + root.label();
    for (const auto& c : children) {
        size += c.size();
        enc += c.encoding();
    }
    enc += ")";
    node_ = std::make_shared<const Node>(Node{root.label(), std::move(children), size, std::move(enc)});
}

RawTree RootedTree::to_raw() const {
    RawTree raw{label(), {}};
    raw.children.reserve(children().size());
    for (const auto& c : children()) raw.children.push_back(c.to_raw());
    return raw;
}

RootedTree canonicalize(const RawTree& tree) {
    std::vector<RootedTree> kids;
    kids.reserve(tree.children.size());
    for (const auto& c : tree.children) kids.push_back(canonicalize(c));
    return RootedTree(Decoration(tree.label), std::move(kids));
}

std::string to_string(const RootedTree& tree) {
    std::string out = tree.label();
    if (!tree.children().empty()) {
        out += "(";
        for (std::size_t i = 0; i < tree.children().size(); ++i) {
            if (i) out += ",";
            out += to_string(tree.children()[i]);
        }
        out += ")";
    }
    return out;
}

// ---- Forest ---------------------------------------------------------------

Forest::Forest(std::vector<RootedTree> trees) : trees_(std::move(trees)) {
    std::sort(trees_.begin(), trees_.end());
    for (const auto& t : trees_) grade_ += t.size();
}

Forest::Forest(RootedTree tree) : trees_{std::move(tree)} { grade_ = trees_.front().size(); }

std::size_t Forest::edge_count() const noexcept {
    std::size_t e = 0;
    for (const auto& t : trees_) e += t.edge_count();
    return e;
}

Forest operator*(const Forest& a, const Forest& b) {
    Forest out;
    out.trees_.reserve(a.trees_.size() + b.trees_.size());
    std::merge(a.trees_.begin(), a.trees_.end(), b.trees_.begin(), b.trees_.end(), std::back_inserter(out.trees_));
    out.grade_ = a.grade_ + b.grade_;
    return out;
}

std::strong_ordering operator<=>(const Forest& a, const Forest& b) {
    return std::lexicographical_compare_three_way(a.trees_.begin(), a.trees_.end(), b.trees_.begin(), b.trees_.end());
}

std::string to_string(const Forest& forest) {
    if (forest.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < forest.trees().size(); ++i) {
        if (i) out += " ";
        out += "[" + to_string(forest.trees()[i]) + "]";
    }
    return out;
}

// ---- ForestSum ------------------------------------------------------------

ForestSum::ForestSum(const Forest& forest, const Rational& coef) { add(forest, coef); }

ForestSum::ForestSum(const RootedTree& tree, const Rational& coef) { add(Forest(tree), coef); }

Rational ForestSum::coefficient(const Forest& forest) const {
    auto it = terms_.find(forest);
    return it == terms_.end() ? Rational(0) : it->second;
}

void ForestSum::add(const Forest& forest, const Rational& coef) {
    if (coef == 0) return;
    auto [it, inserted] = terms_.try_emplace(forest, coef);
    if (!inserted) {
        it->second += coef;
        if (it->second == 0) terms_.erase(it);
    }
}

ForestSum& ForestSum::operator+=(const ForestSum& other) {
    for (const auto& [f, c] : other.terms_) add(f, c);
    return *this;
}

ForestSum& ForestSum::operator-=(const ForestSum& other) {
    for (const auto& [f, c] : other.terms_) add(f, -c);
    return *this;
}

ForestSum& ForestSum::operator*=(const Rational& scalar) {
    if (scalar == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [f, c] : terms_) c *= scalar;
    return *this;
}

ForestSum operator*(const ForestSum& a, const ForestSum& b) {
    ForestSum out;
    for (const auto& [fa, ca] : a.terms_)
        for (const auto& [fb, cb] : b.terms_) out.add(fa * fb, ca * cb);
    return out;
}

ForestSum product(const ForestSum& x, const ForestSum& y) { return x * y; }

std::map<std::size_t, ForestSum> grade(const ForestSum& x) {
    std::map<std::size_t, ForestSum> parts;
    for (const auto& [f, c] : x.terms()) parts[f.grade()].add(f, c);
    return parts;
}

bool is_homogeneous(const ForestSum& x, std::size_t n) {
    return std::all_of(x.terms().begin(), x.terms().end(), [n](const auto& t) { return t.first.grade() == n; });
}

std::string to_string(const ForestSum& x) {
    if (x.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [f, c] : x.terms()) {
        if (!first) out += c < 0 ? " - " : " + ";
        else if (c < 0) out += "-";
        first = false;
        Rational mag = abs(c);
        if (mag != 1) out += to_string(mag) + "*";
        out += to_string(f);
    }
    return out;
}

// ---- enumeration ----------------------------------------------------------

std::vector<Forest> enumerate_forests(std::size_t n, std::span<const Decoration> labels) {
    if (n == 0) return {Forest{}};
    std::vector<RootedTree> pool;
    for (std::size_t s = 1; s <= n; ++s) {
        auto ts = enumerate_trees(s, labels);
        pool.insert(pool.end(), ts.begin(), ts.end());
    }
    std::vector<Forest> out;
    std::vector<RootedTree> current;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t remaining, std::size_t from) {
        if (remaining == 0) {
            out.emplace_back(current);
            return;
        }
        for (std::size_t i = from; i < pool.size(); ++i) {
            if (pool[i].size() > remaining) continue;
            current.push_back(pool[i]);
            rec(remaining - pool[i].size(), i);
            current.pop_back();
        }
    };
    rec(n, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<RootedTree> enumerate_trees(std::size_t n, std::span<const Decoration> labels) {
    if (n == 0) return {};
    std::vector<RootedTree> out;
    auto below = enumerate_forests(n - 1, labels);
    for (const auto& d : labels)
        for (const auto& f : below) out.emplace_back(d, f.trees());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

RootedTree ladder(std::size_t n, const Decoration& label) {
    if (n == 0) throw ValidationError("ladder needs at least one vertex");
    RootedTree t(label);
    for (std::size_t i = 1; i < n; ++i) t = RootedTree(label, {t});
    return t;
}

}  // namespace dysongraph
