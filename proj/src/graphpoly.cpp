#include "dysongraph/graphpoly.hpp"

#include "dysongraph/errors.hpp"
#include "dysongraph/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_map>

namespace dysongraph {

// ---------------------------------------------------------------- polynomials

MultiPoly::MultiPoly(const Rational& constant) {
    if (constant != 0) terms_.emplace(Monomial{}, constant);
}

MultiPoly MultiPoly::variable(const std::string& name, unsigned power) {
    if (name.empty()) throw ValidationError("variable names must be nonempty");
    return monomial(power == 0 ? Monomial{} : Monomial{{name, power}});
}

MultiPoly MultiPoly::monomial(const Monomial& m, const Rational& coef) {
    MultiPoly p;
    p.add(m, coef);
    return p;
}

Rational MultiPoly::coefficient(const Monomial& m) const {
    const auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add(const Monomial& m, const Rational& coef) {
    if (coef == 0) return;
    for (const auto& [v, e] : m)
        if (e == 0) throw ValidationError("monomial exponents must be positive (variable " + v + ")");
    auto [it, inserted] = terms_.try_emplace(m, coef);
    if (!inserted) {
        it->second += coef;
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
    for (const auto& [m, c] : other.terms_) add(m, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
    for (const auto& [m, c] : other.terms_) add(m, -c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& other) { return *this = *this * other; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            MultiPoly::Monomial m = ma;
            for (const auto& [v, e] : mb) m[v] += e;
            out.add(m, ca * cb);
        }
    return out;
}

MultiPoly MultiPoly::pow(unsigned k) const {
    MultiPoly result(1), base = *this;
    while (k > 0) {
        if (k & 1u) result *= base;
        k >>= 1;
        if (k > 0) base *= base;
    }
    return result;
}

Rational MultiPoly::evaluate(const std::map<std::string, Rational>& values) const {
    Rational total = 0;
    for (const auto& [m, c] : terms_) {
        Rational term = c;
        for (const auto& [v, e] : m) {
            const auto it = values.find(v);
            if (it == values.end()) throw ValidationError("no value for variable " + v);
            term *= rational_pow(it->second, static_cast<long>(e));
        }
        total += term;
    }
    return total;
}

MultiPoly MultiPoly::substitute(const std::string& var, const Rational& value) const {
    MultiPoly out;
    for (const auto& [m, c] : terms_) {
        Monomial rest = m;
        Rational coef = c;
        if (const auto it = rest.find(var); it != rest.end()) {
            coef *= rational_pow(value, static_cast<long>(it->second));
            rest.erase(it);
        }
        out.add(rest, coef);
    }
    return out;
}

MultiPoly MultiPoly::derivative(const std::string& var) const {
    MultiPoly out;
    for (const auto& [m, c] : terms_) {
        const auto it = m.find(var);
        if (it == m.end()) continue;
        Monomial rest = m;
        const unsigned e = it->second;
        if (e == 1)
            rest.erase(var);
        else
            rest[var] = e - 1;
        out.add(rest, c * Rational(e));
    }
    return out;
}

std::vector<unsigned> MultiPoly::degrees() const {
    std::vector<unsigned> out;
    for (const auto& [m, c] : terms_) {
        unsigned d = 0;
        for (const auto& [v, e] : m) d += e;
        out.push_back(d);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::string> MultiPoly::variables() const {
    std::vector<std::string> out;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m) out.push_back(v);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

unsigned total_degree(const MultiPoly::Monomial& m) {
    unsigned d = 0;
    for (const auto& [v, e] : m) d += e;
    return d;
}

// Variables compared as w2 < w10.
bool variable_less(const std::string& a, const std::string& b) {
    auto split = [](const std::string& s) {
        std::size_t i = s.size();
        while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) --i;
        return std::pair{s.substr(0, i), s.substr(i)};
    };
    const auto [pa, na] = split(a);
    const auto [pb, nb] = split(b);
    if (pa != pb) return pa < pb;
    if (na.size() != nb.size()) return na.size() < nb.size();
    return na < nb;
}

}  // namespace

std::string to_string(const MultiPoly& p) {
    if (p.is_zero()) return "0";
    auto vars = p.variables();
    std::sort(vars.begin(), vars.end(), variable_less);
    std::vector<std::pair<MultiPoly::Monomial, Rational>> terms(p.terms().begin(), p.terms().end());
    // graded lexicographic, leading terms first
    std::sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
        const unsigned da = total_degree(a.first), db = total_degree(b.first);
        if (da != db) return da > db;
        for (const auto& v : vars) {
            const auto ia = a.first.find(v), ib = b.first.find(v);
            const unsigned ea = ia == a.first.end() ? 0 : ia->second, eb = ib == b.first.end() ? 0 : ib->second;
            if (ea != eb) return ea > eb;
        }
        return false;
    });
    std::string out;
    for (const auto& [m, c] : terms) {
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        std::vector<std::string> factors;
        if (mag != 1 || m.empty()) factors.push_back(to_string(mag));
        std::vector<std::string> names;
        for (const auto& [v, e] : m) names.push_back(v);
        std::sort(names.begin(), names.end(), variable_less);
        for (const auto& v : names) factors.push_back(m.at(v) == 1 ? v : v + "^" + std::to_string(m.at(v)));
        for (std::size_t i = 0; i < factors.size(); ++i) out += (i ? "*" : "") + factors[i];
    }
    return out;
}

// ---------------------------------------------------------------- multigraphs

MultiGraph::MultiGraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    weights_.resize(edges_.size());
    std::iota(weights_.begin(), weights_.end(), std::size_t{1});
    for (const auto& [u, v] : edges_)
        if (u >= n_ || v >= n_)
            throw ValidationError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") references a vertex outside 0.." +
                                  std::to_string(n_ == 0 ? 0 : n_ - 1));
}

MultiGraph::MultiGraph(std::size_t n, std::vector<Edge> edges, std::vector<std::size_t> weights)
    : MultiGraph(n, std::move(edges)) {
    if (weights.size() != edges_.size())
        throw ValidationError("got " + std::to_string(weights.size()) + " edge weights for " + std::to_string(edges_.size()) + " edges");
    weights_ = std::move(weights);
}

const Edge& MultiGraph::edge(std::size_t i) const {
    if (i >= edges_.size()) throw ValidationError("edge index " + std::to_string(i) + " out of range");
    return edges_[i];
}

std::size_t MultiGraph::weight(std::size_t i) const {
    edge(i);
    return weights_[i];
}

std::string MultiGraph::weight_variable(std::size_t i) const { return "w" + std::to_string(weight(i)); }

bool MultiGraph::is_loop(std::size_t i) const { return edge(i).first == edge(i).second; }

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    std::size_t sets;
    explicit UnionFind(std::size_t n) : parent(n), sets(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        --sets;
        return true;
    }
};

}  // namespace

bool MultiGraph::is_bridge(std::size_t i) const {
    if (is_loop(i)) return false;
    UnionFind uf(n_);
    for (std::size_t j = 0; j < edges_.size(); ++j)
        if (j != i) uf.unite(edges_[j].first, edges_[j].second);
    return uf.find(edges_[i].first) != uf.find(edges_[i].second);
}

std::size_t MultiGraph::component_count() const {
    UnionFind uf(n_);
    for (const auto& [u, v] : edges_) uf.unite(u, v);
    return uf.sets;
}

std::vector<std::size_t> MultiGraph::component_of() const {
    UnionFind uf(n_);
    for (const auto& [u, v] : edges_) uf.unite(u, v);
    std::vector<std::size_t> label(n_), id(n_, n_);
    std::size_t next = 0;
    for (std::size_t v = 0; v < n_; ++v) {
        const std::size_t r = uf.find(v);
        if (id[r] == n_) id[r] = next++;
        label[v] = id[r];
    }
    return label;
}

std::size_t MultiGraph::rank(const std::vector<bool>& subset) const {
    if (subset.size() != edges_.size()) throw ValidationError("edge subset has the wrong length");
    UnionFind uf(n_);
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (subset[i]) uf.unite(edges_[i].first, edges_[i].second);
    return n_ - uf.sets;
}

std::size_t MultiGraph::nullity(const std::vector<bool>& subset) const {
    return static_cast<std::size_t>(std::count(subset.begin(), subset.end(), true)) - rank(subset);
}

std::size_t MultiGraph::loop_number() const { return edges_.size() + component_count() - n_; }

MultiGraph MultiGraph::delete_edge(std::size_t i) const {
    edge(i);
    auto edges = edges_;
    auto weights = weights_;
    edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(i));
    weights.erase(weights.begin() + static_cast<std::ptrdiff_t>(i));
    return MultiGraph(n_, std::move(edges), std::move(weights));
}

MultiGraph MultiGraph::contract_edge(std::size_t i) const {
    if (is_loop(i)) throw ValidationError("cannot contract the self-loop " + std::to_string(i));
    const std::size_t keep = std::min(edges_[i].first, edges_[i].second);
    const std::size_t gone = std::max(edges_[i].first, edges_[i].second);
    auto relabel = [&](std::size_t v) { return v == gone ? keep : v > gone ? v - 1 : v; };
    std::vector<Edge> edges;
    std::vector<std::size_t> weights;
    for (std::size_t j = 0; j < edges_.size(); ++j) {
        if (j == i) continue;
        edges.emplace_back(relabel(edges_[j].first), relabel(edges_[j].second));
        weights.push_back(weights_[j]);
    }
    return MultiGraph(n_ - 1, std::move(edges), std::move(weights));
}

MultiGraph to_multigraph(const SimpleGraph& g) { return MultiGraph(g.vertex_count(), g.edges()); }

MultiGraph forest_graph(const Forest& f) {
    std::vector<Edge> edges;
    std::size_t next = 0;
    std::function<void(const RootedTree&, std::size_t, bool)> place = [&](const RootedTree& t, std::size_t parent, bool has_parent) {
        const std::size_t self = next++;
        if (has_parent) edges.emplace_back(parent, self);
        for (const auto& c : t.children()) place(c, self, true);
    };
    for (const auto& t : f.trees()) place(t, 0, false);
    return MultiGraph(next, std::move(edges));
}

MultiGraph disjoint_union(const MultiGraph& a, const MultiGraph& b) {
    auto edges = a.edges();
    auto weights = a.weights();
    const std::size_t shift = weights.empty() ? 0 : *std::max_element(weights.begin(), weights.end());
    for (std::size_t i = 0; i < b.edge_count(); ++i) {
        edges.emplace_back(b.edges()[i].first + a.vertex_count(), b.edges()[i].second + a.vertex_count());
        weights.push_back(b.weights()[i] + shift);
    }
    return MultiGraph(a.vertex_count() + b.vertex_count(), std::move(edges), std::move(weights));
}

// ---------------------------------------------------------------- canonical form

namespace {

using Counts = std::vector<std::vector<unsigned>>;

Counts multiplicities(const MultiGraph& g) {
    Counts a(g.vertex_count(), std::vector<unsigned>(g.vertex_count(), 0));
    for (const auto& [u, v] : g.edges()) {
        ++a[u][v];
        if (u != v) ++a[v][u];
    }
    return a;
}

// Iterated colour refinement; colours are ranks of sorted signatures, so the
// result does not depend on vertex names.
std::vector<std::size_t> refine(const Counts& a, std::vector<std::size_t> colour) {
    const std::size_t n = a.size();
    std::size_t cells = std::set<std::size_t>(colour.begin(), colour.end()).size();
    while (true) {
        std::vector<std::vector<std::size_t>> sig(n);
        for (std::size_t v = 0; v < n; ++v) {
            std::vector<std::pair<std::size_t, unsigned>> nb;
            for (std::size_t u = 0; u < n; ++u)
                if (u != v && a[v][u]) nb.emplace_back(colour[u], a[v][u]);
            std::sort(nb.begin(), nb.end());
            sig[v] = {colour[v], a[v][v]};
            for (const auto& [c, m] : nb) {
                sig[v].push_back(c);
                sig[v].push_back(m);
            }
        }
        auto sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (std::size_t v = 0; v < n; ++v)
            colour[v] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
        if (sorted.size() == cells) return colour;
        cells = sorted.size();
    }
}

void search(const Counts& a, const std::vector<std::size_t>& colour, std::vector<unsigned>& best) {
    const std::size_t n = a.size();
    std::vector<std::size_t> size(n, 0);
    for (std::size_t c : colour) ++size[c];
    std::size_t target = n;
    for (std::size_t c = 0; c < n; ++c)
        if (size[c] > 1 && (target == n || size[c] < size[target])) target = c;
    if (target == n) {
        std::vector<std::size_t> at(n);
        for (std::size_t v = 0; v < n; ++v) at[colour[v]] = v;
        std::vector<unsigned> cert;
        cert.reserve(n * (n + 1) / 2);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) cert.push_back(a[at[i]][at[j]]);
        if (best.empty() || cert > best) best = std::move(cert);
        return;
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (colour[v] != target) continue;
        std::vector<std::size_t> split(n);
        for (std::size_t u = 0; u < n; ++u) split[u] = 2 * colour[u] + (colour[u] == target && u != v ? 1 : 0);
        search(a, refine(a, std::move(split)), best);
    }
}

}  // namespace

std::string canonical_certificate(const MultiGraph& g) {
    const std::size_t n = g.vertex_count();
    std::string out = std::to_string(n) + ":";
    if (n == 0) return out;
    const Counts a = multiplicities(g);
    std::vector<unsigned> best;
    search(a, refine(a, std::vector<std::size_t>(n, 0)), best);
    for (std::size_t i = 0; i < best.size(); ++i) out += (i ? "," : "") + std::to_string(best[i]);
    return out;
}

// ---------------------------------------------------------------- tutte

namespace {

class TutteSolver {
public:
    MultiPoly run(const MultiGraph& g) {
        // self-loops factor out as y each
        std::vector<Edge> kept;
        unsigned loops = 0;
        for (std::size_t i = 0; i < g.edge_count(); ++i) {
            if (g.is_loop(i))
                ++loops;
            else
                kept.push_back(g.edges()[i]);
        }
        MultiPoly factor = MultiPoly::variable("y", loops);
        if (kept.empty()) return factor;
        const MultiGraph h(g.vertex_count(), std::move(kept));

        // one factor per component with edges, isolated vertices dropped
        const auto comp = h.component_of();
        const std::size_t k = *std::max_element(comp.begin(), comp.end()) + 1;
        std::vector<std::vector<Edge>> parts(k);
        std::vector<std::size_t> index(h.vertex_count()), members(k, 0);
        for (std::size_t v = 0; v < h.vertex_count(); ++v) index[v] = members[comp[v]]++;
        for (const auto& [u, v] : h.edges()) parts[comp[u]].emplace_back(index[u], index[v]);
        for (std::size_t c = 0; c < k; ++c)
            if (!parts[c].empty()) factor *= connected(MultiGraph(members[c], std::move(parts[c])));
        return factor;
    }

private:
    // connected and loopless
    MultiPoly connected(const MultiGraph& g) {
        const std::string key = canonical_certificate(g);
        if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
        MultiPoly out;
        std::size_t bridge = g.edge_count();
        for (std::size_t i = g.edge_count(); i-- > 0;)
            if (g.is_bridge(i)) {
                bridge = i;
                break;
            }
        if (bridge < g.edge_count()) {
            out = MultiPoly::variable("x") * run(g.contract_edge(bridge));
        } else {
            const std::size_t e = g.edge_count() - 1;
            out = run(g.delete_edge(e)) + run(g.contract_edge(e));
        }
        memo_.emplace(key, out);
        return out;
    }

    std::unordered_map<std::string, MultiPoly> memo_;
};

MultiPoly binomial_power(const std::string& var, unsigned k) {
    return (MultiPoly::variable(var) - MultiPoly(1)).pow(k);
}

}  // namespace

MultiPoly tutte(const MultiGraph& g, std::size_t max_edges) {
    if (g.edge_count() > max_edges)
        throw SizeError("Tutte deletion/contraction is limited to " + std::to_string(max_edges) + " edges (got " +
                        std::to_string(g.edge_count()) + "); sample the rank-nullity expansion instead");
    TutteSolver solver;
    return solver.run(g);
}

MultiPoly tutte_rank_nullity(const MultiGraph& g, std::size_t max_edges) {
    const std::size_t m = g.edge_count();
    if (m > max_edges)
        throw SizeError("rank-nullity enumeration is limited to " + std::to_string(max_edges) + " edges (got " + std::to_string(m) + ")");
    const std::size_t n = g.vertex_count();
    const std::size_t full_rank = n - g.component_count();
    std::map<std::pair<unsigned, unsigned>, unsigned long> counts;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        UnionFind uf(n);
        unsigned size = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (mask >> i & 1u) {
                uf.unite(g.edges()[i].first, g.edges()[i].second);
                ++size;
            }
        const std::size_t r = n - uf.sets;
        ++counts[{static_cast<unsigned>(full_rank - r), static_cast<unsigned>(size - r)}];
    }
    MultiPoly out;
    for (const auto& [ij, c] : counts)
        out += MultiPoly(Rational(c)) * binomial_power("x", ij.first) * binomial_power("y", ij.second);
    return out;
}

MultiPoly tutte_of_partial_sum(const DSESolution& sol, std::size_t m) {
    if (m > sol.order()) throw TruncationError("partial sum " + std::to_string(m) + " exceeds truncation order " + std::to_string(sol.order()));
    MultiPoly out(1);
    for (std::size_t k = 1; k <= m; ++k)
        for (const auto& [f, c] : sol[k].terms()) {
            if (c < 0 || c.get_den() != 1)
                throw UnsupportedError("Tutte polynomials of partial sums need nonnegative integer coefficients, got " + to_string(c) +
                                       " on " + to_string(f));
            out *= tutte(forest_graph(f)).pow(static_cast<unsigned>(c.get_num().get_ui()));
        }
    return out;
}

TreeFormulaDiagnostic tree_formula_diagnostic(const RootedTree& t) {
    // (edges, childless vertices) -> number of subtrees rooted at a node
    using Profile = std::map<std::pair<unsigned, unsigned>, Integer>;
    std::function<Profile(const RootedTree&)> rooted = [&](const RootedTree& node) {
        Profile acc{{{0, 0}, 1}};
        for (const auto& child : node.children()) {
            const Profile sub = rooted(child);
            Profile next = acc;
            for (const auto& [a, ca] : acc)
                for (const auto& [b, cb] : sub) next[{a.first + b.first + 1, a.second + b.second}] += ca * cb;
            acc = std::move(next);
        }
        Profile out;
        for (const auto& [el, c] : acc) out[{el.first, el.first == 0 ? 1 : el.second}] += c;
        return out;
    };
    TreeFormulaDiagnostic d;
    const MultiPoly y1 = MultiPoly::variable("y") + MultiPoly(1);
    for (const auto& [el, c] : rooted(t)) {
        const unsigned edges = el.first;
        const unsigned leaves = edges == 0 ? 0 : el.second;  // the root is never a leaf
        d.formula += MultiPoly(Rational(c)) * MultiPoly::variable("x", edges) * y1.pow(edges - leaves);
    }
    d.tutte = tutte(forest_graph(Forest(t)));
    d.agrees = d.formula == d.tutte;
    return d;
}

// ---------------------------------------------------------------- symanzik

std::vector<std::vector<std::size_t>> spanning_forests(const MultiGraph& g) {
    const std::size_t m = g.edge_count();
    if (m > kSymanzikMaxEdges)
        throw SizeError("spanning forest enumeration is limited to " + std::to_string(kSymanzikMaxEdges) + " edges (got " +
                        std::to_string(m) + ")");
    const std::size_t target = g.vertex_count() - g.component_count();
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t, const UnionFind&)> walk = [&](std::size_t i, const UnionFind& uf) {
        if (chosen.size() == target) {
            out.push_back(chosen);
            return;
        }
        if (i == m || m - i < target - chosen.size()) return;
        const auto& [u, v] = g.edges()[i];
        UnionFind with = uf;
        if (with.unite(u, v)) {
            chosen.push_back(i);
            walk(i + 1, with);
            chosen.pop_back();
        }
        walk(i + 1, uf);
    };
    walk(0, UnionFind(g.vertex_count()));
    return out;
}

MultiPoly symanzik_psi(const MultiGraph& g, std::vector<std::string>* notices) {
    if (notices && g.component_count() > 1)
        notices->push_back("graph has " + std::to_string(g.component_count()) +
                           " components; Psi is the product over components (spanning forests)");
    MultiPoly out;
    for (const auto& forest : spanning_forests(g)) {
        MultiPoly::Monomial m;
        std::size_t next = 0;
        for (std::size_t i = 0; i < g.edge_count(); ++i) {
            if (next < forest.size() && forest[next] == i) {
                ++next;
                continue;
            }
            ++m[g.weight_variable(i)];
        }
        out.add(m, 1);
    }
    return out;
}

namespace {

std::vector<std::size_t> bfs_forest(const MultiGraph& g) {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(g.vertex_count());
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const auto& [u, v] = g.edges()[i];
        if (u == v) continue;
        adj[u].emplace_back(v, i);
        adj[v].emplace_back(u, i);
    }
    std::vector<bool> seen(g.vertex_count(), false);
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < g.vertex_count(); ++s) {
        if (seen[s]) continue;
        seen[s] = true;
        std::vector<std::size_t> queue{s};
        for (std::size_t h = 0; h < queue.size(); ++h)
            for (const auto& [w, i] : adj[queue[h]])
                if (!seen[w]) {
                    seen[w] = true;
                    out.push_back(i);
                    queue.push_back(w);
                }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

Rational symanzik_det(const MultiGraph& g, const std::vector<Rational>& w) { return symanzik_det(g, w, bfs_forest(g)); }

Rational symanzik_det(const MultiGraph& g, const std::vector<Rational>& w, const std::vector<std::size_t>& forest_edges) {
    const std::size_t m = g.edge_count(), n = g.vertex_count();
    if (w.size() != m) throw ValidationError("got " + std::to_string(w.size()) + " weights for " + std::to_string(m) + " edges");
    std::vector<bool> in_forest(m, false);
    UnionFind uf(n);
    for (std::size_t i : forest_edges) {
        if (i >= m || in_forest[i]) throw ValidationError("spanning forest edge list has a bad or repeated index");
        in_forest[i] = true;
        if (!uf.unite(g.edges()[i].first, g.edges()[i].second)) throw ValidationError("spanning forest edges contain a cycle");
    }
    if (uf.sets != g.component_count()) throw ValidationError("edge set does not span every component");

    // forest adjacency: (neighbour, edge, +1 if traversed along the edge's orientation)
    std::vector<std::vector<std::tuple<std::size_t, std::size_t, int>>> adj(n);
    for (std::size_t i : forest_edges) {
        const auto& [u, v] = g.edges()[i];
        adj[u].emplace_back(v, i, 1);
        adj[v].emplace_back(u, i, -1);
    }
    // eta[k][i]: fundamental cycle k runs along the chord, then back through the forest
    std::vector<std::vector<int>> eta;
    for (std::size_t c = 0; c < m; ++c) {
        if (in_forest[c]) continue;
        std::vector<int> row(m, 0);
        row[c] = 1;
        const auto [a, b] = g.edges()[c];
        if (a != b) {
            std::vector<std::size_t> prev(n, n), via(n, m);
            std::vector<int> dir(n, 0);
            std::vector<std::size_t> queue{b};
            prev[b] = b;
            for (std::size_t h = 0; h < queue.size() && prev[a] == n; ++h)
                for (const auto& [x, i, s] : adj[queue[h]])
                    if (prev[x] == n) {
                        prev[x] = queue[h];
                        via[x] = i;
                        dir[x] = s;
                        queue.push_back(x);
                    }
            for (std::size_t x = a; x != b; x = prev[x]) row[via[x]] = dir[x];
        }
        eta.push_back(std::move(row));
    }
    const std::size_t l = eta.size();
    RationalMatrix mat(l, std::vector<Rational>(l, 0));
    for (std::size_t k = 0; k < l; ++k)
        for (std::size_t r = k; r < l; ++r) {
            Rational s = 0;
            for (std::size_t i = 0; i < m; ++i)
                if (eta[k][i] && eta[r][i]) s += w[i] * (eta[k][i] * eta[r][i]);
            mat[k][r] = mat[r][k] = s;
        }
    return determinant(std::move(mat));
}

PsiSplit psi_deletion_contraction(const MultiGraph& g, std::size_t e) {
    g.edge(e);
    const MultiPoly psi = symanzik_psi(g);
    PsiSplit out;
    if (g.is_loop(e)) {
        out.degenerate = true;
        out.f = symanzik_psi(g.delete_edge(e));
    } else if (g.is_bridge(e)) {
        out.degenerate = true;
        out.g = psi;
    } else {
        out.f = symanzik_psi(g.delete_edge(e));
        out.g = symanzik_psi(g.contract_edge(e));
    }
    if (MultiPoly::variable(g.weight_variable(e)) * out.f + out.g != psi)
        throw InternalError("Psi = w_e F + G fails on edge " + std::to_string(e));
    return out;
}

Integer spanning_tree_count(const MultiGraph& g, std::vector<std::string>* notices) {
    if (!g.is_connected()) {
        if (notices) notices->push_back("graph is disconnected; it has no spanning tree");
        return 0;
    }
    const std::size_t n = g.vertex_count();
    if (n <= 1) return 1;
    RationalMatrix lap(n - 1, std::vector<Rational>(n - 1, 0));
    for (const auto& [u, v] : g.edges()) {
        if (u == v) continue;
        if (u > 0) lap[u - 1][u - 1] += 1;
        if (v > 0) lap[v - 1][v - 1] += 1;
        if (u > 0 && v > 0) {
            lap[u - 1][v - 1] -= 1;
            lap[v - 1][u - 1] -= 1;
        }
    }
    const Rational det = determinant(std::move(lap));
    if (det.get_den() != 1) throw InternalError("matrix-tree determinant is not an integer");
    return det.get_num();
}

}  // namespace dysongraph
