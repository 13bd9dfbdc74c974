#include "dysongraph/graph.hpp"

#include "dysongraph/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

namespace dysongraph {

SimpleGraph::SimpleGraph(std::size_t n, std::vector<Edge> edges) : n_(n) {
    for (auto& [u, v] : edges) {
        if (u >= n || v >= n)
            throw ValidationError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") references a vertex outside 0.." +
                                  std::to_string(n == 0 ? 0 : n - 1));
        if (u == v) throw ValidationError("simple graphs have no self-loops (vertex " + std::to_string(u) + ")");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw ValidationError("simple graphs have no repeated edges");
    edges_ = std::move(edges);
}

bool SimpleGraph::adjacent(std::size_t u, std::size_t v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
}

std::vector<std::vector<std::size_t>> SimpleGraph::adjacency_lists() const {
    std::vector<std::vector<std::size_t>> adj(n_);
    for (const auto& [u, v] : edges_) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
}

std::vector<std::size_t> SimpleGraph::degrees() const {
    std::vector<std::size_t> d(n_, 0);
    for (const auto& [u, v] : edges_) ++d[u], ++d[v];
    return d;
}

std::vector<std::vector<std::size_t>> SimpleGraph::components() const {
    const auto adj = adjacency_lists();
    std::vector<bool> seen(n_, false);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t s = 0; s < n_; ++s) {
        if (seen[s]) continue;
        std::vector<std::size_t> comp{s}, stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t w : adj[v])
                if (!seen[w]) {
                    seen[w] = true;
                    comp.push_back(w);
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

bool SimpleGraph::is_connected() const { return n_ > 0 && components().size() == 1; }

bool SimpleGraph::is_forest() const { return edges_.size() + components().size() == n_; }

SimpleGraph complete_graph(std::size_t n) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return SimpleGraph(n, std::move(e));
}

SimpleGraph path_graph(std::size_t n) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return SimpleGraph(n, std::move(e));
}

SimpleGraph cycle_graph(std::size_t n) {
    if (n < 3) throw ValidationError("a simple cycle needs at least 3 vertices");
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return SimpleGraph(n, std::move(e));
}

SimpleGraph disjoint_union(const SimpleGraph& a, const SimpleGraph& b) {
    std::vector<Edge> e = a.edges();
    for (const auto& [u, v] : b.edges()) e.emplace_back(u + a.vertex_count(), v + a.vertex_count());
    return SimpleGraph(a.vertex_count() + b.vertex_count(), std::move(e));
}

SimpleGraph relabel(const SimpleGraph& g, const std::vector<std::size_t>& perm) {
    if (perm.size() != g.vertex_count()) throw ValidationError("relabeling has the wrong length");
    std::vector<Edge> e;
    for (const auto& [u, v] : g.edges()) e.emplace_back(perm[u], perm[v]);
    return SimpleGraph(g.vertex_count(), std::move(e));
}

SimpleGraph induced_subgraph(const SimpleGraph& g, const std::vector<std::size_t>& vertices) {
    std::vector<std::size_t> index(g.vertex_count(), g.vertex_count());
    for (std::size_t i = 0; i < vertices.size(); ++i) index.at(vertices[i]) = i;
    std::vector<Edge> e;
    for (const auto& [u, v] : g.edges())
        if (index[u] < g.vertex_count() && index[v] < g.vertex_count()) e.emplace_back(index[u], index[v]);
    return SimpleGraph(vertices.size(), std::move(e));
}

namespace {

// Colour refinement with colours numbered by sorted signature, so the final
// colouring is isomorphism invariant.
std::vector<std::size_t> refined_colours(const SimpleGraph& g) {
    const auto adj = g.adjacency_lists();
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> colour(n, 0);
    std::size_t classes = n == 0 ? 0 : 1;
    while (true) {
        std::vector<std::pair<std::size_t, std::vector<std::size_t>>> sig(n);
        for (std::size_t v = 0; v < n; ++v) {
            sig[v].first = colour[v];
            for (std::size_t w : adj[v]) sig[v].second.push_back(colour[w]);
            std::sort(sig[v].second.begin(), sig[v].second.end());
        }
        std::vector<std::pair<std::size_t, std::vector<std::size_t>>> sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (std::size_t v = 0; v < n; ++v)
            colour[v] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
        if (sorted.size() == classes) break;
        classes = sorted.size();
    }
    return colour;
}

std::vector<bool> adjacency_string(const SimpleGraph& g, const std::vector<std::size_t>& order) {
    const std::size_t n = order.size();
    std::vector<bool> bits;
    bits.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) bits.push_back(g.adjacent(order[i], order[j]));
    return bits;
}

}  // namespace

SimpleGraph canonical_form(const SimpleGraph& g) {
    const std::size_t n = g.vertex_count();
    if (n > 10) throw SizeError("canonical form is limited to 10 vertices");
    const auto colour = refined_colours(g);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return colour[a] < colour[b]; });

    // cells are maximal runs of equal colour; search all orderings inside cells
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && colour[order[j]] == colour[order[i]]) ++j;
        cells.emplace_back(i, j);
        i = j;
    }
    std::vector<std::size_t> best = order;
    std::vector<bool> best_bits = adjacency_string(g, order);
    std::vector<std::size_t> current = order;
    auto search = [&](auto&& self, std::size_t cell) -> void {
        if (cell == cells.size()) {
            auto bits = adjacency_string(g, current);
            if (bits > best_bits) {
                best_bits = std::move(bits);
                best = current;
            }
            return;
        }
        auto first = current.begin() + static_cast<std::ptrdiff_t>(cells[cell].first);
        auto last = current.begin() + static_cast<std::ptrdiff_t>(cells[cell].second);
        std::sort(first, last);
        do {
            self(self, cell + 1);
        } while (std::next_permutation(first, last));
    };
    search(search, 0);

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[best[i]] = i;
    return relabel(g, perm);
}

bool isomorphic(const SimpleGraph& a, const SimpleGraph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    return canonical_form(a) == canonical_form(b);
}

std::string to_graph6(const SimpleGraph& g) {
    const std::size_t n = g.vertex_count();
    std::string out;
    if (n < 63) {
        out.push_back(static_cast<char>(n + 63));
    } else if (n < 258048) {
        out.push_back(126);
        for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
    } else {
        throw SizeError("graph6 encoding supports fewer than 258048 vertices");
    }
    unsigned acc = 0;
    int filled = 0;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.adjacent(i, j) ? 1u : 0u);
            if (++filled == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = 0;
                filled = 0;
            }
        }
    if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
    return out;
}

SimpleGraph from_graph6(const std::string& s) {
    auto byte = [&](std::size_t i) {
        if (i >= s.size()) throw ParseError("graph6 string '" + s + "' is truncated");
        int c = static_cast<unsigned char>(s[i]);
        if (c < 63 || c > 126) throw ParseError("graph6 string '" + s + "' has an invalid byte at position " + std::to_string(i));
        return static_cast<unsigned>(c - 63);
    };
    std::size_t pos = 0, n = 0;
    if (s.empty()) throw ParseError("empty graph6 string");
    if (byte(0) == 63) {
        if (s.size() > 1 && byte(1) == 63) throw ParseError("graph6 strings above 258047 vertices are not supported");
        n = (byte(1) << 12) | (byte(2) << 6) | byte(3);
        pos = 4;
    } else {
        n = byte(0);
        pos = 1;
    }
    const std::size_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
    const std::size_t bytes = (bits + 5) / 6;
    if (s.size() != pos + bytes) throw ParseError("graph6 string '" + s + "' has the wrong length for " + std::to_string(n) + " vertices");
    std::vector<Edge> edges;
    std::size_t k = 0;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i, ++k)
            if ((byte(pos + k / 6) >> (5 - k % 6)) & 1u) edges.emplace_back(i, j);
    return SimpleGraph(n, std::move(edges));
}

std::vector<SimpleGraph> connected_graphs(std::size_t max_edges) {
    std::set<SimpleGraph> all{SimpleGraph(1)};
    std::set<SimpleGraph> layer = all;
    for (std::size_t e = 1; e <= max_edges; ++e) {
        std::set<SimpleGraph> next;
        for (const auto& g : layer) {
            const std::size_t n = g.vertex_count();
            for (std::size_t u = 0; u < n; ++u) {
                auto pendant = g.edges();
                pendant.emplace_back(u, n);
                next.insert(canonical_form(SimpleGraph(n + 1, std::move(pendant))));
                for (std::size_t v = u + 1; v < n; ++v) {
                    if (g.adjacent(u, v)) continue;
                    auto chord = g.edges();
                    chord.emplace_back(u, v);
                    next.insert(canonical_form(SimpleGraph(n, std::move(chord))));
                }
            }
        }
        all.insert(next.begin(), next.end());
        layer = std::move(next);
    }
    std::vector<SimpleGraph> out(all.begin(), all.end());
    std::sort(out.begin(), out.end(), [](const SimpleGraph& a, const SimpleGraph& b) {
        return std::tuple(a.edge_count(), a.vertex_count(), to_graph6(a)) < std::tuple(b.edge_count(), b.vertex_count(), to_graph6(b));
    });
    return out;
}

}  // namespace dysongraph
