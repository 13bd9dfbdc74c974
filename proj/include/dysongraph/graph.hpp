#pragma once

// Finite simple graphs: canonical forms, graph6 encoding, small enumerations.

#include <compare>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace dysongraph {

using Edge = std::pair<std::size_t, std::size_t>;

class SimpleGraph {
public:
    SimpleGraph() = default;
    /// Throws ValidationError on self-loops, repeated edges or bad endpoints.
    explicit SimpleGraph(std::size_t n, std::vector<Edge> edges = {});

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    /// Sorted, each pair with first < second.
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    bool adjacent(std::size_t u, std::size_t v) const;
    std::vector<std::vector<std::size_t>> adjacency_lists() const;
    std::vector<std::size_t> degrees() const;
    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    std::vector<std::vector<std::size_t>> components() const;
    bool is_connected() const;
    bool is_forest() const;

    friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;
    friend auto operator<=>(const SimpleGraph&, const SimpleGraph&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
};

SimpleGraph complete_graph(std::size_t n);
SimpleGraph path_graph(std::size_t n);
SimpleGraph cycle_graph(std::size_t n);
SimpleGraph disjoint_union(const SimpleGraph& a, const SimpleGraph& b);

/// Vertex v of g becomes perm[v].
SimpleGraph relabel(const SimpleGraph& g, const std::vector<std::size_t>& perm);

/// The subgraph induced on `vertices`, renumbered in the given order.
SimpleGraph induced_subgraph(const SimpleGraph& g, const std::vector<std::size_t>& vertices);

/// Isomorphism-invariant representative: vertices ordered by decreasing
/// degree, ties broken by the lexicographically largest adjacency string.
/// Throws SizeError above 10 vertices.
SimpleGraph canonical_form(const SimpleGraph& g);
bool isomorphic(const SimpleGraph& a, const SimpleGraph& b);

std::string to_graph6(const SimpleGraph& g);
/// Throws ParseError.
SimpleGraph from_graph6(const std::string& s);

/// Canonical connected simple graphs with at most `max_edges` edges,
/// including K1, sorted by (edges, vertices, graph6).
std::vector<SimpleGraph> connected_graphs(std::size_t max_edges);

}  // namespace dysongraph
