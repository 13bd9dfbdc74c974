#pragma once

// Graph polynomials on finite multigraphs: Tutte polynomial, first
// Kirchhoff-Symanzik polynomial, spanning-tree counts.

#include "dysongraph/dse.hpp"
#include "dysongraph/graph.hpp"
#include "dysongraph/rational.hpp"
#include "dysongraph/trees.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace dysongraph {

/// Sparse polynomial with rational coefficients in named variables.
class MultiPoly {
public:
    /// Variable -> positive exponent.
    using Monomial = std::map<std::string, unsigned>;
    using Terms = std::map<Monomial, Rational>;

    MultiPoly() = default;
    MultiPoly(const Rational& constant);
    MultiPoly(long constant) : MultiPoly(Rational(constant)) {}
    static MultiPoly variable(const std::string& name, unsigned power = 1);
    static MultiPoly monomial(const Monomial& m, const Rational& coef = 1);

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    Rational coefficient(const Monomial& m) const;
    void add(const Monomial& m, const Rational& coef);

    MultiPoly& operator+=(const MultiPoly& other);
    MultiPoly& operator-=(const MultiPoly& other);
    MultiPoly& operator*=(const MultiPoly& other);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

    MultiPoly pow(unsigned k) const;
    /// Throws ValidationError if a variable has no value.
    Rational evaluate(const std::map<std::string, Rational>& values) const;
    MultiPoly substitute(const std::string& var, const Rational& value) const;
    MultiPoly derivative(const std::string& var) const;
    /// Total degrees of the terms, ascending.
    std::vector<unsigned> degrees() const;
    std::vector<std::string> variables() const;

private:
    Terms terms_;
};

/// Terms by descending total degree, e.g. "x^2 + x + y".
std::string to_string(const MultiPoly& p);

/// Finite multigraph. Self-loops and parallel edges are allowed; edge i
/// carries the weight variable "w<weight(i)>", by default w1, w2, ...
class MultiGraph {
public:
    MultiGraph() = default;
    /// Throws ValidationError on bad endpoints or a weight list of the wrong length.
    MultiGraph(std::size_t n, std::vector<Edge> edges);
    MultiGraph(std::size_t n, std::vector<Edge> edges, std::vector<std::size_t> weights);

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Edge& edge(std::size_t i) const;
    std::size_t weight(std::size_t i) const;
    const std::vector<std::size_t>& weights() const noexcept { return weights_; }
    std::string weight_variable(std::size_t i) const;

    bool is_loop(std::size_t i) const;
    /// Non-loop edge whose removal disconnects its endpoints.
    bool is_bridge(std::size_t i) const;
    /// kappa: number of connected components, isolated vertices included.
    std::size_t component_count() const;
    bool is_connected() const { return component_count() <= 1; }
    /// Component index of every vertex, numbered by smallest vertex.
    std::vector<std::size_t> component_of() const;
    /// r(A) = |V| - kappa(A) for the spanning subgraph on the edge subset A.
    std::size_t rank(const std::vector<bool>& subset) const;
    std::size_t nullity(const std::vector<bool>& subset) const;
    /// |E| - |V| + kappa.
    std::size_t loop_number() const;

    MultiGraph delete_edge(std::size_t i) const;
    /// Merges the endpoints of a non-loop edge; parallel edges become loops.
    MultiGraph contract_edge(std::size_t i) const;

    friend bool operator==(const MultiGraph&, const MultiGraph&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> weights_;
};

MultiGraph to_multigraph(const SimpleGraph& g);
/// Vertices of the trees of the forest in preorder, one edge per parent link.
MultiGraph forest_graph(const Forest& f);
/// b's weights are shifted past the largest weight of a.
MultiGraph disjoint_union(const MultiGraph& a, const MultiGraph& b);

/// Isomorphism certificate, ignoring weights and edge order. Equal
/// certificates iff isomorphic.
std::string canonical_certificate(const MultiGraph& g);

constexpr std::size_t kTutteMaxEdges = 24;
constexpr std::size_t kRankNullityMaxEdges = 20;
constexpr std::size_t kSymanzikMaxEdges = 24;

/// T(G; x, y) by deletion/contraction, memoized on canonical certificates.
/// Throws SizeError above max_edges.
MultiPoly tutte(const MultiGraph& g, std::size_t max_edges = kTutteMaxEdges);
/// sum over A of (x-1)^(r(E)-r(A)) (y-1)^n(A), by enumerating all subsets.
MultiPoly tutte_rank_nullity(const MultiGraph& g, std::size_t max_edges = kRankNullityMaxEdges);

/// prod over k <= m and over the forests of X_k (with multiplicity) of their
/// Tutte polynomials, at coupling 1. Throws UnsupportedError on coefficients
/// that are not nonnegative integers.
MultiPoly tutte_of_partial_sum(const DSESolution& sol, std::size_t m);

/// The tree formula sum over rooted subtrees s of x^|E(s)| (y+1)^(|E(s)|-|L(s)|),
/// where s contains the root and L(s) are its non-root childless vertices,
/// compared with the Tutte polynomial of the tree.
struct TreeFormulaDiagnostic {
    MultiPoly formula;
    MultiPoly tutte;
    bool agrees = false;
};
TreeFormulaDiagnostic tree_formula_diagnostic(const RootedTree& t);

/// Psi(w) = sum over spanning forests T of prod_{e not in T} w_e. A
/// disconnected graph gives the product over its components; a notice is
/// appended when notices is given.
MultiPoly symanzik_psi(const MultiGraph& g, std::vector<std::string>* notices = nullptr);
/// det of the Kirchhoff-Symanzik matrix M_kr = sum_i w_i eta_ik eta_ir over the
/// fundamental cycles of a spanning forest. w is indexed by edge.
Rational symanzik_det(const MultiGraph& g, const std::vector<Rational>& w);
/// Same, with the spanning forest given by its edge indices. Throws
/// ValidationError if they do not form a spanning forest.
Rational symanzik_det(const MultiGraph& g, const std::vector<Rational>& w, const std::vector<std::size_t>& forest_edges);
/// Edge sets of all spanning forests, each sorted, in lexicographic order.
std::vector<std::vector<std::size_t>> spanning_forests(const MultiGraph& g);

/// Psi = w_e F + G. For an ordinary edge F = Psi(G\e) and G = Psi(G/e); for a
/// bridge or a self-loop degenerate is set and F = dPsi/dw_e, G = Psi|_{w_e=0}.
struct PsiSplit {
    MultiPoly f;
    MultiPoly g;
    bool degenerate = false;
};
/// Throws ValidationError on a bad edge index and InternalError if the identity fails.
PsiSplit psi_deletion_contraction(const MultiGraph& g, std::size_t e);

/// Matrix-tree theorem. 0 for a disconnected graph, with a notice.
Integer spanning_tree_count(const MultiGraph& g, std::vector<std::string>* notices = nullptr);

}  // namespace dysongraph
