#pragma once

// Step-function graphons: construction from graphs and forest sums, cut norm
// and cut distance, homomorphism densities, sampling, fingerprints and
// Gateaux derivatives of densities.

#include "dysongraph/dse.hpp"
#include "dysongraph/graph.hpp"
#include "dysongraph/linalg.hpp"
#include "dysongraph/rational.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace dysongraph {

/// Symmetric block-constant kernel on [0,1]^2. Block i is the i-th interval
/// of length measures[i]; values may have any sign.
struct StepKernel {
    std::vector<Rational> measures;
    RationalMatrix values;

    std::size_t blocks() const noexcept { return measures.size(); }
    /// Throws ValidationError unless measures are positive, sum to 1, and
    /// values form a symmetric blocks x blocks matrix.
    void validate() const;
    /// Integral over the unit square.
    Rational integral() const;
};

class StepGraphon {
public:
    /// Throws ValidationError unless the kernel is valid with values in [0,1].
    explicit StepGraphon(StepKernel kernel);
    StepGraphon(std::vector<Rational> measures, RationalMatrix values);

    /// k equal blocks, all values zero (k >= 1).
    static StepGraphon zero(std::size_t k = 1);
    static StepGraphon constant(const Rational& c, std::size_t k = 1);

    const StepKernel& kernel() const noexcept { return kernel_; }
    std::size_t blocks() const noexcept { return kernel_.blocks(); }
    const std::vector<Rational>& measures() const noexcept { return kernel_.measures; }
    const RationalMatrix& values() const noexcept { return kernel_.values; }
    Rational integral() const { return kernel_.integral(); }
    Rational max_value() const;

    /// Block i moves to position perm[i]; measures move with their blocks.
    StepGraphon permuted(const std::vector<std::size_t>& perm) const;

    friend bool operator==(const StepGraphon& a, const StepGraphon& b) {
        return a.kernel_.measures == b.kernel_.measures && a.kernel_.values == b.kernel_.values;
    }

private:
    StepKernel kernel_;
};

/// n equal blocks with the adjacency matrix of g. Throws ValidationError for n = 0.
StepGraphon graphon_from_graph(const SimpleGraph& g);

/// Both kernels on the coarsest common interval partition.
std::pair<StepKernel, StepKernel> common_refinement(const StepKernel& a, const StepKernel& b);

/// The kernel on `atoms` equal blocks; throws RefinementError unless every
/// block measure is a multiple of 1/atoms.
StepKernel equal_refinement(const StepKernel& w, std::size_t atoms);

enum class Mode { exact, heuristic };

std::string to_string(Mode m);
/// "exact" or "heuristic"; throws ParseError otherwise.
Mode parse_mode(const std::string& s);

struct CutNorm {
    Rational value;
    /// True for full enumeration; heuristic values are attained lower bounds.
    bool exact = false;
    std::vector<bool> rows, cols;
};

inline constexpr std::size_t kExactCutNormBlocks = 20;
inline constexpr std::size_t kHeuristicRestarts = 32;

/// max over block sets S, T of |sum_{i in S, j in T} mu_i mu_j w_ij|.
/// Exact mode throws SizeError above kExactCutNormBlocks blocks.
CutNorm cut_norm(const StepKernel& w, Mode mode, std::uint64_t seed = 0);
CutNorm cut_norm(const StepGraphon& w, Mode mode, std::uint64_t seed = 0);

struct CutDistance {
    /// Cut norm of W^sigma - U at the best permutation found.
    Rational value;
    /// |integral W - integral U|; no relabeling does better.
    Rational lower_bound;
    /// Minimum over every block permutation of the common refinement.
    bool exact = false;
    /// value was computed exactly at its permutation, hence an upper bound
    /// on the permutation distance.
    bool value_exact = false;
    /// value == lower_bound with value_exact: the distance is attained.
    bool certified = false;
    std::size_t atoms = 0;
    /// Atom i of W's refinement sits at position permutation[i].
    std::vector<std::size_t> permutation;
};

inline constexpr std::size_t kExactCutDistanceAtoms = 8;
inline constexpr std::size_t kMaxRefinementAtoms = 2048;

/// Minimizes the cut norm of W^sigma - U over permutations sigma of the
/// common equal-measure refinement. Exact mode needs at most
/// kExactCutDistanceAtoms atoms (SizeError); refinements above
/// kMaxRefinementAtoms throw RefinementError.
CutDistance cut_distance(const StepGraphon& w, const StepGraphon& u, Mode mode, std::uint64_t seed = 0);

/// t(H, W), exact.
Rational hom_density(const SimpleGraph& h, const StepKernel& w);
Rational hom_density(const SimpleGraph& h, const StepGraphon& w);

/// hom(H, G) / |V(G)|^|V(H)| by direct homomorphism counting.
Rational hom_density_graph(const SimpleGraph& h, const SimpleGraph& g);

/// Number of homomorphisms H -> G.
Integer hom_count(const SimpleGraph& h, const SimpleGraph& g);

/// R(n, W): n points drawn from the block distribution, each pair joined
/// independently with probability W. Every point and every pair has its own
/// random stream derived from the seed.
SimpleGraph sample_random_graph(std::size_t n, const StepGraphon& w, std::uint64_t seed);

/// graph6 of the canonical form -> t(H, W) for every connected H with at
/// most max_edges edges. Throws SizeError for max_edges > 5.
using DensityFingerprint = std::map<std::string, Rational>;
DensityFingerprint density_fingerprint(const StepGraphon& w, std::size_t max_edges);

/// sum over edges e of H of the density with W replaced by D on e.
/// W and D are first brought to a common partition.
Rational gateaux_density_derivative(const SimpleGraph& h, const StepKernel& w, const StepKernel& d);
Rational gateaux_density_derivative(const SimpleGraph& h, const StepGraphon& w, const StepKernel& d);

/// Pointwise a + s * b on the common refinement.
StepKernel kernel_add(const StepKernel& a, const StepKernel& b, const Rational& s = 1);

struct FeynmanBlock {
    Forest forest;
    std::size_t copy = 0;
    std::size_t first_atom = 0;
    std::size_t atoms = 0;
    Rational measure;
    Rational edge_value;
};

struct FeynmanGraphon {
    StepGraphon graphon = StepGraphon::zero();
    /// One diagonal block per copy of each monomial, in atom order.
    std::vector<FeynmanBlock> blocks;
};

/// Each grade-n forest with integer coefficient c becomes c diagonal blocks
/// with its adjacency pattern at edge value (coupling)^n clipped to [0,1];
/// every vertex is an atom of equal measure. Throws UnsupportedError for
/// negative or non-integer coefficients, ValidationError if y has no vertices.
FeynmanGraphon feynman_graphon(const ForestSum& y, const Rational& coupling);

/// d(F(Y_i), F(Y_{i+1})) for i = 1..m-1, with Y_i the unscaled partial sums
/// at the solution's coupling.
std::vector<CutDistance> convergence_trace(const DSESolution& sol, std::size_t m, Mode mode, std::uint64_t seed = 0);

struct CouplingFlowStep {
    std::size_t n = 0;
    Rational lambda;
    CutDistance distance;
};

/// d(F(Y_m, lambda_n g), F(Y_m, g)) for lambda_n = n/(n+1), n = 1..n_max.
std::vector<CouplingFlowStep> coupling_flow_trace(const DSESolution& sol, std::size_t m, std::size_t n_max, Mode mode,
                                                  std::uint64_t seed = 0);

}  // namespace dysongraph
