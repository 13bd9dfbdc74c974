#pragma once

// Ranked countable universes truncated at depth m, subsets under symmetric
// difference, the metric sum_{e in X^Y} (g+eps)^(-rank e), and Monte-Carlo
// checks of the Haar (fair-coin product) measure.

#include "dysongraph/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace dysongraph {

/// Elements with ranks 1..depth; element names default to "v<rank>".
class VertexUniverse {
public:
    /// Throws ValidationError for depth 0 or above kMaxDepth.
    explicit VertexUniverse(std::size_t depth);
    /// Rank i + 1 is ids[i]. Throws ValidationError on repeated ids.
    explicit VertexUniverse(std::vector<std::string> ids);

    static constexpr std::size_t kMaxDepth = 4096;

    std::size_t depth() const noexcept { return ids_.size(); }
    const std::string& id(std::size_t rank) const;
    /// Throws ValidationError for unknown ids.
    std::size_t rank(const std::string& id) const;

    friend bool operator==(const VertexUniverse&, const VertexUniverse&) = default;

private:
    std::vector<std::string> ids_;
};

using UniversePtr = std::shared_ptr<const VertexUniverse>;
UniversePtr make_universe(std::size_t depth);

/// Subset of a universe, stored as a bitset over ranks.
class SolutionPoint {
public:
    explicit SolutionPoint(UniversePtr universe);
    /// Throws ValidationError for ranks outside 1..depth.
    static SolutionPoint from_ranks(UniversePtr universe, const std::vector<std::size_t>& ranks);

    const UniversePtr& universe() const noexcept { return universe_; }
    std::size_t depth() const noexcept { return universe_->depth(); }
    bool contains(std::size_t rank) const;
    void insert(std::size_t rank);
    void erase(std::size_t rank);
    /// Ascending.
    std::vector<std::size_t> ranks() const;
    std::size_t size() const;
    /// Bit k-1 of the words is rank k.
    const std::vector<std::uint64_t>& words() const noexcept { return words_; }

    friend bool operator==(const SolutionPoint& a, const SolutionPoint& b);

private:
    friend SolutionPoint group_op(const SolutionPoint&, const SolutionPoint&);
    void check_rank(std::size_t rank) const;

    UniversePtr universe_;
    std::vector<std::uint64_t> words_;
};

/// X symmetric difference Y. Throws MismatchError across universes.
SolutionPoint group_op(const SolutionPoint& x, const SolutionPoint& y);

/// sum over X^Y of (g+eps)^(-rank). Throws DomainError unless g >= 1 and
/// eps > 0, MismatchError across universes.
Rational distance(const SolutionPoint& x, const SolutionPoint& y, const Rational& g, const Rational& eps);
/// distance to the empty set.
Rational norm(const SolutionPoint& x, const Rational& g, const Rational& eps);
/// At base 2 the norm is n / 2^depth; returns n. Depth must be at most 64.
std::uint64_t norm_base2_numerator(const SolutionPoint& x);

/// Independent fair coin per rank. A counter-based stream, so the point
/// depends only on (depth, seed).
SolutionPoint sample_haar(const UniversePtr& universe, std::uint64_t seed);
SolutionPoint sample_haar(std::size_t depth, std::uint64_t seed);
/// Seed of the i-th sample drawn under a master seed.
std::uint64_t sample_seed(std::uint64_t master, std::uint64_t index);

struct BallEstimate {
    Rational r;
    std::size_t depth = 0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::size_t hits = 0;
    double estimate = 0;
    double stderr_ = 0;
    /// |estimate - r| <= 3 stderr + 2^-depth
    bool within_bound = false;
};

/// Fraction of Haar samples with base-2 norm <= r; the comparison is exact.
/// Throws DomainError unless r is in [0,1], ValidationError for depth outside
/// 1..64 or zero samples. threads only splits the work; results are identical.
BallEstimate ball_measure_mc(const Rational& r, std::size_t depth, std::size_t samples, std::uint64_t seed, unsigned threads = 1);

struct KSResult {
    std::size_t samples = 0;
    double statistic = 0;
    double critical = 0;  // 1% level, 1.628 / sqrt(N)
    bool pass = false;
};

/// Kolmogorov-Smirnov distance between the empirical law of the base-2 norm
/// of Haar samples and the uniform law on [0,1].
KSResult ks_uniform_norm(std::size_t depth, std::size_t samples, std::uint64_t seed, unsigned threads = 1);

}  // namespace dysongraph
