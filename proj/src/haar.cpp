#include "dysongraph/haar.hpp"

#include "dysongraph/errors.hpp"
#include "dysongraph/random.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <thread>
#include <unordered_set>

namespace dysongraph {

namespace {

constexpr std::uint64_t kHaarTag = 3;
constexpr std::uint64_t kSampleTag = 4;

std::size_t word_count(std::size_t depth) { return (depth + 63) / 64; }

void check_depth(std::size_t depth) {
    if (depth == 0 || depth > VertexUniverse::kMaxDepth)
        throw ValidationError("universe depth must lie in 1.." + std::to_string(VertexUniverse::kMaxDepth) + ", got " +
                              std::to_string(depth));
}

void check_same_universe(const SolutionPoint& x, const SolutionPoint& y) {
    if (x.universe() != y.universe() && *x.universe() != *y.universe())
        throw MismatchError("solution points live in different universes");
}

// Runs body(begin, end) over [0, n) in up to `threads` contiguous chunks.
template <class Body>
void parallel_chunks(std::size_t n, unsigned threads, Body body) {
    const std::size_t t = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
    if (t == 1) {
        body(0, n, 0);
        return;
    }
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < t; ++k) pool.emplace_back(body, n * k / t, n * (k + 1) / t, k);
    for (auto& th : pool) th.join();
}

}  // namespace

VertexUniverse::VertexUniverse(std::size_t depth) {
    check_depth(depth);
    ids_.reserve(depth);
    for (std::size_t k = 1; k <= depth; ++k) ids_.push_back("v" + std::to_string(k));
}

VertexUniverse::VertexUniverse(std::vector<std::string> ids) : ids_(std::move(ids)) {
    check_depth(ids_.size());
    std::unordered_set<std::string> seen;
    for (const auto& id : ids_)
        if (!seen.insert(id).second) throw ValidationError("universe id '" + id + "' is repeated");
}

const std::string& VertexUniverse::id(std::size_t rank) const {
    if (rank == 0 || rank > ids_.size()) throw ValidationError("rank " + std::to_string(rank) + " outside 1.." + std::to_string(ids_.size()));
    return ids_[rank - 1];
}

std::size_t VertexUniverse::rank(const std::string& id) const {
    const auto it = std::find(ids_.begin(), ids_.end(), id);
    if (it == ids_.end()) throw ValidationError("unknown universe id '" + id + "'");
    return static_cast<std::size_t>(it - ids_.begin()) + 1;
}

UniversePtr make_universe(std::size_t depth) { return std::make_shared<const VertexUniverse>(depth); }

SolutionPoint::SolutionPoint(UniversePtr universe) : universe_(std::move(universe)) {
    if (!universe_) throw ValidationError("solution point without a universe");
    words_.assign(word_count(universe_->depth()), 0);
}

SolutionPoint SolutionPoint::from_ranks(UniversePtr universe, const std::vector<std::size_t>& ranks) {
    SolutionPoint p(std::move(universe));
    for (std::size_t r : ranks) p.insert(r);
    return p;
}

void SolutionPoint::check_rank(std::size_t rank) const {
    if (rank == 0 || rank > depth()) throw ValidationError("rank " + std::to_string(rank) + " outside 1.." + std::to_string(depth()));
}

bool SolutionPoint::contains(std::size_t rank) const {
    check_rank(rank);
    return (words_[(rank - 1) / 64] >> ((rank - 1) % 64) & 1u) != 0;
}

void SolutionPoint::insert(std::size_t rank) {
    check_rank(rank);
    words_[(rank - 1) / 64] |= std::uint64_t{1} << ((rank - 1) % 64);
}

void SolutionPoint::erase(std::size_t rank) {
    check_rank(rank);
    words_[(rank - 1) / 64] &= ~(std::uint64_t{1} << ((rank - 1) % 64));
}

std::vector<std::size_t> SolutionPoint::ranks() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 1; k <= depth(); ++k)
        if (contains(k)) out.push_back(k);
    return out;
}

std::size_t SolutionPoint::size() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

bool operator==(const SolutionPoint& a, const SolutionPoint& b) {
    return (a.universe_ == b.universe_ || *a.universe_ == *b.universe_) && a.words_ == b.words_;
}

SolutionPoint group_op(const SolutionPoint& x, const SolutionPoint& y) {
    check_same_universe(x, y);
    SolutionPoint out(x.universe());
    for (std::size_t i = 0; i < out.words_.size(); ++i) out.words_[i] = x.words_[i] ^ y.words_[i];
    return out;
}

Rational distance(const SolutionPoint& x, const SolutionPoint& y, const Rational& g, const Rational& eps) {
    if (g < 1) throw DomainError("the metric needs g >= 1, got " + to_string(g));
    if (eps <= 0) throw DomainError("the metric needs eps > 0, got " + to_string(eps));
    const SolutionPoint d = group_op(x, y);
    const Rational base = g + eps;
    // Horner from the deepest rank
    Rational acc = 0;
    for (std::size_t k = d.depth(); k >= 1; --k) {
        if (d.contains(k)) acc += 1;
        acc /= base;
    }
    return acc;
}

Rational norm(const SolutionPoint& x, const Rational& g, const Rational& eps) { return distance(x, SolutionPoint(x.universe()), g, eps); }

std::uint64_t norm_base2_numerator(const SolutionPoint& x) {
    const std::size_t m = x.depth();
    if (m > 64) throw ValidationError("base-2 norm numerators need depth <= 64, got " + std::to_string(m));
    // rank k carries 2^(m-k): the bit order reversed within the low m bits
    const std::uint64_t w = x.words()[0];
    std::uint64_t n = 0;
    for (std::size_t k = 1; k <= m; ++k)
        if (w >> (k - 1) & 1u) n |= std::uint64_t{1} << (m - k);
    return n;
}

std::uint64_t sample_seed(std::uint64_t master, std::uint64_t index) { return stream_word(master, kSampleTag, index); }

SolutionPoint sample_haar(const UniversePtr& universe, std::uint64_t seed) {
    SolutionPoint p(universe);
    const std::size_t m = universe->depth();
    for (std::size_t i = 0; i < word_count(m); ++i) {
        std::uint64_t w = stream_word(seed, kHaarTag, i);
        const std::size_t used = std::min<std::size_t>(64, m - 64 * i);
        if (used < 64) w &= (std::uint64_t{1} << used) - 1;
        for (std::size_t b = 0; b < used; ++b)
            if (w >> b & 1u) p.insert(64 * i + b + 1);
    }
    return p;
}

SolutionPoint sample_haar(std::size_t depth, std::uint64_t seed) { return sample_haar(make_universe(depth), seed); }

namespace {

void check_mc(std::size_t depth, std::size_t samples) {
    if (depth == 0 || depth > 64) throw ValidationError("Monte-Carlo depth must lie in 1..64, got " + std::to_string(depth));
    if (samples == 0) throw ValidationError("Monte-Carlo needs at least one sample");
}

std::vector<std::uint64_t> norm_numerators(std::size_t depth, std::size_t samples, std::uint64_t seed, unsigned threads) {
    const UniversePtr u = make_universe(depth);
    std::vector<std::uint64_t> out(samples);
    parallel_chunks(samples, threads, [&](std::size_t begin, std::size_t end, std::size_t) {
        for (std::size_t i = begin; i < end; ++i) out[i] = norm_base2_numerator(sample_haar(u, sample_seed(seed, i)));
    });
    return out;
}

}  // namespace

BallEstimate ball_measure_mc(const Rational& r, std::size_t depth, std::size_t samples, std::uint64_t seed, unsigned threads) {
    if (r < 0 || r > 1) throw DomainError("ball radius must lie in [0,1], got " + to_string(r));
    check_mc(depth, samples);
    // |X| <= r  iff  n <= r 2^m  iff  n <= floor(r 2^m)
    Integer scaled = r.get_num() << static_cast<mp_bitcnt_t>(depth);
    mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), r.get_den().get_mpz_t());
    const std::uint64_t limit = scaled.fits_ulong_p() ? scaled.get_ui() : ~std::uint64_t{0};

    BallEstimate out;
    out.r = r;
    out.depth = depth;
    out.samples = samples;
    out.seed = seed;
    for (std::uint64_t n : norm_numerators(depth, samples, seed, threads))
        if (n <= limit) ++out.hits;
    const double p = static_cast<double>(out.hits) / static_cast<double>(samples);
    out.estimate = p;
    out.stderr_ = std::sqrt(p * (1 - p) / static_cast<double>(samples));
    out.within_bound = std::abs(p - to_double(r)) <= 3 * out.stderr_ + std::ldexp(1.0, -static_cast<int>(depth));
    return out;
}

KSResult ks_uniform_norm(std::size_t depth, std::size_t samples, std::uint64_t seed, unsigned threads) {
    check_mc(depth, samples);
    auto values = norm_numerators(depth, samples, seed, threads);
    std::sort(values.begin(), values.end());
    KSResult out;
    out.samples = samples;
    const double n = static_cast<double>(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double x = std::ldexp(static_cast<double>(values[i]), -static_cast<int>(depth));
        out.statistic = std::max({out.statistic, static_cast<double>(i + 1) / n - x, x - static_cast<double>(i) / n});
    }
    out.critical = 1.628 / std::sqrt(n);
    out.pass = out.statistic < out.critical;
    return out;
}

}  // namespace dysongraph
