#include "dysongraph/graphon.hpp"

#include "dysongraph/errors.hpp"
#include "dysongraph/random.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

namespace dysongraph {

// ---------------------------------------------------------------- kernels

void StepKernel::validate() const {
    const std::size_t k = measures.size();
    if (k == 0) throw ValidationError("a step kernel needs at least one block");
    Rational total = 0;
    for (const auto& m : measures) {
        if (m <= 0) throw ValidationError("block measures must be positive, got " + to_string(m));
        total += m;
    }
    if (total != 1) throw ValidationError("block measures sum to " + to_string(total) + ", not 1");
    if (values.size() != k) throw ValidationError("value matrix has " + std::to_string(values.size()) + " rows for " + std::to_string(k) + " blocks");
    for (std::size_t i = 0; i < k; ++i) {
        if (values[i].size() != k) throw ValidationError("value matrix row " + std::to_string(i) + " has the wrong length");
        for (std::size_t j = 0; j < i; ++j)
            if (values[i][j] != values[j][i])
                throw ValidationError("value matrix is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
}

Rational StepKernel::integral() const {
    Rational total = 0;
    if (std::all_of(measures.begin(), measures.end(), [&](const Rational& m) { return m == measures[0]; })) {
        for (const auto& row : values)
            for (const auto& v : row) total += v;
        return total * measures[0] * measures[0];
    }
    for (std::size_t i = 0; i < measures.size(); ++i)
        for (std::size_t j = 0; j < measures.size(); ++j) total += measures[i] * measures[j] * values[i][j];
    return total;
}

StepGraphon::StepGraphon(StepKernel kernel) : kernel_(std::move(kernel)) {
    kernel_.validate();
    for (const auto& row : kernel_.values)
        for (const auto& v : row)
            if (v < 0 || v > 1) throw ValidationError("graphon values must lie in [0,1], got " + to_string(v));
}

StepGraphon::StepGraphon(std::vector<Rational> measures, RationalMatrix values)
    : StepGraphon(StepKernel{std::move(measures), std::move(values)}) {}

StepGraphon StepGraphon::zero(std::size_t k) { return constant(0, k); }

StepGraphon StepGraphon::constant(const Rational& c, std::size_t k) {
    if (k == 0) throw ValidationError("a graphon needs at least one block");
    return StepGraphon(std::vector<Rational>(k, make_rational(1, static_cast<long>(k))), RationalMatrix(k, std::vector<Rational>(k, c)));
}

Rational StepGraphon::max_value() const {
    Rational best = 0;
    for (const auto& row : kernel_.values)
        for (const auto& v : row) best = std::max(best, v);
    return best;
}

StepGraphon StepGraphon::permuted(const std::vector<std::size_t>& perm) const {
    const std::size_t k = blocks();
    if (perm.size() != k) throw ValidationError("permutation has the wrong length");
    std::vector<bool> hit(k, false);
    for (std::size_t p : perm) {
        if (p >= k || hit[p]) throw ValidationError("not a permutation of the blocks");
        hit[p] = true;
    }
    StepKernel out{std::vector<Rational>(k), RationalMatrix(k, std::vector<Rational>(k))};
    for (std::size_t i = 0; i < k; ++i) {
        out.measures[perm[i]] = kernel_.measures[i];
        for (std::size_t j = 0; j < k; ++j) out.values[perm[i]][perm[j]] = kernel_.values[i][j];
    }
    return StepGraphon(std::move(out));
}

StepGraphon graphon_from_graph(const SimpleGraph& g) {
    const std::size_t n = g.vertex_count();
    if (n == 0) throw ValidationError("the empty graph has no graphon; use StepGraphon::zero");
    RationalMatrix values(n, std::vector<Rational>(n, 0));
    for (const auto& [u, v] : g.edges()) values[u][v] = values[v][u] = 1;
    return StepGraphon(std::vector<Rational>(n, make_rational(1, static_cast<long>(n))), std::move(values));
}

std::pair<StepKernel, StepKernel> common_refinement(const StepKernel& a, const StepKernel& b) {
    a.validate();
    b.validate();
    // walk both partitions of [0,1] simultaneously
    std::vector<Rational> measures;
    std::vector<std::size_t> ia, ib;
    std::size_t i = 0, j = 0;
    Rational left_a = a.measures[0], left_b = b.measures[0];
    while (i < a.blocks() && j < b.blocks()) {
        const Rational piece = std::min(left_a, left_b);
        measures.push_back(piece);
        ia.push_back(i);
        ib.push_back(j);
        left_a -= piece;
        left_b -= piece;
        if (left_a == 0 && ++i < a.blocks()) left_a = a.measures[i];
        if (left_b == 0 && ++j < b.blocks()) left_b = b.measures[j];
    }
    const std::size_t k = measures.size();
    StepKernel ra{measures, RationalMatrix(k, std::vector<Rational>(k))};
    StepKernel rb{measures, RationalMatrix(k, std::vector<Rational>(k))};
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) {
            ra.values[r][c] = a.values[ia[r]][ia[c]];
            rb.values[r][c] = b.values[ib[r]][ib[c]];
        }
    return {std::move(ra), std::move(rb)};
}

StepKernel equal_refinement(const StepKernel& w, std::size_t atoms) {
    w.validate();
    std::vector<std::size_t> owner;
    for (std::size_t i = 0; i < w.blocks(); ++i) {
        Rational count = w.measures[i] * Rational(static_cast<unsigned long>(atoms));
        if (count.get_den() != 1)
            throw RefinementError("block measure " + to_string(w.measures[i]) + " is not a multiple of 1/" + std::to_string(atoms));
        owner.insert(owner.end(), count.get_num().get_ui(), i);
    }
    StepKernel out{std::vector<Rational>(atoms, make_rational(1, static_cast<long>(atoms))),
                   RationalMatrix(atoms, std::vector<Rational>(atoms))};
    for (std::size_t r = 0; r < atoms; ++r)
        for (std::size_t c = 0; c < atoms; ++c) out.values[r][c] = w.values[owner[r]][owner[c]];
    return out;
}

StepKernel kernel_add(const StepKernel& a, const StepKernel& b, const Rational& s) {
    auto [ra, rb] = common_refinement(a, b);
    for (std::size_t i = 0; i < ra.blocks(); ++i)
        for (std::size_t j = 0; j < ra.blocks(); ++j) ra.values[i][j] += s * rb.values[i][j];
    return ra;
}

std::string to_string(Mode m) { return m == Mode::exact ? "exact" : "heuristic"; }

Mode parse_mode(const std::string& s) {
    if (s == "exact") return Mode::exact;
    if (s == "heuristic") return Mode::heuristic;
    throw ParseError("mode must be 'exact' or 'heuristic', got '" + s + "'");
}

// ---------------------------------------------------------------- cut norm

namespace {

std::size_t below(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

// Row-major k x k matrices throughout.
struct MatrixCut {
    Rational value;
    std::vector<bool> rows, cols;
};

Rational cut_sum(const std::vector<Rational>& a, std::size_t k, const std::vector<bool>& rows, const std::vector<bool>& cols) {
    Rational total = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (!rows[i]) continue;
        for (std::size_t j = 0; j < k; ++j)
            if (cols[j]) total += a[i * k + j];
    }
    return total;
}

bool single_sign(const std::vector<Rational>& a) {
    bool pos = false, neg = false;
    for (const auto& v : a) {
        pos = pos || v > 0;
        neg = neg || v < 0;
    }
    return !(pos && neg);
}

// Gray-code walk over all row sets; the best column set for fixed rows takes
// every column whose sum has the winning sign.
template <class Int>
std::pair<Int, std::uint64_t> enumerate_rows(const std::vector<Int>& a, std::size_t k) {
    std::vector<Int> col(k, Int(0));
    Int best(0), pos(0), neg(0);
    std::uint64_t mask = 0, best_mask = 0;
    const std::uint64_t total = std::uint64_t{1} << k;
    for (std::uint64_t g = 1; g < total; ++g) {
        const unsigned bit = static_cast<unsigned>(std::countr_zero(g));
        mask ^= std::uint64_t{1} << bit;
        const Int* row = &a[bit * k];
        if ((mask >> bit) & 1u) {
            for (std::size_t j = 0; j < k; ++j) col[j] += row[j];
        } else {
            for (std::size_t j = 0; j < k; ++j) col[j] -= row[j];
        }
        pos = 0;
        neg = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (col[j] > 0)
                pos += col[j];
            else
                neg -= col[j];
        }
        if (pos > best) best = pos, best_mask = mask;
        if (neg > best) best = neg, best_mask = mask;
    }
    return {best, best_mask};
}

// Exact maximization over integer-scaled entries.
struct ScaledMatrix {
    Integer scale;  // a = entries / scale
    std::vector<Integer> entries;
};

ScaledMatrix scale_to_integers(const std::vector<Rational>& a) {
    Integer l = 1;
    for (const auto& v : a) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
    ScaledMatrix s{l, {}};
    s.entries.reserve(a.size());
    for (const auto& v : a) s.entries.push_back(v.get_num() * (l / v.get_den()));
    return s;
}

bool fits_int64(const std::vector<Integer>& entries) {
    Integer total = 0;
    for (const auto& e : entries) total += abs(e);
    return total < (Integer(1) << 62);
}

std::uint64_t best_row_mask(const std::vector<Integer>& entries, std::size_t k, Integer& best) {
    if (fits_int64(entries)) {
        std::vector<std::int64_t> small;
        small.reserve(entries.size());
        for (const auto& e : entries) small.push_back(e.get_si());
        auto [b, mask] = enumerate_rows(small, k);
        best = Integer(static_cast<long>(b));
        return mask;
    }
    auto [b, mask] = enumerate_rows(entries, k);
    best = b;
    return mask;
}

MatrixCut exact_matrix_cut(const std::vector<Rational>& a, std::size_t k) {
    const ScaledMatrix s = scale_to_integers(a);
    Integer best;
    const std::uint64_t mask = best_row_mask(s.entries, k, best);
    MatrixCut out;
    out.rows.assign(k, false);
    for (std::size_t i = 0; i < k; ++i) out.rows[i] = (mask >> i) & 1u;
    // recover the matching column set
    std::vector<Rational> col(k, 0);
    for (std::size_t i = 0; i < k; ++i)
        if (out.rows[i])
            for (std::size_t j = 0; j < k; ++j) col[j] += a[i * k + j];
    std::vector<bool> pos(k), neg(k);
    Rational psum = 0, nsum = 0;
    for (std::size_t j = 0; j < k; ++j) {
        pos[j] = col[j] > 0;
        neg[j] = col[j] < 0;
        if (pos[j]) psum += col[j];
        if (neg[j]) nsum -= col[j];
    }
    out.cols = psum >= nsum ? pos : neg;
    out.value = Rational(best, s.scale);
    out.value.canonicalize();
    return out;
}

struct Estimate {
    double value = 0;
    std::vector<bool> rows, cols;
};

// Randomized alternating maximization; the first restart starts from all rows.
// Row and column sums are updated only for the indices that flipped; a must
// be symmetric.
Estimate estimate_matrix_cut(const std::vector<double>& a, std::size_t k, std::uint64_t seed, std::size_t restarts) {
    std::mt19937_64 rng(seed);
    Estimate best{0, std::vector<bool>(k, false), std::vector<bool>(k, false)};
    std::vector<double> col(k), row(k);
    std::vector<char> rows(k), cols(k), next(k);
    std::vector<std::size_t> flipped;
    flipped.reserve(k);
    for (std::size_t r = 0; r < restarts; ++r) {
        std::vector<char> start(k, 1);
        if (r > 0)
            for (std::size_t i = 0; i < k; ++i) start[i] = (rng() >> 63) != 0;
        for (double sign : {1.0, -1.0}) {
            rows.assign(k, 0);
            cols.assign(k, 0);
            std::fill(col.begin(), col.end(), 0.0);
            std::fill(row.begin(), row.end(), 0.0);
            next = start;
            double previous = -1;
            for (int iter = 0; iter < 100; ++iter) {
                flipped.clear();
                for (std::size_t i = 0; i < k; ++i)
                    if (next[i] != rows[i]) flipped.push_back(i);
                for (std::size_t i : flipped) {
                    const double* ai = &a[i * k];
                    const double s = next[i] ? 1.0 : -1.0;
                    for (std::size_t j = 0; j < k; ++j) col[j] += s * ai[j];
                    rows[i] = next[i];
                }
                flipped.clear();
                for (std::size_t j = 0; j < k; ++j)
                    if (static_cast<char>(sign * col[j] > 0) != cols[j]) flipped.push_back(j);
                for (std::size_t j : flipped) {
                    const double* aj = &a[j * k];
                    const double s = cols[j] ? -1.0 : 1.0;
                    for (std::size_t i = 0; i < k; ++i) row[i] += s * aj[i];
                    cols[j] = !cols[j];
                }
                double value = 0;
                for (std::size_t i = 0; i < k; ++i) {
                    next[i] = sign * row[i] > 0;
                    if (next[i]) value += sign * row[i];
                }
                if (value > best.value) {
                    best.value = value;
                    for (std::size_t i = 0; i < k; ++i) {
                        best.rows[i] = next[i] != 0;
                        best.cols[i] = cols[i] != 0;
                    }
                }
                if (value <= previous * (1 + 1e-12)) break;
                previous = value;
            }
        }
    }
    return best;
}

std::vector<Rational> weighted_entries(const StepKernel& w) {
    const std::size_t k = w.blocks();
    std::vector<Rational> a(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) a[i * k + j] = w.measures[i] * w.measures[j] * w.values[i][j];
    return a;
}

std::vector<double> to_doubles(const std::vector<Rational>& a) {
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = to_double(a[i]);
    return d;
}

MatrixCut heuristic_matrix_cut(const std::vector<Rational>& a, const std::vector<double>& ad, std::size_t k, std::uint64_t seed) {
    Estimate e = estimate_matrix_cut(ad, k, seed, kHeuristicRestarts);
    MatrixCut out{abs(cut_sum(a, k, e.rows, e.cols)), e.rows, e.cols};
    return out;
}

}  // namespace

CutNorm cut_norm(const StepKernel& w, Mode mode, std::uint64_t seed) {
    w.validate();
    const std::size_t k = w.blocks();
    const std::vector<Rational> a = weighted_entries(w);
    if (single_sign(a)) return CutNorm{abs(w.integral()), true, std::vector<bool>(k, true), std::vector<bool>(k, true)};
    if (mode == Mode::exact) {
        if (k > kExactCutNormBlocks)
            throw SizeError("exact cut norm enumerates 2^k block sets and is limited to k <= " + std::to_string(kExactCutNormBlocks) +
                            " (got " + std::to_string(k) + "); use heuristic mode");
        MatrixCut m = exact_matrix_cut(a, k);
        return CutNorm{m.value, true, m.rows, m.cols};
    }
    MatrixCut m = heuristic_matrix_cut(a, to_doubles(a), k, seed);
    return CutNorm{m.value, false, m.rows, m.cols};
}

CutNorm cut_norm(const StepGraphon& w, Mode mode, std::uint64_t seed) { return cut_norm(w.kernel(), mode, seed); }

// ---------------------------------------------------------------- cut distance

namespace {

constexpr std::size_t kSearchRestarts = 8;
constexpr std::size_t kRandomCandidates = 4;
constexpr std::size_t kLocalSearchAtoms = 64;
constexpr int kLocalSearchRounds = 50;

// Atom owners of an equal-measure refinement, without materializing it.
std::vector<std::size_t> atom_owners(const StepGraphon& w, std::size_t atoms) {
    std::vector<std::size_t> owner;
    owner.reserve(atoms);
    for (std::size_t i = 0; i < w.blocks(); ++i) {
        Rational count = w.measures()[i] * Rational(static_cast<unsigned long>(atoms));
        owner.insert(owner.end(), count.get_num().get_ui(), i);
    }
    return owner;
}

// Blocks with identical value rows; refined atoms of such blocks are twins.
std::vector<std::size_t> block_classes(const StepGraphon& w, std::vector<std::size_t>& representative) {
    const auto& v = w.values();
    std::vector<std::size_t> order(w.blocks());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<std::size_t> cls(w.blocks());
    representative.clear();
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i == 0 || v[order[i]] != v[order[i - 1]]) representative.push_back(order[i]);
        cls[order[i]] = representative.size() - 1;
    }
    return cls;
}

// W's atoms grouped into classes of identical rows; an arrangement assigns a
// class to every position, and the difference kernel at position (a, b) is
// W[rep lab a][rep lab b] - U[owner a][owner b].
struct Arrangements {
    const StepGraphon* w = nullptr;
    const StepGraphon* u = nullptr;
    std::size_t q = 0;
    std::vector<std::size_t> identity;  // class of each W atom
    std::vector<std::size_t> representative;  // class -> W block
    std::vector<std::size_t> u_owner;  // position -> U block
    std::vector<double> wd, ud;  // class and U-block matrices as doubles
    bool scaled = false;  // wi, ui hold the same matrices times scale
    Integer scale;
    std::vector<std::int64_t> wi, ui;

    std::size_t classes() const { return representative.size(); }
    const Rational& wv(std::size_t c, std::size_t d) const { return w->values()[representative[c]][representative[d]]; }
    const Rational& uv(std::size_t a, std::size_t b) const { return u->values()[u_owner[a]][u_owner[b]]; }
};

std::vector<Rational> difference(const Arrangements& s, const std::vector<std::size_t>& lab) {
    std::vector<Rational> d(s.q * s.q);
    for (std::size_t a = 0; a < s.q; ++a)
        for (std::size_t b = 0; b < s.q; ++b) d[a * s.q + b] = s.wv(lab[a], lab[b]) - s.uv(a, b);
    return d;
}

std::vector<double> difference_doubles(const Arrangements& s, const std::vector<std::size_t>& lab) {
    const std::size_t c = s.classes(), ub = s.u->blocks();
    std::vector<double> d(s.q * s.q);
    for (std::size_t a = 0; a < s.q; ++a)
        for (std::size_t b = 0; b < s.q; ++b) d[a * s.q + b] = s.wd[lab[a] * c + lab[b]] - s.ud[s.u_owner[a] * ub + s.u_owner[b]];
    return d;
}

bool difference_single_sign(const Arrangements& s, const std::vector<std::size_t>& lab) {
    const std::size_t cl = s.classes(), ub = s.u->blocks();
    bool pos = false, neg = false;
    for (std::size_t a = 0; a < s.q && !(pos && neg); ++a)
        for (std::size_t b = 0; b < s.q; ++b) {
            const int c = s.scaled ? (s.wi[lab[a] * cl + lab[b]] > s.ui[s.u_owner[a] * ub + s.u_owner[b]]) -
                                         (s.wi[lab[a] * cl + lab[b]] < s.ui[s.u_owner[a] * ub + s.u_owner[b]])
                                   : cmp(s.wv(lab[a], lab[b]), s.uv(a, b));
            pos = pos || c > 0;
            neg = neg || c < 0;
        }
    return !(pos && neg);
}

// sum over S x T of the difference, aggregated by class and by U block.
Rational difference_cut_sum(const Arrangements& s, const std::vector<std::size_t>& lab, const std::vector<bool>& rows,
                            const std::vector<bool>& cols) {
    const std::size_t c = s.classes(), ub = s.u->blocks();
    std::vector<unsigned long> ws(c, 0), wt(c, 0), us(ub, 0), ut(ub, 0);
    for (std::size_t a = 0; a < s.q; ++a) {
        if (rows[a]) ++ws[lab[a]], ++us[s.u_owner[a]];
        if (cols[a]) ++wt[lab[a]], ++ut[s.u_owner[a]];
    }
    if (s.scaled) {
        // |entries| < 2^40 and counts < 2^22 keep every term and the sum in range
        __int128 sum = 0;
        for (std::size_t x = 0; x < c; ++x)
            if (ws[x])
                for (std::size_t y = 0; y < c; ++y) sum += static_cast<__int128>(s.wi[x * c + y]) * (ws[x] * wt[y]);
        for (std::size_t x = 0; x < ub; ++x)
            if (us[x])
                for (std::size_t y = 0; y < ub; ++y) sum -= static_cast<__int128>(s.ui[x * ub + y]) * (us[x] * ut[y]);
        const bool negative = sum < 0;
        const unsigned __int128 m = negative ? -static_cast<unsigned __int128>(sum) : static_cast<unsigned __int128>(sum);
        Integer total = Integer(static_cast<unsigned long>(m >> 64));
        total <<= 64;
        total += Integer(static_cast<unsigned long>(m & ~std::uint64_t{0}));
        if (negative) total = -total;
        return Rational(total) / Rational(s.scale);
    }
    Rational total = 0;
    for (std::size_t x = 0; x < c; ++x)
        for (std::size_t y = 0; y < c; ++y)
            if (ws[x] && wt[y]) total += s.wv(x, y) * Rational(ws[x] * wt[y]);
    for (std::size_t x = 0; x < ub; ++x)
        for (std::size_t y = 0; y < ub; ++y)
            if (us[x] && ut[y]) total -= s.u->values()[x][y] * Rational(us[x] * ut[y]);
    return total;
}

std::vector<std::size_t> atom_permutation(const Arrangements& s, const std::vector<std::size_t>& lab) {
    std::vector<std::vector<std::size_t>> pool(s.classes());
    for (std::size_t i = s.q; i-- > 0;) pool[s.identity[i]].push_back(i);
    std::vector<std::size_t> perm(s.q);
    for (std::size_t a = 0; a < s.q; ++a) {
        perm[pool[lab[a]].back()] = a;
        pool[lab[a]].pop_back();
    }
    return perm;
}

}  // namespace

CutDistance cut_distance(const StepGraphon& w, const StepGraphon& u, Mode mode, std::uint64_t seed) {
    Integer l = 1;
    for (const auto* g : {&w, &u})
        for (const auto& m : g->measures()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.get_den().get_mpz_t());
    if (l > kMaxRefinementAtoms)
        throw RefinementError("a common equal-measure refinement needs " + l.get_str() + " atoms (limit " +
                              std::to_string(kMaxRefinementAtoms) + ")");
    const std::size_t q = l.get_ui();
    if (mode == Mode::exact && q > kExactCutDistanceAtoms)
        throw SizeError("exact cut distance searches all permutations and is limited to " + std::to_string(kExactCutDistanceAtoms) +
                        " atoms (got " + std::to_string(q) + "); use heuristic mode");

    Arrangements s;
    s.w = &w;
    s.u = &u;
    s.q = q;
    {
        const auto w_owner = atom_owners(w, q);
        const auto w_class = block_classes(w, s.representative);
        for (std::size_t i = 0; i < q; ++i) s.identity.push_back(w_class[w_owner[i]]);
    }
    s.u_owner = atom_owners(u, q);
    std::vector<std::size_t> u_representative;
    block_classes(u, u_representative);
    const std::size_t c = s.classes(), ub = u.blocks();
    {
        Integer scale = 1;
        for (const auto* g : {&w, &u})
            for (const auto& row : g->values())
                for (const auto& v : row) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), v.get_den().get_mpz_t());
        s.scaled = scale < (Integer(1) << 40);
        if (s.scaled) {
            s.scale = scale;
            const double sd = scale.get_d();
            auto scaled_value = [&](const Rational& v) { return Integer(v.get_num() * (scale / v.get_den())).get_si(); };
            s.wi.resize(c * c);
            s.wd.resize(c * c);
            for (std::size_t x = 0; x < c; ++x)
                for (std::size_t y = 0; y < c; ++y) {
                    s.wi[x * c + y] = scaled_value(s.wv(x, y));
                    s.wd[x * c + y] = static_cast<double>(s.wi[x * c + y]) / sd;
                }
            s.ui.resize(ub * ub);
            s.ud.resize(ub * ub);
            for (std::size_t x = 0; x < ub; ++x)
                for (std::size_t y = 0; y < ub; ++y) {
                    s.ui[x * ub + y] = scaled_value(u.values()[x][y]);
                    s.ud[x * ub + y] = static_cast<double>(s.ui[x * ub + y]) / sd;
                }
        } else {
            s.wd.resize(c * c);
            for (std::size_t x = 0; x < c; ++x)
                for (std::size_t y = 0; y < c; ++y) s.wd[x * c + y] = to_double(s.wv(x, y));
            s.ud.resize(ub * ub);
            for (std::size_t x = 0; x < ub; ++x)
                for (std::size_t y = 0; y < ub; ++y) s.ud[x * ub + y] = to_double(u.values()[x][y]);
        }
    }

    CutDistance out;
    out.atoms = q;
    out.lower_bound = abs(w.integral() - u.integral());
    const Rational norm = Rational(1) / (Rational(static_cast<unsigned long>(q)) * Rational(static_cast<unsigned long>(q)));
    const bool one_arrangement = c == 1 || u_representative.size() == 1;

    auto all_entries = [&](const std::vector<std::size_t>& lab) -> Rational {
        return abs(difference_cut_sum(s, lab, std::vector<bool>(q, true), std::vector<bool>(q, true))) * norm;
    };
    auto exact_value = [&](const std::vector<std::size_t>& lab) -> Rational {
        if (difference_single_sign(s, lab)) return all_entries(lab);
        return exact_matrix_cut(difference(s, lab), q).value * norm;
    };

    std::vector<std::size_t> best_lab = s.identity;
    if (mode == Mode::exact) {
        out.value = exact_value(s.identity);
        if (!one_arrangement && out.value != out.lower_bound) {
            std::vector<std::size_t> lab = s.identity;
            std::sort(lab.begin(), lab.end());
            do {
                Rational v = exact_value(lab);
                if (v < out.value) {
                    out.value = v;
                    best_lab = lab;
                    if (v == out.lower_bound) break;
                }
            } while (std::next_permutation(lab.begin(), lab.end()));
        }
        out.exact = true;
        out.value_exact = true;
    } else {
        if (!one_arrangement) {
            const double floor = to_double(out.lower_bound) * (1 + 1e-12);
            const double dnorm = to_double(norm);
            auto estimate = [&](const std::vector<std::size_t>& lab) {
                return estimate_matrix_cut(difference_doubles(s, lab), q, seed, kSearchRestarts).value * dnorm;
            };
            std::mt19937_64 rng(seed ^ 0x5eed5eedULL);
            double best = estimate(s.identity);
            std::vector<std::vector<std::size_t>> candidates;
            if (best > floor) {
                // align atoms by decreasing row mass
                std::vector<double> wmass(q, 0), umass(q, 0);
                for (std::size_t a = 0; a < q; ++a)
                    for (std::size_t b = 0; b < q; ++b) {
                        wmass[a] += s.wd[s.identity[a] * c + s.identity[b]];
                        umass[a] += s.ud[s.u_owner[a] * ub + s.u_owner[b]];
                    }
                std::vector<std::size_t> wo(q), uo(q);
                std::iota(wo.begin(), wo.end(), 0);
                std::iota(uo.begin(), uo.end(), 0);
                std::stable_sort(wo.begin(), wo.end(), [&](std::size_t a, std::size_t b) { return wmass[a] > wmass[b]; });
                std::stable_sort(uo.begin(), uo.end(), [&](std::size_t a, std::size_t b) { return umass[a] > umass[b]; });
                std::vector<std::size_t> aligned(q);
                for (std::size_t r = 0; r < q; ++r) aligned[uo[r]] = s.identity[wo[r]];
                candidates.push_back(s.identity);
                candidates.push_back(aligned);
                for (std::size_t k = 0; k < kRandomCandidates; ++k) {
                    std::vector<std::size_t> lab = s.identity;
                    for (std::size_t i = q; i > 1; --i) std::swap(lab[i - 1], lab[below(rng, i)]);
                    candidates.push_back(lab);
                }
            }
            for (auto& lab : candidates) {
                double value = estimate(lab);
                if (q <= kLocalSearchAtoms) {
                    for (int round = 0; round < kLocalSearchRounds && value > floor; ++round) {
                        bool improved = false;
                        for (std::size_t a = 0; a < q && value > floor; ++a)
                            for (std::size_t b = a + 1; b < q && value > floor; ++b) {
                                if (lab[a] == lab[b]) continue;
                                std::swap(lab[a], lab[b]);
                                const double v = estimate(lab);
                                if (v < value * (1 - 1e-12)) {
                                    value = v;
                                    improved = true;
                                } else {
                                    std::swap(lab[a], lab[b]);
                                }
                            }
                        if (!improved) break;
                    }
                }
                if (value < best) {
                    best = value;
                    best_lab = lab;
                }
                if (best <= floor) break;
            }
        }
        if (q <= kExactCutNormBlocks) {
            out.value = exact_value(best_lab);
            out.value_exact = true;
        } else if (difference_single_sign(s, best_lab)) {
            out.value = all_entries(best_lab);
            out.value_exact = true;
        } else {
            const Estimate e = estimate_matrix_cut(difference_doubles(s, best_lab), q, seed, kHeuristicRestarts);
            out.value = abs(difference_cut_sum(s, best_lab, e.rows, e.cols)) * norm;
        }
        if (one_arrangement && out.value_exact) out.exact = true;
    }
    out.certified = out.value_exact && out.value == out.lower_bound;
    out.exact = out.exact || out.certified;
    out.permutation = atom_permutation(s, best_lab);
    return out;
}

// ---------------------------------------------------------------- densities

namespace {

using EdgeMatrix = std::function<const RationalMatrix&(std::size_t)>;

Rational component_density(const SimpleGraph& h, const std::vector<std::size_t>& comp, const std::vector<Rational>& mu,
                           const EdgeMatrix& matrix) {
    const std::size_t k = mu.size();
    const auto& edges = h.edges();
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> incident(h.vertex_count());  // (neighbour, edge index)
    std::size_t edge_count = 0;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        incident[edges[e].first].emplace_back(edges[e].second, e);
        incident[edges[e].second].emplace_back(edges[e].first, e);
    }
    for (std::size_t v : comp) edge_count += incident[v].size();
    edge_count /= 2;
    if (edge_count == 0) return 1;

    // breadth-first order with the tree edge to each vertex
    std::vector<std::size_t> order{comp.front()}, position(h.vertex_count(), h.vertex_count());
    std::vector<std::pair<std::size_t, std::size_t>> parent(h.vertex_count(), {0, 0});
    position[comp.front()] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (const auto& [w, e] : incident[order[i]])
            if (position[w] == h.vertex_count()) {
                position[w] = order.size();
                parent[w] = {order[i], e};
                order.push_back(w);
            }

    if (edge_count + 1 == comp.size()) {
        // tree: pass messages from the leaves to the root
        std::vector<std::vector<Rational>> msg(h.vertex_count());
        for (std::size_t v : comp) msg[v].assign(k, 1);
        for (std::size_t i = order.size(); i-- > 1;) {
            const std::size_t c = order[i];
            const auto& [p, e] = parent[c];
            const RationalMatrix& m = matrix(e);
            std::vector<Rational> weighted(k);
            for (std::size_t y = 0; y < k; ++y) weighted[y] = mu[y] * msg[c][y];
            for (std::size_t x = 0; x < k; ++x) {
                Rational s = 0;
                for (std::size_t y = 0; y < k; ++y)
                    if (m[x][y] != 0) s += m[x][y] * weighted[y];
                msg[p][x] *= s;
            }
        }
        Rational total = 0;
        for (std::size_t x = 0; x < k; ++x) total += mu[x] * msg[order[0]][x];
        return total;
    }

    // general component: backtrack in breadth-first order
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> back(order.size());  // (earlier position, edge)
    for (std::size_t i = 0; i < order.size(); ++i)
        for (const auto& [w, e] : incident[order[i]])
            if (position[w] < i) back[i].emplace_back(position[w], e);
    std::vector<std::size_t> image(order.size());
    Rational total = 0;
    auto descend = [&](auto&& self, std::size_t i, const Rational& weight) -> void {
        if (i == order.size()) {
            total += weight;
            return;
        }
        for (std::size_t x = 0; x < k; ++x) {
            Rational w = weight * mu[x];
            for (const auto& [j, e] : back[i]) {
                const Rational& v = matrix(e)[image[j]][x];
                if (v == 0) {
                    w = 0;
                    break;
                }
                w *= v;
            }
            if (w == 0) continue;
            image[i] = x;
            self(self, i + 1, w);
        }
    };
    descend(descend, 0, Rational(1));
    return total;
}

Rational density_with(const SimpleGraph& h, const std::vector<Rational>& mu, const EdgeMatrix& matrix) {
    Rational total = 1;
    for (const auto& comp : h.components()) {
        total *= component_density(h, comp, mu, matrix);
        if (total == 0) break;
    }
    return total;
}

}  // namespace

Rational hom_density(const SimpleGraph& h, const StepKernel& w) {
    w.validate();
    return density_with(h, w.measures, [&](std::size_t) -> const RationalMatrix& { return w.values; });
}

Rational hom_density(const SimpleGraph& h, const StepGraphon& w) { return hom_density(h, w.kernel()); }

Integer hom_count(const SimpleGraph& h, const SimpleGraph& g) {
    const std::size_t n = g.vertex_count();
    const auto gadj = g.adjacency_lists();
    const auto hadj = h.adjacency_lists();
    Integer total = 1;
    for (const auto& comp : h.components()) {
        if (n == 0) return 0;
        // breadth-first order; each vertex is checked against earlier neighbours
        std::vector<std::size_t> order{comp.front()}, position(h.vertex_count(), h.vertex_count());
        position[comp.front()] = 0;
        for (std::size_t i = 0; i < order.size(); ++i)
            for (std::size_t w : hadj[order[i]])
                if (position[w] == h.vertex_count()) {
                    position[w] = order.size();
                    order.push_back(w);
                }
        std::vector<std::vector<std::size_t>> back(order.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            for (std::size_t w : hadj[order[i]])
                if (position[w] < i) back[i].push_back(position[w]);
        std::vector<std::size_t> image(order.size());
        std::uint64_t count = 0;
        auto descend = [&](auto&& self, std::size_t i) -> void {
            if (i == order.size()) {
                ++count;
                return;
            }
            auto try_vertex = [&](std::size_t x) {
                for (std::size_t j : back[i])
                    if (!g.adjacent(image[j], x)) return;
                image[i] = x;
                self(self, i + 1);
            };
            if (back[i].empty()) {
                for (std::size_t x = 0; x < n; ++x) try_vertex(x);
            } else {
                for (std::size_t x : gadj[image[back[i].front()]]) try_vertex(x);
            }
        };
        descend(descend, 0);
        total *= Integer(static_cast<unsigned long>(count));
        if (total == 0) break;
    }
    return total;
}

Rational hom_density_graph(const SimpleGraph& h, const SimpleGraph& g) {
    if (g.vertex_count() == 0) throw ValidationError("homomorphism density into the empty graph is undefined");
    Integer denom;
    mpz_ui_pow_ui(denom.get_mpz_t(), g.vertex_count(), h.vertex_count());
    Rational r(hom_count(h, g), denom);
    r.canonicalize();
    return r;
}

SimpleGraph sample_random_graph(std::size_t n, const StepGraphon& w, std::uint64_t seed) {
    if (n == 0) throw ValidationError("sample size must be at least 1");
    const std::size_t k = w.blocks();
    std::vector<std::uint64_t> cumulative(k);
    Rational c = 0;
    for (std::size_t b = 0; b < k; ++b) {
        c += w.measures()[b];
        cumulative[b] = probability_threshold(c);
    }
    std::vector<std::vector<std::uint64_t>> edge_threshold(k, std::vector<std::uint64_t>(k));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) edge_threshold[a][b] = probability_threshold(w.values()[a][b]);

    std::vector<std::size_t> block(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t x = unit53(stream_word(seed, 1, i));
        block[i] = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), x) - cumulative.begin());
        block[i] = std::min(block[i], k - 1);
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (unit53(stream_word(seed, 2, static_cast<std::uint64_t>(i) * n + j)) < edge_threshold[block[i]][block[j]])
                edges.emplace_back(i, j);
    return SimpleGraph(n, std::move(edges));
}

DensityFingerprint density_fingerprint(const StepGraphon& w, std::size_t max_edges) {
    if (max_edges > 5) throw SizeError("density fingerprints are limited to 5 edges (got " + std::to_string(max_edges) + ")");
    DensityFingerprint out;
    for (const auto& h : connected_graphs(max_edges)) out[to_graph6(h)] = hom_density(h, w);
    return out;
}

Rational gateaux_density_derivative(const SimpleGraph& h, const StepKernel& w, const StepKernel& d) {
    const auto [rw, rd] = common_refinement(w, d);
    if (rw.measures != rd.measures) throw RefinementError("direction and graphon do not share a partition after refinement");
    Rational total = 0;
    for (std::size_t e = 0; e < h.edge_count(); ++e)
        total += density_with(h, rw.measures, [&](std::size_t f) -> const RationalMatrix& { return f == e ? rd.values : rw.values; });
    return total;
}

Rational gateaux_density_derivative(const SimpleGraph& h, const StepGraphon& w, const StepKernel& d) {
    return gateaux_density_derivative(h, w.kernel(), d);
}

// ---------------------------------------------------------------- Feynman graphons

namespace {

void place_tree(const RootedTree& t, std::size_t& next, std::vector<Edge>& edges, std::size_t parent, bool has_parent) {
    const std::size_t self = next++;
    if (has_parent) edges.emplace_back(parent, self);
    for (const auto& c : t.children()) place_tree(c, next, edges, self, true);
}

}  // namespace

FeynmanGraphon feynman_graphon(const ForestSum& y, const Rational& coupling) {
    std::size_t total = 0;
    for (const auto& [f, c] : y.terms()) {
        if (c < 0 || c.get_den() != 1)
            throw UnsupportedError("Feynman graphons need nonnegative integer coefficients, got " + to_string(c) + " on " + to_string(f));
        if (f.empty()) throw ValidationError("the empty forest has no vertices to place in a graphon");
        total += c.get_num().get_ui() * f.grade();
    }
    if (total == 0) throw ValidationError("the forest sum has no vertices");

    FeynmanGraphon out;
    const Rational atom = make_rational(1, static_cast<long>(total));
    RationalMatrix values(total, std::vector<Rational>(total, 0));
    std::size_t next = 0;
    for (const auto& [f, c] : y.terms()) {
        Rational edge = rational_pow(coupling, static_cast<long>(f.grade()));
        edge = std::clamp(edge, Rational(0), Rational(1));
        for (unsigned long copy = 0; copy < c.get_num().get_ui(); ++copy) {
            FeynmanBlock block{f, copy, next, f.grade(), atom * Rational(static_cast<unsigned long>(f.grade())), edge};
            std::vector<Edge> edges;
            for (const auto& t : f.trees()) place_tree(t, next, edges, 0, false);
            for (const auto& [u, v] : edges) values[u][v] = values[v][u] = edge;
            out.blocks.push_back(std::move(block));
        }
    }
    out.graphon = StepGraphon(std::vector<Rational>(total, atom), std::move(values));
    return out;
}

std::vector<CutDistance> convergence_trace(const DSESolution& sol, std::size_t m, Mode mode, std::uint64_t seed) {
    if (m == 0) throw ValidationError("trace length must be at least 1");
    if (m > sol.order()) throw TruncationError("trace up to " + std::to_string(m) + " exceeds truncation order " + std::to_string(sol.order()));
    std::vector<CutDistance> out;
    FeynmanGraphon previous = feynman_graphon(partial_sum_unscaled(sol, 1), sol.coupling);
    for (std::size_t i = 1; i < m; ++i) {
        FeynmanGraphon next = feynman_graphon(partial_sum_unscaled(sol, i + 1), sol.coupling);
        out.push_back(cut_distance(previous.graphon, next.graphon, mode, seed));
        previous = std::move(next);
    }
    return out;
}

std::vector<CouplingFlowStep> coupling_flow_trace(const DSESolution& sol, std::size_t m, std::size_t n_max, Mode mode, std::uint64_t seed) {
    if (m == 0) throw ValidationError("partial sum order must be at least 1");
    const ForestSum y = partial_sum_unscaled(sol, m);
    const FeynmanGraphon reference = feynman_graphon(y, sol.coupling);
    std::vector<CouplingFlowStep> out;
    for (std::size_t n = 1; n <= n_max; ++n) {
        const Rational lambda = make_rational(static_cast<long>(n), static_cast<long>(n + 1));
        const FeynmanGraphon scaled = feynman_graphon(y, lambda * sol.coupling);
        out.push_back({n, lambda, cut_distance(scaled.graphon, reference.graphon, mode, seed)});
    }
    return out;
}

}  // namespace dysongraph
