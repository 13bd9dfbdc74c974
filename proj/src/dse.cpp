#include "dysongraph/dse.hpp"

#include "dysongraph/errors.hpp"
#include "dysongraph/linalg.hpp"

#include <functional>

namespace dysongraph {

void DSESpec::validate() const {
    if (cocycles.empty()) throw ValidationError("DSE spec needs at least one cocycle");
    for (const auto& c : cocycles)
        if (c.omega == 0) throw ValidationError("cocycle weight for '" + c.decoration.label() + "' must be nonzero");
    for (std::size_t i = 0; i < cocycles.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (cocycles[i].decoration == cocycles[j].decoration)
                throw ValidationError("decoration '" + cocycles[i].decoration.label() + "' is used by two cocycles");
    if (order < 1) throw ValidationError("truncation order must be at least 1");
    if (coupling <= 0 || coupling > 1) throw ValidationError("coupling must lie in (0, 1]");
}

std::size_t DSESpec::loop_weight(const Decoration& d) const {
    for (std::size_t j = 0; j < cocycles.size(); ++j)
        if (cocycles[j].decoration == d) return j + 1;
    return 1;
}

namespace {

std::size_t loop_grade(const DSESpec& spec, const RootedTree& t) {
    std::size_t g = spec.loop_weight(Decoration(t.label()));
    for (const auto& child : t.children()) g += loop_grade(spec, child);
    return g;
}

}  // namespace

std::size_t loop_grade(const DSESpec& spec, const Forest& f) {
    std::size_t g = 0;
    for (const auto& t : f.trees()) g += loop_grade(spec, t);
    return g;
}

bool is_loop_homogeneous(const DSESpec& spec, const ForestSum& x, std::size_t n) {
    for (const auto& [f, c] : x.terms())
        if (loop_grade(spec, f) != n) return false;
    return true;
}

DSESpec single_cocycle_spec(std::size_t order, const std::string& label) {
    DSESpec spec;
    spec.cocycles.push_back({Decoration(label), 1});
    spec.order = order;
    return spec;
}

DSESolution solve(const DSESpec& spec) {
    spec.validate();
    const std::size_t N = spec.order;
    const std::size_t max_power = std::min(spec.cocycles.size(), N) + 1;

    DSESolution sol;
    sol.spec = spec;
    sol.coupling = spec.coupling;
    sol.coefficients.reserve(N + 1);
    sol.coefficients.push_back(ForestSum::unit());

    // powers[p][m] = coefficient of g^m in X^p, filled as X_m becomes known.
    std::vector<std::vector<ForestSum>> powers(max_power + 1);
    auto extend_powers = [&](std::size_t m) {
        powers[1].push_back(sol.coefficients[m]);
        for (std::size_t p = 2; p <= max_power; ++p) {
            ForestSum acc;
            for (std::size_t a = 0; a <= m; ++a) acc += sol.coefficients[a] * powers[p - 1][m - a];
            powers[p].push_back(std::move(acc));
        }
    };
    extend_powers(0);

    for (std::size_t n = 1; n <= N; ++n) {
        ForestSum xn;
        for (std::size_t j = 1; j <= std::min(n, spec.cocycles.size()); ++j) {
            const auto& cocycle = spec.cocycles[j - 1];
            xn += graft(cocycle.decoration, powers[j + 1][n - j]) * cocycle.omega;
        }
        sol.coefficients.push_back(std::move(xn));
        extend_powers(n);
    }
    return sol;
}

ForestSum partial_sum(const DSESolution& sol, std::size_t m) {
    if (m > sol.order())
        throw TruncationError("partial sum of order " + std::to_string(m) + " exceeds truncation order " +
                              std::to_string(sol.order()));
    ForestSum y;
    Rational weight = 1;
    for (std::size_t n = 1; n <= m; ++n) {
        weight *= sol.coupling;
        y += sol.coefficients[n] * weight;
    }
    return y;
}

ForestSum partial_sum_unscaled(const DSESolution& sol, std::size_t m) {
    if (m > sol.order())
        throw TruncationError("partial sum of order " + std::to_string(m) + " exceeds truncation order " +
                              std::to_string(sol.order()));
    ForestSum y;
    for (std::size_t n = 1; n <= m; ++n) y += sol.coefficients[n];
    return y;
}

DSESolution rescale(const DSESolution& sol, const Rational& lambda) {
    if (lambda <= 0 || lambda > 1) throw DomainError("rescaling factor must lie in (0, 1], got " + to_string(lambda));
    DSESolution out = sol;
    out.coupling = sol.coupling * lambda;
    out.spec.coupling = out.coupling;
    return out;
}

// ---- Hopf subalgebra witness ---------------------------------------------

std::size_t XMonomial::grade() const {
    std::size_t g = 0;
    for (std::size_t i = 0; i < exponents.size(); ++i) g += (i + 1) * exponents[i];
    return g;
}

std::string to_string(const XMonomial& m) {
    std::string out;
    for (std::size_t i = 0; i < m.exponents.size(); ++i) {
        if (m.exponents[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += "X" + std::to_string(i + 1);
        if (m.exponents[i] > 1) out += "^" + std::to_string(m.exponents[i]);
    }
    return out.empty() ? "1" : out;
}

std::vector<XMonomial> monomials_of_grade(std::size_t grade, std::size_t n) {
    std::vector<XMonomial> out;
    XMonomial current{std::vector<unsigned>(n, 0)};
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t index, std::size_t remaining) {
        if (index == n) {
            if (remaining == 0) out.push_back(current);
            return;
        }
        const std::size_t part = index + 1;
        for (unsigned e = 0; e * part <= remaining; ++e) {
            current.exponents[index] = e;
            rec(index + 1, remaining - e * part);
        }
        current.exponents[index] = 0;
    };
    rec(0, grade);
    return out;
}

ForestSum evaluate_monomial(const DSESolution& sol, const XMonomial& m) {
    ForestSum acc = ForestSum::unit();
    for (std::size_t i = 0; i < m.exponents.size(); ++i)
        for (unsigned e = 0; e < m.exponents[i]; ++e) acc = acc * sol[i + 1];
    return acc;
}

SubalgebraWitness subalgebra_witness(const DSESolution& sol, std::size_t n) {
    if (n > sol.order())
        throw TruncationError("witness order " + std::to_string(n) + " exceeds truncation order " + std::to_string(sol.order()));
    SubalgebraWitness w;
    w.n = n;
    const TensorSum target = coproduct(sol[n]);

    std::vector<std::pair<XMonomial, XMonomial>> unknowns;
    std::vector<TensorSum> columns;
    for (std::size_t p = 0; p <= n; ++p) {
        for (const auto& left : monomials_of_grade(p, n)) {
            const ForestSum lv = evaluate_monomial(sol, left);
            for (const auto& right : monomials_of_grade(n - p, n)) {
                unknowns.emplace_back(left, right);
                columns.push_back(tensor(lv, evaluate_monomial(sol, right)));
            }
        }
    }

    std::map<TensorSum::Key, std::size_t> row_of;
    auto index_rows = [&](const TensorSum& t) {
        for (const auto& [k, c] : t.terms()) row_of.try_emplace(k, row_of.size());
    };
    index_rows(target);
    for (const auto& c : columns) index_rows(c);

    RationalMatrix a(row_of.size(), std::vector<Rational>(unknowns.size(), Rational(0)));
    std::vector<Rational> b(row_of.size(), Rational(0));
    for (std::size_t j = 0; j < columns.size(); ++j)
        for (const auto& [k, c] : columns[j].terms()) a[row_of.at(k)][j] = c;
    for (const auto& [k, c] : target.terms()) b[row_of.at(k)] = c;
    w.unknowns = unknowns.size();
    w.equations = row_of.size();

    auto x = solve_linear(std::move(a), std::move(b));
    if (!x) {
        w.failure = "Delta(X_" + std::to_string(n) + ") has no expansion in A (x) A";
        return w;
    }
    TensorSum rebuilt;
    for (std::size_t j = 0; j < unknowns.size(); ++j) {
        if ((*x)[j] == 0) continue;
        w.decomposition[unknowns[j]] = (*x)[j];
        TensorSum piece = columns[j];
        piece *= (*x)[j];
        rebuilt += piece;
    }
    if (!(rebuilt == target)) throw InternalError("linear solve returned a non-solution");
    w.certified = true;
    return w;
}

}  // namespace dysongraph
