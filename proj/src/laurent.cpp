#include "dysongraph/laurent.hpp"

#include "dysongraph/errors.hpp"

#include <algorithm>

namespace dysongraph {

// ---- LPoly ----------------------------------------------------------------

LPoly::LPoly(const Rational& constant) { add(0, constant); }

LPoly LPoly::monomial(const Rational& coef, unsigned power) {
    LPoly p;
    p.add(power, coef);
    return p;
}

void LPoly::add(unsigned power, const Rational& coef) {
    if (coef == 0) return;
    auto [it, inserted] = terms_.try_emplace(power, coef);
    if (!inserted) {
        it->second += coef;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational LPoly::coefficient(unsigned power) const {
    auto it = terms_.find(power);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational LPoly::evaluate(const Rational& L) const {
    Rational acc = 0;
    for (const auto& [k, c] : terms_) acc += c * rational_pow(L, k);
    return acc;
}

LPoly LPoly::derivative() const {
    LPoly out;
    for (const auto& [k, c] : terms_)
        if (k > 0) out.add(k - 1, c * k);
    return out;
}

LPoly& LPoly::operator+=(const LPoly& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
}

LPoly& LPoly::operator-=(const LPoly& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
}

LPoly& LPoly::operator*=(const Rational& s) {
    if (s == 0) terms_.clear();
    for (auto& [k, c] : terms_) c *= s;
    return *this;
}

LPoly operator*(const LPoly& a, const LPoly& b) {
    LPoly out;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) out.add(ka + kb, ca * cb);
    return out;
}

std::string to_string(const LPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : p.terms()) {
        if (!first) out += " + ";
        first = false;
        out += "(" + to_string(c) + ")";
        if (k == 1) out += "*L";
        else if (k > 1) out += "*L^" + std::to_string(k);
    }
    return out;
}

// ---- LaurentSeries ----------------------------------------------------------

namespace {

int clamp_precision(long long p) {
    return p >= LaurentSeries::kExact / 2 ? LaurentSeries::kExact : static_cast<int>(p);
}

// Order of the first possibly-nonzero term (valuation, or precision+1 when
// nothing nonzero is known).
long long leading_order(const LaurentSeries& s) {
    if (auto v = s.valuation()) return *v;
    return s.is_exact() ? LaurentSeries::kExact : static_cast<long long>(s.precision()) + 1;
}

}  // namespace

LaurentSeries::LaurentSeries(const Rational& constant) : LaurentSeries(LPoly(constant)) {}

LaurentSeries::LaurentSeries(const LPoly& constant) { add_term(0, constant); }

LaurentSeries LaurentSeries::monomial(int power, const LPoly& coef, int precision) {
    if (power > precision) throw TruncationError("monomial above series precision");
    LaurentSeries s;
    s.hi_ = precision;
    s.lo_ = std::min(power, 0);
    s.add_term(power, coef);
    return s;
}

LaurentSeries LaurentSeries::zero(int precision) {
    LaurentSeries s;
    s.hi_ = precision;
    s.lo_ = std::min(0, precision);
    return s;
}

std::optional<int> LaurentSeries::valuation() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
}

void LaurentSeries::add_term(int power, const LPoly& coef) {
    if (coef.is_zero() || power > hi_) return;
    lo_ = std::min(lo_, power);
    auto [it, inserted] = terms_.try_emplace(power, coef);
    if (!inserted) {
        it->second += coef;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

LPoly LaurentSeries::coefficient(int power) const {
    if (power > hi_)
        throw TruncationError("coefficient of eps^" + std::to_string(power) + " requested but series is known only through eps^" +
                              std::to_string(hi_));
    auto it = terms_.find(power);
    return it == terms_.end() ? LPoly{} : it->second;
}

LaurentSeries LaurentSeries::truncated(int power) const {
    LaurentSeries out;
    out.lo_ = std::min(lo_, power);
    out.hi_ = std::min(hi_, power);
    for (const auto& [k, c] : terms_)
        if (k <= out.hi_) out.terms_.emplace(k, c);
    return out;
}

LaurentSeries LaurentSeries::pole_part() const {
    LaurentSeries out;
    out.lo_ = std::min(lo_, 0);
    for (const auto& [k, c] : terms_)
        if (k < 0) out.terms_.emplace(k, c);
    return out;
}

bool LaurentSeries::pole_free() const { return terms_.empty() || terms_.begin()->first >= 0; }

LaurentSeries LaurentSeries::evaluate_scale(const Rational& L) const {
    LaurentSeries out;
    out.lo_ = lo_;
    out.hi_ = hi_;
    for (const auto& [k, c] : terms_) out.add_term(k, LPoly(c.evaluate(L)));
    return out;
}

LaurentSeries LaurentSeries::derivative_scale() const {
    LaurentSeries out;
    out.lo_ = lo_;
    out.hi_ = hi_;
    for (const auto& [k, c] : terms_) out.add_term(k, c.derivative());
    return out;
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& o) {
    hi_ = std::min(hi_, o.hi_);
    lo_ = std::min(lo_, o.lo_);
    for (auto it = terms_.upper_bound(hi_); it != terms_.end();) it = terms_.erase(it);
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& o) { return *this += -o; }

LaurentSeries& LaurentSeries::operator*=(const Rational& s) {
    if (s == 0) terms_.clear();
    for (auto& [k, c] : terms_) c *= s;
    return *this;
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    LaurentSeries out;
    long long p1 = static_cast<long long>(a.hi_) + leading_order(b);
    long long p2 = static_cast<long long>(b.hi_) + leading_order(a);
    out.hi_ = clamp_precision(std::min(p1, p2));
    out.lo_ = a.lo_ + b.lo_;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_)
            if (ka + kb <= out.hi_) out.add_term(ka + kb, ca * cb);
    return out;
}

bool LaurentSeries::agrees_with(const LaurentSeries& o) const {
    int common = std::min(hi_, o.hi_);
    return truncated(common).terms_ == o.truncated(common).terms_;
}

std::string to_string(const LaurentSeries& s) {
    std::string out;
    bool first = true;
    for (const auto& [k, c] : s.terms()) {
        if (!first) out += " + ";
        first = false;
        out += "[" + to_string(c) + "]";
        if (k != 0) out += "*eps^" + std::to_string(k);
    }
    if (first) out = "0";
    if (!s.is_exact()) out += " + O(eps^" + std::to_string(s.precision() + 1) + ")";
    return out;
}

}  // namespace dysongraph
