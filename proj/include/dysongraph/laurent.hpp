#pragma once

// Truncated Laurent series in the regulator eps whose coefficients are
// polynomials in the external scale L with rational coefficients.

#include "dysongraph/rational.hpp"

#include <climits>
#include <map>
#include <optional>
#include <string>

namespace dysongraph {

/// Polynomial in the scale L.
class LPoly {
public:
    LPoly() = default;
    LPoly(const Rational& constant);  // NOLINT(google-explicit-constructor)
    static LPoly monomial(const Rational& coef, unsigned power);
    static LPoly scale() { return monomial(1, 1); }

    const std::map<unsigned, Rational>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    Rational coefficient(unsigned power) const;
    Rational evaluate(const Rational& L) const;
    /// d/dL
    LPoly derivative() const;

    LPoly& operator+=(const LPoly& o);
    LPoly& operator-=(const LPoly& o);
    LPoly& operator*=(const Rational& s);
    friend LPoly operator+(LPoly a, const LPoly& b) { return a += b; }
    friend LPoly operator-(LPoly a, const LPoly& b) { return a -= b; }
    friend LPoly operator-(LPoly a) { return a *= Rational(-1); }
    friend LPoly operator*(LPoly a, const Rational& s) { return a *= s; }
    friend LPoly operator*(const LPoly& a, const LPoly& b);
    friend bool operator==(const LPoly& a, const LPoly& b) { return a.terms_ == b.terms_; }

private:
    void add(unsigned power, const Rational& coef);
    std::map<unsigned, Rational> terms_;
};

std::string to_string(const LPoly& p);

/// Sum_{k = lo}^{precision} c_k(L) eps^k + O(eps^{precision+1}).
///
/// `lo` bounds the pole order from below. Coefficients above `precision`
/// are unknown: reading one throws TruncationError. Finite series (pole
/// parts, constants) carry precision == kExact and never truncate.
class LaurentSeries {
public:
    static constexpr int kExact = INT_MAX / 4;

    LaurentSeries() = default;
    LaurentSeries(const Rational& constant);  // NOLINT(google-explicit-constructor)
    LaurentSeries(const LPoly& constant);     // NOLINT(google-explicit-constructor)
    static LaurentSeries monomial(int power, const LPoly& coef, int precision = kExact);
    /// Zero series known only through eps^precision.
    static LaurentSeries zero(int precision = kExact);

    int lo() const noexcept { return lo_; }
    int precision() const noexcept { return hi_; }
    bool is_exact() const noexcept { return hi_ >= kExact; }
    const std::map<int, LPoly>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    /// Lowest power with a nonzero coefficient, or nullopt for the zero series.
    std::optional<int> valuation() const;

    /// Throws TruncationError for power > precision().
    LPoly coefficient(int power) const;

    /// Drops every term above `power` and lowers the precision to it.
    LaurentSeries truncated(int power) const;
    /// Strictly negative powers only (minimal subtraction); always exact.
    LaurentSeries pole_part() const;
    bool pole_free() const;
    LaurentSeries evaluate_scale(const Rational& L) const;
    LaurentSeries derivative_scale() const;

    LaurentSeries& operator+=(const LaurentSeries& o);
    LaurentSeries& operator-=(const LaurentSeries& o);
    LaurentSeries& operator*=(const Rational& s);
    friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
    friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
    friend LaurentSeries operator-(LaurentSeries a) { return a *= Rational(-1); }
    friend LaurentSeries operator*(LaurentSeries a, const Rational& s) { return a *= s; }
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);

    /// Equality of every coefficient both operands know; precisions may differ.
    bool agrees_with(const LaurentSeries& o) const;
    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
        return a.hi_ == b.hi_ && a.terms_ == b.terms_;
    }

private:
    void add_term(int power, const LPoly& coef);
    int lo_ = 0;
    int hi_ = kExact;
    std::map<int, LPoly> terms_;
};

/// Minimal-subtraction projector R.
inline LaurentSeries pole_part(const LaurentSeries& s) { return s.pole_part(); }

std::string to_string(const LaurentSeries& s);

}  // namespace dysongraph
