#ifndef BCOV_SERIES_HPP
#define BCOV_SERIES_HPP

#include <string>
#include <vector>

#include "bcov/rational.hpp"

namespace bcov {

// Truncated Laurent series with exact rational coefficients. A series
// stores coefficients for exponents in [lo, order): everything below lo
// is an exact zero, everything at or above `order` is unknown. All
// arithmetic propagates the weakest truncation of its operands, so a
// result is never reported to more precision than it actually has.
class TruncatedSeries {
public:
    TruncatedSeries() : var_('x'), lo_(0), order_(0) {}

    static TruncatedSeries zero(int order, char var = 'x');
    static TruncatedSeries constant(const Rational& c, int order, char var = 'x');
    static TruncatedSeries monomial(const Rational& c, int exp, int order, char var = 'x');
    static TruncatedSeries variable(int order, char var = 'x') {
        return monomial(Rational(1), 1, order, var);
    }
    TruncatedSeries(char var, int lo, std::vector<Rational> coeffs, int order);

    char var() const { return var_; }
    int order() const { return order_; }
    int lowest_exponent() const { return lo_; }
    bool is_identically_zero() const;  // zero at every tracked exponent
    // Smallest exponent with nonzero coefficient; order() if none tracked.
    int valuation() const;
    Rational coeff(int exp) const;  // exact for exp < order, throws beyond

    TruncatedSeries truncated(int new_order) const;
    TruncatedSeries with_var(char v) const;

    TruncatedSeries operator-() const;
    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b);
    TruncatedSeries operator*(const Rational& c) const;
    TruncatedSeries& operator+=(const TruncatedSeries& o) { return *this = *this + o; }
    TruncatedSeries& operator-=(const TruncatedSeries& o) { return *this = *this - o; }
    TruncatedSeries& operator*=(const TruncatedSeries& o) { return *this = *this * o; }

    TruncatedSeries shifted(int k) const;  // multiply by var^k
    TruncatedSeries inverse() const;       // needs a known nonzero lowest term
    TruncatedSeries pow(int e) const;
    TruncatedSeries derivative() const;    // d/dvar
    TruncatedSeries theta() const;         // var * d/dvar, loses no order
    // Antiderivative with zero constant term; the exponent -1 coefficient
    // must vanish (use log_part_integral when it may not).
    TruncatedSeries integral() const;
    TruncatedSeries exp() const;           // requires valuation >= 1

    // Substitute `inner` (valuation >= 1) for the variable. Laurent heads
    // are allowed when the inner series has valuation exactly 1.
    TruncatedSeries compose(const TruncatedSeries& inner) const;
    // Functional inverse g with (*this)(g(y)) = y; valuation must be 1.
    TruncatedSeries invert_functionally(char result_var) const;

    // Equality of all coefficients both sides can see.
    friend bool agree_to_min_order(const TruncatedSeries& a, const TruncatedSeries& b);
    // min(order of a, order of b): the range the comparison covered.
    friend int comparable_order(const TruncatedSeries& a, const TruncatedSeries& b);
    // First exponent where the two disagree, or order sentinel if none.
    friend int first_mismatch(const TruncatedSeries& a, const TruncatedSeries& b);

    std::string str() const;

private:
    void normalize();
    char var_;
    int lo_;
    int order_;
    std::vector<Rational> c_;  // c_[i] is the coefficient of var^(lo_+i)
};

// regular + log_coeff * log(x). One power of log is all the Frobenius
// bases here ever need.
class LogSeries {
public:
    LogSeries() = default;
    LogSeries(TruncatedSeries regular, TruncatedSeries log_coeff);

    const TruncatedSeries& regular() const { return reg_; }
    const TruncatedSeries& log_coeff() const { return log_; }

    friend LogSeries operator+(const LogSeries& a, const LogSeries& b);
    friend LogSeries operator-(const LogSeries& a, const LogSeries& b);
    LogSeries operator*(const TruncatedSeries& s) const;
    LogSeries operator*(const Rational& c) const;

    LogSeries derivative() const;  // d/dx, using d(log x) = 1/x
    LogSeries theta() const;       // x d/dx
    bool is_identically_zero() const;

private:
    TruncatedSeries reg_, log_;
};

}  // namespace bcov

#endif
