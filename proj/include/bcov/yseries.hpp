#ifndef BCOV_YSERIES_HPP
#define BCOV_YSERIES_HPP

#include <vector>

#include "bcov/series.hpp"

namespace bcov {

// Polynomial in a formal variable Y with truncated-series coefficients.
// Y stands for the normalized non-holomorphic building block 1/(2*pi*i)
// times 1/(tbar - t), so the derivative d/dx acts by d/dx Y = rule * Y^2
// for a series-valued rule supplied by the caller.
class YSeries {
public:
    YSeries() = default;
    explicit YSeries(TruncatedSeries constant_part) { c_.push_back(std::move(constant_part)); }

    static YSeries zero(int order, char var = 'x');
    // c * Y^k with the series 1 understood in the coefficient slot.
    static YSeries y_monomial(TruncatedSeries coeff, int ydeg);

    int y_degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 when empty
    // Coefficient of Y^k; a zero series (with the weakest tracked order) beyond the stored degree.
    TruncatedSeries y_coeff(int k) const;
    const std::vector<TruncatedSeries>& coeffs() const { return c_; }
    char var() const;
    int min_order() const;  // weakest truncation among stored coefficients

    YSeries operator-() const;
    friend YSeries operator+(const YSeries& a, const YSeries& b);
    friend YSeries operator-(const YSeries& a, const YSeries& b);
    friend YSeries operator*(const YSeries& a, const YSeries& b);
    YSeries operator*(const TruncatedSeries& s) const;
    YSeries operator*(const Rational& r) const;
    YSeries& operator+=(const YSeries& o) { return *this = *this + o; }
    YSeries& operator-=(const YSeries& o) { return *this = *this - o; }

    // d/dx with d/dx Y = rule * Y^2 applied by Leibniz; coefficients get
    // d/dx as truncated series.
    YSeries derive(const TruncatedSeries& rule) const;

    // The quotient map killing Y: the coefficient of Y^0.
    TruncatedSeries constant_term() const;

    // Substitute x -> inner in every coefficient (the formal Y survives:
    // it does not depend on the modulus coordinate).
    YSeries compose_x(const TruncatedSeries& inner) const;

    friend bool agree_to_min_order(const YSeries& a, const YSeries& b);
    friend bool is_zero_to_min_order(const YSeries& a);

    std::string str() const;

private:
    void normalize();
    std::vector<TruncatedSeries> c_;  // c_[k] multiplies Y^k
};

}  // namespace bcov

#endif
