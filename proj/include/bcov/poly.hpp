#ifndef BCOV_POLY_HPP
#define BCOV_POLY_HPP

#include <string>
#include <vector>

#include "bcov/rational.hpp"

namespace bcov {

class TruncatedSeries;

// Dense univariate polynomial over Q. Trailing zero coefficients are
// trimmed, so coeffs_.size() == degree+1 (empty means the zero polynomial).
class Poly {
public:
    Poly() = default;
    Poly(std::initializer_list<Rational> c) : coeffs_(c) { trim(); }
    explicit Poly(std::vector<Rational> c) : coeffs_(std::move(c)) { trim(); }
    static Poly constant(const Rational& c);
    static Poly monomial(const Rational& c, int deg);
    static Poly variable() { return monomial(Rational(1), 1); }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
    Rational coeff(int k) const;
    const Rational& leading() const;
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    // Multiplicity of the root x = 0.
    int valuation_at_zero() const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator*(const Rational& c) const;
    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    // Degree-lexicographic order, used as a canonical map key.
    friend bool operator<(const Poly& a, const Poly& b);

    Poly derivative() const;
    Rational eval(const Rational& x) const;
    Poly pow(int e) const;
    Poly shifted(int k) const;  // multiply by x^k, k >= 0

    // Euclidean division: *this = q*d + r with deg r < deg d.
    void divmod(const Poly& d, Poly& q, Poly& r) const;

    std::string str(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

Poly poly_gcd(Poly a, Poly b);  // monic gcd

// Reduced ratio of polynomials: gcd(num, den) = 1 and den monic.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(Poly::constant(Rational(1))) {}
    RationalFunction(const Rational& c) : num_(Poly::constant(c)), den_(Poly::constant(Rational(1))) {}
    RationalFunction(Poly num, Poly den);
    static RationalFunction variable() { return RationalFunction(Poly::variable(), Poly::constant(Rational(1))); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
    Rational constant_value() const;  // requires is_constant()

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction operator*(const Rational& c) const;
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }
    friend bool operator<(const RationalFunction& a, const RationalFunction& b);

    RationalFunction derivative() const;
    RationalFunction inverse() const;
    RationalFunction pow(int e) const;
    RationalFunction substitute(const RationalFunction& inner) const;
    Rational eval(const Rational& x) const;

    // Laurent expansion about x = 0 (pole orders come out as negative
    // exponents), exact to the requested order.
    TruncatedSeries expand_at_zero(int order, char var = 'x') const;

    std::string str(const std::string& var = "x") const;

private:
    void reduce();
    Poly num_, den_;
};

}  // namespace bcov

#endif
