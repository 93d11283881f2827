#include "bcov/poly.hpp"

#include <sstream>
#include <stdexcept>

#include "bcov/series.hpp"

namespace bcov {

// ---------------------------------------------------------------- Poly

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly Poly::constant(const Rational& c) {
    Poly p;
    if (!c.is_zero()) p.coeffs_ = {c};
    return p;
}

Poly Poly::monomial(const Rational& c, int deg) {
    if (deg < 0) throw std::invalid_argument("Poly::monomial: negative degree");
    Poly p;
    if (!c.is_zero()) {
        p.coeffs_.assign(static_cast<size_t>(deg) + 1, Rational(0));
        p.coeffs_.back() = c;
    }
    return p;
}

Rational Poly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Rational(0);
    return coeffs_[static_cast<size_t>(k)];
}

const Rational& Poly::leading() const {
    if (is_zero()) throw std::domain_error("Poly::leading: zero polynomial");
    return coeffs_.back();
}

int Poly::valuation_at_zero() const {
    if (is_zero()) throw std::domain_error("Poly::valuation_at_zero: zero polynomial");
    int v = 0;
    while (coeffs_[static_cast<size_t>(v)].is_zero()) ++v;
    return v;
}

Poly Poly::operator-() const {
    Poly p(*this);
    for (auto& c : p.coeffs_) c = -c;
    return p;
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Poly(std::move(c));
}

Poly Poly::operator*(const Rational& c) const {
    if (c.is_zero()) return Poly();
    Poly p(*this);
    for (auto& x : p.coeffs_) x *= c;
    return p;
}

bool operator<(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int k = a.degree(); k >= 0; --k) {
        const Rational &ca = a.coeff(k), &cb = b.coeff(k);
        if (ca != cb) return ca < cb;
    }
    return false;
}

Poly Poly::derivative() const {
    if (coeffs_.size() <= 1) return Poly();
    std::vector<Rational> c(coeffs_.size() - 1);
    for (size_t i = 1; i < coeffs_.size(); ++i) c[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
    return Poly(std::move(c));
}

Rational Poly::eval(const Rational& x) const {
    Rational r(0);
    for (size_t i = coeffs_.size(); i-- > 0;) r = r * x + coeffs_[i];
    return r;
}

Poly Poly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("Poly::pow: negative exponent");
    Poly r = Poly::constant(Rational(1));
    Poly b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Poly Poly::shifted(int k) const {
    if (k < 0) throw std::invalid_argument("Poly::shifted: negative shift");
    if (is_zero()) return Poly();
    std::vector<Rational> c(static_cast<size_t>(k), Rational(0));
    c.insert(c.end(), coeffs_.begin(), coeffs_.end());
    return Poly(std::move(c));
}

void Poly::divmod(const Poly& d, Poly& q, Poly& r) const {
    if (d.is_zero()) throw std::domain_error("Poly::divmod: division by zero polynomial");
    std::vector<Rational> rem = coeffs_;
    std::vector<Rational> quo;
    const int dd = d.degree();
    while (static_cast<int>(rem.size()) - 1 >= dd) {
        while (!rem.empty() && rem.back().is_zero()) rem.pop_back();
        if (static_cast<int>(rem.size()) - 1 < dd) break;
        const int k = static_cast<int>(rem.size()) - 1 - dd;
        const Rational f = rem.back() / d.leading();
        if (static_cast<int>(quo.size()) < k + 1) quo.resize(static_cast<size_t>(k) + 1, Rational(0));
        quo[static_cast<size_t>(k)] += f;
        for (int i = 0; i <= dd; ++i) rem[static_cast<size_t>(k + i)] -= f * d.coeff(i);
        rem.pop_back();
    }
    q = Poly(std::move(quo));
    r = Poly(std::move(rem));
}

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly q, r;
        a.divmod(b, q, r);
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    return a * a.leading().inverse();  // monic
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        Rational c = coeff(k);
        if (c.is_zero()) continue;
        if (!first) os << (c.sign() > 0 ? " + " : " - ");
        else if (c.sign() < 0) os << "-";
        first = false;
        Rational a = abs(c);
        if (k == 0) {
            os << a.str();
        } else {
            if (a != Rational(1)) os << a.str() << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

// ---------------------------------------------------- RationalFunction

RationalFunction::RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("RationalFunction: zero denominator");
    reduce();
}

void RationalFunction::reduce() {
    if (num_.is_zero()) {
        den_ = Poly::constant(Rational(1));
        return;
    }
    Poly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
        Poly q, r;
        num_.divmod(g, q, r);
        num_ = q;
        den_.divmod(g, q, r);
        den_ = q;
    }
    const Rational lc = den_.leading();
    if (lc != Rational(1)) {
        const Rational inv = lc.inverse();
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

Rational RationalFunction::constant_value() const {
    if (!is_constant()) throw std::domain_error("RationalFunction: not a constant");
    return num_.coeff(0);
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r(*this);
    r.num_ = -r.num_;
    return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw std::domain_error("RationalFunction: division by zero function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction RationalFunction::operator*(const Rational& c) const {
    return RationalFunction(num_ * c, den_);
}

bool operator<(const RationalFunction& a, const RationalFunction& b) {
    if (a.num_ != b.num_) return a.num_ < b.num_;
    return a.den_ < b.den_;
}

RationalFunction RationalFunction::derivative() const {
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalFunction RationalFunction::inverse() const {
    if (is_zero()) throw std::domain_error("RationalFunction: inverse of zero");
    return RationalFunction(den_, num_);
}

RationalFunction RationalFunction::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    RationalFunction r(Rational(1));
    RationalFunction b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

RationalFunction RationalFunction::substitute(const RationalFunction& inner) const {
    // Horner evaluation of both polynomials at `inner`.
    auto eval_poly = [&inner](const Poly& p) {
        RationalFunction r(Rational(0));
        for (int k = p.degree(); k >= 0; --k) r = r * inner + RationalFunction(p.coeff(k));
        return r;
    };
    RationalFunction d = eval_poly(den_);
    if (d.is_zero()) throw std::domain_error("RationalFunction::substitute: denominator vanishes identically");
    return eval_poly(num_) / d;
}

Rational RationalFunction::eval(const Rational& x) const {
    const Rational d = den_.eval(x);
    if (d.is_zero()) throw std::domain_error("RationalFunction::eval: pole at evaluation point");
    return num_.eval(x) / d;
}

// Coefficients through exponent <= order (a Laurent head appears when the
// denominator vanishes at 0).
TruncatedSeries RationalFunction::expand_at_zero(int order, char var) const {
    if (is_zero()) return TruncatedSeries::zero(order + 1, var);
    const int vd = den_.valuation_at_zero();
    // num / (x^vd * d0) with d0(0) != 0: expand num/d0, then shift down.
    Poly d0;
    {
        std::vector<Rational> c;
        for (int k = vd; k <= den_.degree(); ++k) c.push_back(den_.coeff(k));
        d0 = Poly(std::move(c));
    }
    const int work = order + vd + 2;
    TruncatedSeries ns(var, 0, num_.coeffs(), work);
    TruncatedSeries ds(var, 0, d0.coeffs(), work);
    TruncatedSeries q = ns / ds;
    return q.shifted(-vd).truncated(order + 1);
}

std::string RationalFunction::str(const std::string& var) const {
    if (den_.degree() == 0 && den_.coeff(0) == Rational(1)) return num_.str(var);
    return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

}  // namespace bcov
