#include "bcov/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bcov {

namespace {
void require_same_var(const TruncatedSeries& a, const TruncatedSeries& b, const char* op) {
    if (a.var() != b.var())
        throw std::invalid_argument(std::string("series ") + op + ": variable mismatch ('" + a.var() +
                                    "' vs '" + b.var() + "')");
}
}  // namespace

TruncatedSeries::TruncatedSeries(char var, int lo, std::vector<Rational> coeffs, int order)
    : var_(var), lo_(lo), order_(order), c_(std::move(coeffs)) {
    if (static_cast<int>(c_.size()) > order_ - lo_) c_.resize(static_cast<size_t>(order_ - lo_));
    normalize();
}

void TruncatedSeries::normalize() {
    if (order_ < lo_) order_ = lo_;
    size_t skip = 0;
    while (skip < c_.size() && c_[skip].is_zero()) ++skip;
    if (skip > 0) {
        c_.erase(c_.begin(), c_.begin() + static_cast<long>(skip));
        lo_ += static_cast<int>(skip);
    }
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    if (c_.empty()) lo_ = order_;
}

TruncatedSeries TruncatedSeries::zero(int order, char var) {
    TruncatedSeries s;
    s.var_ = var;
    s.lo_ = order;
    s.order_ = order;
    return s;
}

TruncatedSeries TruncatedSeries::constant(const Rational& c, int order, char var) {
    return monomial(c, 0, order, var);
}

TruncatedSeries TruncatedSeries::monomial(const Rational& c, int exp, int order, char var) {
    TruncatedSeries s = zero(order, var);
    if (!c.is_zero() && exp < order) {
        s.lo_ = exp;
        s.c_ = {c};
    }
    return s;
}

bool TruncatedSeries::is_identically_zero() const { return c_.empty(); }

int TruncatedSeries::valuation() const { return c_.empty() ? order_ : lo_; }

Rational TruncatedSeries::coeff(int exp) const {
    if (exp >= order_)
        throw std::out_of_range("series coeff: exponent " + std::to_string(exp) +
                                " beyond truncation order " + std::to_string(order_));
    if (exp < lo_ || exp - lo_ >= static_cast<int>(c_.size())) return Rational(0);
    return c_[static_cast<size_t>(exp - lo_)];
}

TruncatedSeries TruncatedSeries::truncated(int new_order) const {
    TruncatedSeries s(*this);
    if (new_order < s.order_) {
        s.order_ = new_order;
        if (static_cast<int>(s.c_.size()) > s.order_ - s.lo_)
            s.c_.resize(static_cast<size_t>(std::max(0, s.order_ - s.lo_)));
        s.normalize();
    }
    return s;
}

TruncatedSeries TruncatedSeries::with_var(char v) const {
    TruncatedSeries s(*this);
    s.var_ = v;
    return s;
}

TruncatedSeries TruncatedSeries::operator-() const {
    TruncatedSeries s(*this);
    for (auto& c : s.c_) c = -c;
    return s;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_var(a, b, "add");
    const int order = std::min(a.order_, b.order_);
    const int lo = std::min(a.valuation(), b.valuation());
    if (lo >= order) return TruncatedSeries::zero(order, a.var_);
    std::vector<Rational> c(static_cast<size_t>(order - lo), Rational(0));
    for (int e = lo; e < order; ++e) {
        Rational v(0);
        if (e >= a.lo_ && e - a.lo_ < static_cast<int>(a.c_.size())) v += a.c_[static_cast<size_t>(e - a.lo_)];
        if (e >= b.lo_ && e - b.lo_ < static_cast<int>(b.c_.size())) v += b.c_[static_cast<size_t>(e - b.lo_)];
        c[static_cast<size_t>(e - lo)] = v;
    }
    return TruncatedSeries(a.var_, lo, std::move(c), order);
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return a + (-b); }

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_var(a, b, "mul");
    // valuation() falls back to order_ for a tracked zero, which makes this
    // formula cover exact-zero factors as well.
    const int order = std::min(a.order_ + b.valuation(), b.order_ + a.valuation());
    const int lo = a.lo_ + b.lo_;
    std::vector<Rational> c(static_cast<size_t>(std::max(0, order - lo)), Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        const int ea = a.lo_ + static_cast<int>(i);
        for (size_t j = 0; j < b.c_.size(); ++j) {
            const int e = ea + b.lo_ + static_cast<int>(j);
            if (e >= order) break;
            c[static_cast<size_t>(e - lo)] += a.c_[i] * b.c_[j];
        }
    }
    return TruncatedSeries(a.var_, lo, std::move(c), order);
}

TruncatedSeries TruncatedSeries::operator*(const Rational& r) const {
    if (r.is_zero()) return zero(order_, var_);
    TruncatedSeries s(*this);
    for (auto& c : s.c_) c *= r;
    return s;
}

TruncatedSeries TruncatedSeries::shifted(int k) const {
    TruncatedSeries s(*this);
    s.lo_ += k;
    s.order_ += k;
    return s;
}

TruncatedSeries TruncatedSeries::inverse() const {
    if (is_identically_zero())
        throw std::domain_error("series inverse: no known nonzero term up to order " +
                                std::to_string(order_));
    const int v = valuation();
    // f = c0 x^v (1 + g). Invert 1+g by the standard recursion, shift back.
    const int n = order_ - v;  // usable length of the unit part
    std::vector<Rational> u(static_cast<size_t>(n), Rational(0));
    const Rational c0inv = c_[0].inverse();
    std::vector<Rational> g(static_cast<size_t>(n), Rational(0));
    for (int i = 0; i < n && i < static_cast<int>(c_.size()); ++i) g[static_cast<size_t>(i)] = c_[static_cast<size_t>(i)] * c0inv;
    u[0] = Rational(1);
    for (int m = 1; m < n; ++m) {
        Rational s(0);
        for (int j = 1; j <= m; ++j) s += g[static_cast<size_t>(j)] * u[static_cast<size_t>(m - j)];
        u[static_cast<size_t>(m)] = -s;
    }
    for (auto& x : u) x *= c0inv;
    return TruncatedSeries(var_, -v, std::move(u), n - v);
}

TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) { return a * b.inverse(); }

TruncatedSeries TruncatedSeries::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    if (e == 0) return constant(Rational(1), order_, var_);
    TruncatedSeries r = *this;
    for (int i = 1; i < e; ++i) r = r * *this;
    return r;
}

TruncatedSeries TruncatedSeries::derivative() const {
    std::vector<Rational> c;
    c.reserve(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) {
        const int e = lo_ + static_cast<int>(i);
        c.push_back(c_[i] * Rational(e));
    }
    return TruncatedSeries(var_, lo_ - 1, std::move(c), order_ - 1);
}

TruncatedSeries TruncatedSeries::theta() const {
    std::vector<Rational> c;
    c.reserve(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c.push_back(c_[i] * Rational(lo_ + static_cast<int>(i)));
    return TruncatedSeries(var_, lo_, std::move(c), order_);
}

TruncatedSeries TruncatedSeries::integral() const {
    std::vector<Rational> c;
    c.reserve(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) {
        const int e = lo_ + static_cast<int>(i);
        if (e == -1) {
            if (!c_[i].is_zero())
                throw std::domain_error("series integral: nonzero 1/" + std::string(1, var_) +
                                        " term would need a logarithm");
            c.push_back(Rational(0));
            continue;
        }
        c.push_back(c_[i] / Rational(e + 1));
    }
    return TruncatedSeries(var_, lo_ + 1, std::move(c), order_ + 1);
}

TruncatedSeries TruncatedSeries::exp() const {
    if (!is_identically_zero() && valuation() < 1)
        throw std::domain_error("series exp: argument must have positive valuation");
    TruncatedSeries r = constant(Rational(1), order_, var_);
    TruncatedSeries term = r;
    Rational fact(1);
    for (int k = 1; k < order_; ++k) {
        term = term * *this;
        fact *= Rational(k);
        r += term * fact.inverse();
        if (term.is_identically_zero()) break;
    }
    return r;
}

TruncatedSeries TruncatedSeries::compose(const TruncatedSeries& inner) const {
    if (!inner.is_identically_zero() && inner.valuation() < 1)
        throw std::domain_error("series compose: inner series must have positive valuation");
    const char rv = inner.var_;
    if (lo_ < 0 && (inner.is_identically_zero() || inner.valuation() != 1))
        throw std::domain_error("series compose: Laurent head needs inner valuation exactly 1");
    if (order_ < 1)
        throw std::domain_error("series compose: outer series tracks no nonnegative exponents");
    TruncatedSeries result = TruncatedSeries::zero(order_ + (inner.is_identically_zero() ? 0 : inner.valuation() - 1), rv);
    // Nonnegative part by a full Horner sweep down to the constant term,
    // negative part via inverse powers.
    TruncatedSeries pos = TruncatedSeries::zero(inner.order_, rv);
    for (int e = order_ - 1; e >= 0; --e) {
        pos = pos * inner;
        const Rational ce = coeff(e);
        if (!ce.is_zero()) pos += TruncatedSeries::constant(ce, inner.order_, rv);
    }
    result = result + pos;
    if (lo_ < 0) {
        TruncatedSeries invg = inner.inverse();
        TruncatedSeries p = TruncatedSeries::constant(Rational(1), invg.order_ + 2 * (-lo_), rv);
        for (int e = -1; e >= lo_; --e) {
            p = p * invg;
            const Rational ce = coeff(e);
            if (!ce.is_zero()) result += p * ce;
        }
    }
    // The first dropped term of *this contributes at exponent >= order_.
    return result.truncated(std::min(result.order(), order_));
}

TruncatedSeries TruncatedSeries::invert_functionally(char result_var) const {
    if (is_identically_zero() || valuation() != 1)
        throw std::domain_error("functional inversion needs valuation exactly 1");
    const int n = order_;
    const Rational a1inv = coeff(1).inverse();
    TruncatedSeries g = TruncatedSeries::monomial(a1inv, 1, 2, result_var);
    for (int m = 2; m < n; ++m) {
        // Extend g by one term; the coefficient of y^m in f(g) is linear in it.
        TruncatedSeries gm(result_var, g.lowest_exponent(),
                           std::vector<Rational>(g.c_), m + 1);
        TruncatedSeries h = with_var(result_var).compose(gm);
        Rational err = h.coeff(m);
        g = gm + TruncatedSeries::monomial(-err * a1inv, m, m + 1, result_var);
    }
    return g;
}

int comparable_order(const TruncatedSeries& a, const TruncatedSeries& b) {
    return std::min(a.order_, b.order_);
}

bool agree_to_min_order(const TruncatedSeries& a, const TruncatedSeries& b) {
    return first_mismatch(a, b) >= comparable_order(a, b);
}

int first_mismatch(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_var(a, b, "compare");
    const int order = comparable_order(a, b);
    const int lo = std::min(a.valuation(), b.valuation());
    for (int e = lo; e < order; ++e) {
        if (a.coeff(e) != b.coeff(e)) return e;
    }
    return order;
}

std::string TruncatedSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        const int e = lo_ + static_cast<int>(i);
        if (!first) os << (c_[i].sign() > 0 ? " + " : " - ");
        else if (c_[i].sign() < 0) os << "-";
        first = false;
        const Rational a = abs(c_[i]);
        if (e == 0) os << a.str();
        else {
            if (a != Rational(1)) os << a.str() << "*";
            os << var_;
            if (e != 1) os << "^" << e;
        }
    }
    if (first) os << "0";
    os << " + O(" << var_ << "^" << order_ << ")";
    return os.str();
}

// ------------------------------------------------------------ LogSeries

LogSeries::LogSeries(TruncatedSeries regular, TruncatedSeries log_coeff)
    : reg_(std::move(regular)), log_(std::move(log_coeff)) {
    if (reg_.var() != log_.var()) throw std::invalid_argument("LogSeries: variable mismatch");
}

LogSeries operator+(const LogSeries& a, const LogSeries& b) {
    return LogSeries(a.reg_ + b.reg_, a.log_ + b.log_);
}

LogSeries operator-(const LogSeries& a, const LogSeries& b) {
    return LogSeries(a.reg_ - b.reg_, a.log_ - b.log_);
}

LogSeries LogSeries::operator*(const TruncatedSeries& s) const {
    return LogSeries(reg_ * s, log_ * s);
}

LogSeries LogSeries::operator*(const Rational& c) const { return LogSeries(reg_ * c, log_ * c); }

LogSeries LogSeries::derivative() const {
    return LogSeries(reg_.derivative() + log_.shifted(-1), log_.derivative());
}

LogSeries LogSeries::theta() const { return LogSeries(reg_.theta() + log_, log_.theta()); }

bool LogSeries::is_identically_zero() const {
    return reg_.is_identically_zero() && log_.is_identically_zero();
}

}  // namespace bcov
