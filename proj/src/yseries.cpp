#include "bcov/yseries.hpp"

#include <sstream>
#include <stdexcept>

namespace bcov {

void YSeries::normalize() {
    while (!c_.empty() && c_.back().is_identically_zero() && c_.size() > 1) c_.pop_back();
}

YSeries YSeries::zero(int order, char var) { return YSeries(TruncatedSeries::zero(order, var)); }

YSeries YSeries::y_monomial(TruncatedSeries coeff, int ydeg) {
    if (ydeg < 0) throw std::invalid_argument("YSeries: negative Y-degree");
    YSeries r;
    r.c_.assign(static_cast<size_t>(ydeg) + 1, TruncatedSeries::zero(coeff.order(), coeff.var()));
    r.c_.back() = std::move(coeff);
    return r;
}

TruncatedSeries YSeries::y_coeff(int k) const {
    if (k < 0) throw std::invalid_argument("YSeries: negative Y-degree");
    if (k < static_cast<int>(c_.size())) return c_[static_cast<size_t>(k)];
    return TruncatedSeries::zero(min_order(), var());
}

char YSeries::var() const { return c_.empty() ? 'x' : c_[0].var(); }

int YSeries::min_order() const {
    if (c_.empty()) throw std::domain_error("YSeries: empty");
    int m = c_[0].order();
    for (const auto& s : c_) m = std::min(m, s.order());
    return m;
}

YSeries YSeries::operator-() const {
    YSeries r(*this);
    for (auto& s : r.c_) s = -s;
    return r;
}

YSeries operator+(const YSeries& a, const YSeries& b) {
    YSeries r;
    const size_t n = std::max(a.c_.size(), b.c_.size());
    for (size_t k = 0; k < n; ++k) {
        if (k < a.c_.size() && k < b.c_.size())
            r.c_.push_back(a.c_[k] + b.c_[k]);
        else if (k < a.c_.size())
            r.c_.push_back(a.c_[k]);
        else
            r.c_.push_back(b.c_[k]);
    }
    r.normalize();
    return r;
}

YSeries operator-(const YSeries& a, const YSeries& b) { return a + (-b); }

YSeries operator*(const YSeries& a, const YSeries& b) {
    if (a.c_.empty() || b.c_.empty()) throw std::domain_error("YSeries: empty operand");
    YSeries r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1,
                TruncatedSeries::zero(std::min(a.min_order(), b.min_order()), a.var()));
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    r.normalize();
    return r;
}

YSeries YSeries::operator*(const TruncatedSeries& s) const {
    YSeries r(*this);
    for (auto& t : r.c_) t = t * s;
    r.normalize();
    return r;
}

YSeries YSeries::operator*(const Rational& q) const {
    YSeries r(*this);
    for (auto& t : r.c_) t = t * q;
    r.normalize();
    return r;
}

YSeries YSeries::derive(const TruncatedSeries& rule) const {
    if (c_.empty()) throw std::domain_error("YSeries: empty");
    YSeries r = YSeries::zero(min_order() - 1, var());
    for (size_t k = 0; k < c_.size(); ++k) {
        r += YSeries::y_monomial(c_[k].derivative(), static_cast<int>(k));
        if (k > 0)
            r += YSeries::y_monomial(c_[k] * rule * Rational(static_cast<long>(k)),
                                     static_cast<int>(k) + 1);
    }
    if (r.min_order() < 0)
        throw std::domain_error("YSeries::derive: truncation order underflow");
    return r;
}

TruncatedSeries YSeries::constant_term() const {
    if (c_.empty()) throw std::domain_error("YSeries: empty");
    return c_[0];
}

YSeries YSeries::compose_x(const TruncatedSeries& inner) const {
    YSeries r;
    for (const auto& s : c_) r.c_.push_back(s.compose(inner));
    r.normalize();
    return r;
}

bool agree_to_min_order(const YSeries& a, const YSeries& b) {
    const size_t n = std::max(a.c_.size(), b.c_.size());
    for (size_t k = 0; k < n; ++k) {
        if (!agree_to_min_order(a.y_coeff(static_cast<int>(k)), b.y_coeff(static_cast<int>(k))))
            return false;
    }
    return true;
}

bool is_zero_to_min_order(const YSeries& a) {
    for (const auto& s : a.c_)
        if (!s.is_identically_zero()) return false;
    return true;
}

std::string YSeries::str() const {
    std::ostringstream os;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (k > 0) os << " + ";
        os << "(" << c_[k].str() << ")";
        if (k == 1) os << "*Y";
        if (k > 1) os << "*Y^" << k;
    }
    return os.str();
}

}  // namespace bcov
