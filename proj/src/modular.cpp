#include "bcov/modular.hpp"

#include <sstream>
#include <stdexcept>

namespace bcov::modular {

QExpansion eisenstein(int k, int order) {
    long factor;
    switch (k) {
        case 2: factor = -24; break;
        case 4: factor = 240; break;
        case 6: factor = -504; break;
        default: throw std::invalid_argument("eisenstein: only k = 2, 4, 6 are provided");
    }
    if (order < 0) throw std::invalid_argument("eisenstein: negative order");
    std::vector<Rational> c(static_cast<size_t>(order) + 1, Rational(0));
    c[0] = Rational(1);
    for (int n = 1; n <= order; ++n) {
        // sigma_{k-1}(n)
        mpz_class s = 0;
        for (int d = 1; d <= n; ++d) {
            if (n % d == 0) {
                mpz_class dk = 1;
                for (int i = 0; i < k - 1; ++i) dk *= d;
                s += dk;
            }
        }
        c[static_cast<size_t>(n)] = Rational(mpq_class(s * factor));
    }
    return {TruncatedSeries('q', 0, std::move(c), order + 1), k, "E" + std::to_string(k)};
}

QExpansion eta24(int order) {
    if (order < 1) throw std::invalid_argument("eta24: order must be >= 1");
    // q * prod_{n>=1} (1 - q^n)^24; after the shift, factors with n >= order
    // cannot reach the tracked exponents.
    TruncatedSeries p = TruncatedSeries::constant(Rational(1), order, 'q');
    for (int n = 1; n < order; ++n) {
        TruncatedSeries f = TruncatedSeries::constant(Rational(1), order, 'q') -
                            TruncatedSeries::monomial(Rational(1), n, order, 'q');
        p = p * f.pow(24);
    }
    return {p.shifted(1), 12, "eta24"};
}

QExpansion j_normalized(int order) {
    QExpansion e4 = eisenstein(4, order + 2);
    QExpansion eta = eta24(order + 2);
    TruncatedSeries j = e4.series.pow(3) / eta.series;
    return {j.truncated(order + 1), 0, "j"};
}

// ---------------------------------------------------- QuasiModularPoly

void QuasiModularPoly::add_term(const Key& k, const Rational& c) {
    if (c.is_zero()) return;
    auto it = t_.find(k);
    if (it == t_.end()) {
        t_.emplace(k, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

QuasiModularPoly QuasiModularPoly::constant(const Rational& c) {
    QuasiModularPoly p;
    p.add_term({0, 0, 0}, c);
    return p;
}
QuasiModularPoly QuasiModularPoly::gen_E2() { return monomial(Rational(1), 1, 0, 0); }
QuasiModularPoly QuasiModularPoly::gen_E4() { return monomial(Rational(1), 0, 1, 0); }
QuasiModularPoly QuasiModularPoly::gen_E6() { return monomial(Rational(1), 0, 0, 1); }

QuasiModularPoly QuasiModularPoly::monomial(const Rational& c, int a, int b, int cdeg) {
    QuasiModularPoly p;
    p.add_term({a, b, cdeg}, c);
    return p;
}

bool QuasiModularPoly::is_homogeneous(int* weight_out) const {
    if (t_.empty()) {
        if (weight_out) *weight_out = 0;
        return true;
    }
    const int w = term_weight(t_.begin()->first);
    for (const auto& [k, c] : t_)
        if (term_weight(k) != w) return false;
    if (weight_out) *weight_out = w;
    return true;
}

QuasiModularPoly QuasiModularPoly::operator-() const {
    QuasiModularPoly p(*this);
    for (auto& [k, c] : p.t_) c = -c;
    return p;
}

QuasiModularPoly operator+(const QuasiModularPoly& a, const QuasiModularPoly& b) {
    QuasiModularPoly r(a);
    for (const auto& [k, c] : b.t_) r.add_term(k, c);
    return r;
}

QuasiModularPoly operator-(const QuasiModularPoly& a, const QuasiModularPoly& b) { return a + (-b); }

QuasiModularPoly operator*(const QuasiModularPoly& a, const QuasiModularPoly& b) {
    QuasiModularPoly r;
    for (const auto& [ka, ca] : a.t_)
        for (const auto& [kb, cb] : b.t_)
            r.add_term({ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]}, ca * cb);
    return r;
}

QuasiModularPoly QuasiModularPoly::operator*(const Rational& c) const {
    QuasiModularPoly r;
    if (c.is_zero()) return r;
    r.t_ = t_;
    for (auto& [k, v] : r.t_) v *= c;
    return r;
}

TruncatedSeries QuasiModularPoly::evaluate(int order) const {
    const TruncatedSeries e2 = eisenstein(2, order).series;
    const TruncatedSeries e4 = eisenstein(4, order).series;
    const TruncatedSeries e6 = eisenstein(6, order).series;
    TruncatedSeries r = TruncatedSeries::zero(order + 1, 'q');
    for (const auto& [k, c] : t_) r += e2.pow(k[0]) * e4.pow(k[1]) * e6.pow(k[2]) * c;
    return r;
}

std::string QuasiModularPoly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : t_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        if (k[0]) os << "*E2" << (k[0] > 1 ? "^" + std::to_string(k[0]) : "");
        if (k[1]) os << "*E4" << (k[1] > 1 ? "^" + std::to_string(k[1]) : "");
        if (k[2]) os << "*E6" << (k[2] > 1 ? "^" + std::to_string(k[2]) : "");
    }
    return os.str();
}

namespace {

// Images of the three generators under q d/dq.
const QuasiModularPoly& dE2_rule() {
    static const QuasiModularPoly r = (QuasiModularPoly::gen_E2() * QuasiModularPoly::gen_E2() -
                                       QuasiModularPoly::gen_E4()) *
                                      Rational(1, 12);
    return r;
}
const QuasiModularPoly& dE4_rule() {
    static const QuasiModularPoly r = (QuasiModularPoly::gen_E2() * QuasiModularPoly::gen_E4() -
                                       QuasiModularPoly::gen_E6()) *
                                      Rational(1, 3);
    return r;
}
const QuasiModularPoly& dE6_rule() {
    static const QuasiModularPoly r = (QuasiModularPoly::gen_E2() * QuasiModularPoly::gen_E6() -
                                       QuasiModularPoly::gen_E4() * QuasiModularPoly::gen_E4()) *
                                      Rational(1, 2);
    return r;
}

}  // namespace

QuasiModularPoly ramanujan_derive(const QuasiModularPoly& p) {
    QuasiModularPoly r;
    for (const auto& [k, c] : p.terms()) {
        if (k[0]) {
            QuasiModularPoly rest = QuasiModularPoly::monomial(c * Rational(k[0]), k[0] - 1, k[1], k[2]);
            r = r + rest * dE2_rule();
        }
        if (k[1]) {
            QuasiModularPoly rest = QuasiModularPoly::monomial(c * Rational(k[1]), k[0], k[1] - 1, k[2]);
            r = r + rest * dE4_rule();
        }
        if (k[2]) {
            QuasiModularPoly rest = QuasiModularPoly::monomial(c * Rational(k[2]), k[0], k[1], k[2] - 1);
            r = r + rest * dE6_rule();
        }
    }
    return r;
}

QuasiModularPoly d_E2(const QuasiModularPoly& p) {
    QuasiModularPoly r;
    for (const auto& [k, c] : p.terms())
        if (k[0]) r.add_term({k[0] - 1, k[1], k[2]}, c * Rational(k[0]));
    return r;
}

// ------------------------------------------------------ AlmostHolPoly

void AlmostHolPoly::add_term(const Key& k, const Rational& c) {
    if (c.is_zero()) return;
    auto it = t_.find(k);
    if (it == t_.end()) {
        t_.emplace(k, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

AlmostHolPoly::AlmostHolPoly(const QuasiModularPoly& p) {
    for (const auto& [k, c] : p.terms()) add_term({k[0], k[1], k[2], 0}, c);
}

AlmostHolPoly AlmostHolPoly::gen_Y() { return monomial(Rational(1), 0, 0, 0, 1); }

AlmostHolPoly AlmostHolPoly::gen_E2star() {
    AlmostHolPoly p = AlmostHolPoly(QuasiModularPoly::gen_E2());
    p.add_term({0, 0, 0, 1}, Rational(-12));
    return p;
}

AlmostHolPoly AlmostHolPoly::monomial(const Rational& c, int a, int b, int cdeg, int m) {
    AlmostHolPoly p;
    p.add_term({a, b, cdeg, m}, c);
    return p;
}

bool AlmostHolPoly::is_homogeneous(int* weight_out) const {
    if (t_.empty()) {
        if (weight_out) *weight_out = 0;
        return true;
    }
    const int w = term_weight(t_.begin()->first);
    for (const auto& [k, c] : t_)
        if (term_weight(k) != w) return false;
    if (weight_out) *weight_out = w;
    return true;
}

AlmostHolPoly AlmostHolPoly::operator-() const {
    AlmostHolPoly p(*this);
    for (auto& [k, c] : p.t_) c = -c;
    return p;
}

AlmostHolPoly operator+(const AlmostHolPoly& a, const AlmostHolPoly& b) {
    AlmostHolPoly r(a);
    for (const auto& [k, c] : b.t_) r.add_term(k, c);
    return r;
}

AlmostHolPoly operator-(const AlmostHolPoly& a, const AlmostHolPoly& b) { return a + (-b); }

AlmostHolPoly operator*(const AlmostHolPoly& a, const AlmostHolPoly& b) {
    AlmostHolPoly r;
    for (const auto& [ka, ca] : a.t_)
        for (const auto& [kb, cb] : b.t_)
            r.add_term({ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2], ka[3] + kb[3]}, ca * cb);
    return r;
}

AlmostHolPoly AlmostHolPoly::operator*(const Rational& c) const {
    AlmostHolPoly r;
    if (c.is_zero()) return r;
    r.t_ = t_;
    for (auto& [k, v] : r.t_) v *= c;
    return r;
}

YSeries AlmostHolPoly::evaluate(int order) const {
    YSeries r = YSeries::zero(order + 1, 'q');
    const TruncatedSeries e2 = eisenstein(2, order).series;
    const TruncatedSeries e4 = eisenstein(4, order).series;
    const TruncatedSeries e6 = eisenstein(6, order).series;
    for (const auto& [k, c] : t_)
        r += YSeries::y_monomial(e2.pow(k[0]) * e4.pow(k[1]) * e6.pow(k[2]) * c, k[3]);
    return r;
}

std::string AlmostHolPoly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : t_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        if (k[0]) os << "*E2" << (k[0] > 1 ? "^" + std::to_string(k[0]) : "");
        if (k[1]) os << "*E4" << (k[1] > 1 ? "^" + std::to_string(k[1]) : "");
        if (k[2]) os << "*E6" << (k[2] > 1 ? "^" + std::to_string(k[2]) : "");
        if (k[3]) os << "*Y" << (k[3] > 1 ? "^" + std::to_string(k[3]) : "");
    }
    return os.str();
}

AlmostHolPoly plain_q_derive(const AlmostHolPoly& p) {
    AlmostHolPoly r;
    const AlmostHolPoly de2(dE2_rule()), de4(dE4_rule()), de6(dE6_rule());
    for (const auto& [k, c] : p.terms()) {
        if (k[0]) r = r + AlmostHolPoly::monomial(c * Rational(k[0]), k[0] - 1, k[1], k[2], k[3]) * de2;
        if (k[1]) r = r + AlmostHolPoly::monomial(c * Rational(k[1]), k[0], k[1] - 1, k[2], k[3]) * de4;
        if (k[2]) r = r + AlmostHolPoly::monomial(c * Rational(k[2]), k[0], k[1], k[2] - 1, k[3]) * de6;
        if (k[3]) r.add_term({k[0], k[1], k[2], k[3] + 1}, c * Rational(k[3]));
    }
    return r;
}

AlmostHolPoly almost_hol_derive(const AlmostHolPoly& p) {
    AlmostHolPoly r = plain_q_derive(p);
    // weight term: - w * Y on each weight-w monomial
    for (const auto& [k, c] : p.terms()) {
        const int w = AlmostHolPoly::term_weight(k);
        if (w) r.add_term({k[0], k[1], k[2], k[3] + 1}, c * Rational(-w));
    }
    return r;
}

QuasiModularPoly kz_constant_term(const AlmostHolPoly& p) {
    QuasiModularPoly r;
    for (const auto& [k, c] : p.terms())
        if (k[3] == 0) r.add_term({k[0], k[1], k[2]}, c);
    return r;
}

ZEntry modular_anomaly_rhs(const ZTable& table, int g, int n) {
    if (g < 0 || n < 1) throw std::invalid_argument("modular_anomaly_rhs: need g >= 0, n >= 1");
    auto lookup = [&table](int gg, int nn) -> const QuasiModularPoly& {
        auto it = table.find({gg, nn});
        if (it == table.end())
            throw std::out_of_range("modular_anomaly_rhs: missing table entry (g=" +
                                    std::to_string(gg) + ", n=" + std::to_string(nn) + ")");
        return it->second;
    };
    QuasiModularPoly rhs;
    for (int gp = 0; gp <= g; ++gp) {
        const int gpp = g - gp;
        for (int s = 1; s <= n - 1; ++s) {
            const Rational w(static_cast<long>(s) * (n - s), 24);
            rhs = rhs + lookup(gp, s) * lookup(gpp, n - s) * w;
        }
    }
    if (g >= 1) rhs = rhs + lookup(g - 1, n) * Rational(static_cast<long>(n) * (n + 1), 24);
    return {n, rhs};
}

}  // namespace bcov::modular
