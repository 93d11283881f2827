#include "bcov/pf.hpp"

#include <stdexcept>

namespace bcov::pf {

namespace {

// a + b*eps with eps^2 = 0; carries the rho-derivative through the
// Frobenius recursion so one pass yields both the power series solution
// and the single-log partner.
struct Dual {
    Rational a, b;
    Dual() : a(0), b(0) {}
    Dual(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {}
    Dual operator+(const Dual& o) const { return {a + o.a, b + o.b}; }
    Dual operator-(const Dual& o) const { return {a - o.a, b - o.b}; }
    Dual operator*(const Dual& o) const { return {a * o.a, a * o.b + b * o.a}; }
    Dual operator/(const Dual& o) const {
        if (o.a.is_zero()) throw std::domain_error("Dual: division by nilpotent");
        const Rational inv = o.a.inverse();
        return {a * inv, (b * o.a - a * o.b) * inv * inv};
    }
    Dual pow(int e) const {
        Dual r(Rational(1), Rational(0));
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }
};

}  // namespace

PFOperator::PFOperator(std::vector<Poly> theta_coeffs) : p_(std::move(theta_coeffs)) {
    while (!p_.empty() && p_.back().is_zero()) p_.pop_back();
    if (p_.empty()) throw std::invalid_argument("PFOperator: zero operator");
}

bool PFOperator::is_maximally_unipotent() const {
    if (p_.back().coeff(0).is_zero()) return false;
    for (int k = 0; k < order(); ++k)
        if (!p_[static_cast<size_t>(k)].coeff(0).is_zero()) return false;
    return true;
}

TruncatedSeries PFOperator::apply(const TruncatedSeries& f) const {
    TruncatedSeries acc = TruncatedSeries::zero(f.order(), f.var());
    TruncatedSeries th = f;
    for (size_t k = 0; k < p_.size(); ++k) {
        if (!p_[k].is_zero())
            acc += th * TruncatedSeries(f.var(), 0, p_[k].coeffs(), f.order());
        th = th.theta();
    }
    return acc;
}

LogSeries PFOperator::apply(const LogSeries& f) const {
    const int order = f.regular().order();
    const char var = f.regular().var();
    LogSeries acc(TruncatedSeries::zero(order, var), TruncatedSeries::zero(order, var));
    LogSeries th = f;
    for (size_t k = 0; k < p_.size(); ++k) {
        if (!p_[k].is_zero()) {
            TruncatedSeries pk(var, 0, p_[k].coeffs(), order);
            acc = acc + th * pk;
        }
        th = th.theta();
    }
    return acc;
}

PeriodData frobenius_solve(const PFOperator& op, int order) {
    if (order < 1) throw std::invalid_argument("frobenius_solve: order must be >= 1");
    if (!op.is_maximally_unipotent())
        throw std::domain_error(
            "frobenius_solve: indicial polynomial at x=0 is not a pure power of theta");

    const int ord = op.order();
    const auto& p = op.theta_coeffs();
    int maxdeg = 0;
    for (const auto& pk : p) maxdeg = std::max(maxdeg, pk.degree());

    // Coefficients c_n(rho) of sum c_n x^(n+rho) for n <= order, expanded
    // to first order in rho about 0. The n-th relation reads
    //   p_top(0) * (rho+n)^ord * c_n = - sum_{j=1..n} P_j(rho+n-j) c_{n-j},
    // with P_j(u) = sum_k [x^j]p_k * u^k.
    std::vector<Dual> c(static_cast<size_t>(order) + 1);
    c[0] = Dual(Rational(1), Rational(0));
    const Rational top0 = p.back().coeff(0);
    for (int n = 1; n <= order; ++n) {
        Dual rhs(Rational(0), Rational(0));
        for (int j = 1; j <= std::min(n, maxdeg); ++j) {
            Dual u(Rational(n - j), Rational(1));  // rho + n - j at rho = eps
            Dual pj(Rational(0), Rational(0));
            Dual upow(Rational(1), Rational(0));
            for (int k = 0; k <= ord; ++k) {
                const Rational pkj = p[static_cast<size_t>(k)].coeff(j);
                if (!pkj.is_zero()) pj = pj + upow * Dual(pkj, Rational(0));
                upow = upow * u;
            }
            rhs = rhs - pj * c[static_cast<size_t>(n - j)];
        }
        const Dual lead = Dual(Rational(n), Rational(1)).pow(ord) * Dual(top0, Rational(0));
        c[static_cast<size_t>(n)] = rhs / lead;
    }

    std::vector<Rational> a, b;
    a.reserve(c.size());
    b.reserve(c.size());
    for (const auto& d : c) {
        a.push_back(d.a);
        b.push_back(d.b);
    }
    PeriodData pd;
    pd.omega0 = TruncatedSeries('x', 0, std::move(a), order + 1);
    TruncatedSeries sigma('x', 0, std::move(b), order + 1);
    pd.omega1 = LogSeries(sigma, pd.omega0);
    return pd;
}

void mirror_map(PeriodData& pd, int order, const Rational& omega1_shift) {
    if (pd.omega0.order() < order + 1)
        throw std::invalid_argument("mirror_map: Frobenius data is coarser than requested order");
    const TruncatedSeries omega0 = pd.omega0.truncated(order + 1);
    TruncatedSeries sigma = pd.omega1.regular().truncated(order + 1);
    if (!omega1_shift.is_zero()) sigma += omega0 * omega1_shift;

    // T = log x + sigma/omega0, q = x * exp(sigma/omega0).
    const TruncatedSeries s = sigma / omega0;
    pd.bigT = LogSeries(s, TruncatedSeries::constant(Rational(1), order + 1, 'x'));
    pd.q_of_x = s.exp().shifted(1);
    pd.x_of_q = pd.q_of_x.invert_functionally('q');
    if (pd.x_of_q.is_identically_zero() || pd.x_of_q.valuation() != 1)
        throw std::domain_error("mirror_map: inverse map lost valuation 1");
    pd.t_prime = s.derivative() + TruncatedSeries::monomial(Rational(1), -1, order, 'x');
    pd.mirror_map_ready = true;
}

TruncatedSeries yukawa_flat_check(const PeriodData& pd, const RationalFunction& yukawa, int legs,
                                  int order) {
    if (!pd.mirror_map_ready) throw std::logic_error("yukawa_flat_check: mirror map not built");
    const TruncatedSeries c = yukawa.expand_at_zero(order + 1, 'x');
    const TruncatedSeries omega0 = pd.omega0.truncated(order + 4);
    TruncatedSeries n = c / (omega0 * omega0);
    n = n * pd.t_prime.inverse().pow(legs);
    return n.compose(pd.x_of_q).truncated(order + 1);
}

HolLimitConnections hol_connections(const PeriodData& pd, int order) {
    if (!pd.mirror_map_ready) throw std::logic_error("hol_connections: mirror map not built");
    HolLimitConnections h;
    const TruncatedSeries omega0 = pd.omega0.truncated(order + 2);
    h.ttK = -(omega0.derivative() / omega0).truncated(order + 1);
    h.dtdx = pd.t_prime;
    h.ttGamma = pd.t_prime.derivative() / pd.t_prime;
    return h;
}

}  // namespace bcov::pf
