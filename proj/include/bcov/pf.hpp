#ifndef BCOV_PF_HPP
#define BCOV_PF_HPP

#include <vector>

#include "bcov/poly.hpp"
#include "bcov/series.hpp"

namespace bcov::pf {

// Linear ODE operator sum_k p_k(x) theta^k with theta = x d/dx. The solver
// below requires a maximally unipotent point at x = 0, i.e. the indicial
// polynomial there is p_top(0) * rho^order.
class PFOperator {
public:
    PFOperator() = default;
    explicit PFOperator(std::vector<Poly> theta_coeffs);

    int order() const { return static_cast<int>(p_.size()) - 1; }
    const std::vector<Poly>& theta_coeffs() const { return p_; }

    bool is_maximally_unipotent() const;

    TruncatedSeries apply(const TruncatedSeries& f) const;
    LogSeries apply(const LogSeries& f) const;

private:
    std::vector<Poly> p_;
};

// Frobenius data at the large complex structure point, with every 2*pi*i
// absorbed into normalized quantities: bigT = log(q) = log x + sigma/omega0,
// q_of_x = x * exp(sigma/omega0), and t_prime = dT/dx.
struct PeriodData {
    TruncatedSeries omega0;  // holomorphic period, omega0(0) = 1
    LogSeries omega1;        // omega0 * log x + sigma
    LogSeries bigT;          // normalized flat coordinate
    TruncatedSeries q_of_x;
    TruncatedSeries x_of_q;
    TruncatedSeries t_prime;  // dT/dx, Laurent head 1/x
    bool mirror_map_ready = false;
};

// Solves the ODE to the given x-order, returning omega0 and omega1 only.
PeriodData frobenius_solve(const PFOperator& op, int order);

// Completes PeriodData with the flat coordinate and its functional inverse.
// `omega1_shift` adds a constant multiple of omega0 to the single-log
// solution before normalizing (a symplectic-basis residue; usually 0).
void mirror_map(PeriodData& pd, int order, const Rational& omega1_shift = Rational(0));

// (1/omega0^2) * C(x) * (dx/dT)^legs as a q-series. `legs` is the tensor
// rank of the coupling: 1 for a curve, 3 for a threefold.
TruncatedSeries yukawa_flat_check(const PeriodData& pd, const RationalFunction& yukawa, int legs,
                                  int order);

struct HolLimitConnections {
    TruncatedSeries ttK;      // -(d/dx) log omega0
    TruncatedSeries ttGamma;  // (dx/dT) d/dx (dT/dx) = T''/T', Laurent head -1/x
    TruncatedSeries dtdx;     // T'
};

HolLimitConnections hol_connections(const PeriodData& pd, int order);

}  // namespace bcov::pf

#endif
