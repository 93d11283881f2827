#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bcov/expr.hpp"
#include "bcov/models.hpp"
#include "bcov/pf.hpp"

using namespace bcov;

namespace {

pf::PFOperator elliptic_op() {
    // (1 - 432 x) theta^2 - 432 x theta - 60 x
    return pf::PFOperator({parse_rational_expr("-60*x").num(), parse_rational_expr("-432*x").num(),
                           parse_rational_expr("1-432*x").num()});
}

pf::PFOperator quintic_op() {
    return pf::PFOperator({parse_rational_expr("-120*x").num(), parse_rational_expr("-1250*x").num(),
                           parse_rational_expr("-4375*x").num(), parse_rational_expr("-6250*x").num(),
                           parse_rational_expr("1-3125*x").num()});
}

// (5n)! / (n!)^5, the closed form the quintic recursion must reproduce.
Rational quintic_coefficient(int n) {
    mpz_class num = 1, den = 1;
    for (int i = 2; i <= 5 * n; ++i) num *= i;
    for (int i = 2; i <= n; ++i) den *= i;
    mpz_class d5 = den * den * den * den * den;
    return Rational(mpq_class(num) / mpq_class(d5));
}

}  // namespace

TEST_CASE("holomorphic period of the elliptic operator") {
    pf::PeriodData pd = pf::frobenius_solve(elliptic_op(), 10);
    CHECK(pd.omega0.coeff(0) == Rational(1));
    CHECK(pd.omega0.coeff(1) == Rational(60));
    CHECK(pd.omega0.coeff(2) == Rational(13860));
    CHECK(pd.omega0.coeff(3) == Rational(4084080));
    // recursion oracle c_{n+1} = 12(6n+1)(6n+5) c_n / (n+1)^2
    Rational c(1);
    for (int n = 0; n < 9; ++n) {
        c = c * Rational(12 * (6 * n + 1) * (6 * n + 5)) / Rational((n + 1) * (n + 1));
        CHECK(pd.omega0.coeff(n + 1) == c);
    }
    CHECK(elliptic_op().apply(pd.omega0).is_identically_zero());
    CHECK(elliptic_op().apply(pd.omega1).is_identically_zero());
}

TEST_CASE("holomorphic period of the quintic operator") {
    pf::PeriodData pd = pf::frobenius_solve(quintic_op(), 8);
    for (int n = 0; n <= 8; ++n) CHECK(pd.omega0.coeff(n) == quintic_coefficient(n));
    CHECK(pd.omega0.coeff(1) == Rational(120));
    CHECK(pd.omega0.coeff(2) == Rational(113400));
    CHECK(pd.omega0.coeff(3) == Rational(168168000));
    CHECK(quintic_op().apply(pd.omega1).is_identically_zero());
}

TEST_CASE("degenerate operator gives omega0 = 1") {
    // theta^2 alone: every higher coefficient vanishes
    pf::PeriodData pd = pf::frobenius_solve(pf::PFOperator({Poly(), Poly(), Poly::constant(Rational(1))}), 6);
    CHECK(pd.omega0.coeff(0) == Rational(1));
    for (int n = 1; n <= 6; ++n) CHECK(pd.omega0.coeff(n) == Rational(0));
    pf::mirror_map(pd, 6);
    pf::HolLimitConnections h = pf::hol_connections(pd, 5);
    CHECK(h.ttK.is_identically_zero());
}

TEST_CASE("operator preconditions") {
    // not maximally unipotent: theta^2 - 1
    CHECK_THROWS(pf::frobenius_solve(
        pf::PFOperator({Poly::constant(Rational(-1)), Poly(), Poly::constant(Rational(1))}), 5));
    CHECK_THROWS(pf::frobenius_solve(elliptic_op(), 0));
    pf::PeriodData pd = pf::frobenius_solve(elliptic_op(), 4);
    CHECK_THROWS(pf::mirror_map(pd, 9));
}

TEST_CASE("elliptic mirror map and roundtrips") {
    pf::PeriodData pd = pf::frobenius_solve(elliptic_op(), 14);
    pf::mirror_map(pd, 14);
    CHECK(pd.x_of_q.valuation() == 1);
    CHECK(pd.x_of_q.coeff(1) == Rational(1));
    CHECK(pd.x_of_q.coeff(2) == Rational(-312));
    const TruncatedSeries r1 = pd.q_of_x.compose(pd.x_of_q);
    CHECK(agree_to_min_order(r1, TruncatedSeries::variable(12, 'q')));
    const TruncatedSeries r2 = pd.x_of_q.with_var('x').compose(pd.q_of_x);
    CHECK(agree_to_min_order(r2, TruncatedSeries::variable(12, 'x')));
    // T(x(q)) = log q exactly: x(q) * exp(regular part at x(q)) = q
    const TruncatedSeries treg = pd.bigT.regular().compose(pd.x_of_q);
    CHECK(agree_to_min_order(treg.exp() * pd.x_of_q, TruncatedSeries::variable(12, 'q')));
}

TEST_CASE("quintic mirror map") {
    pf::PeriodData pd = pf::frobenius_solve(quintic_op(), 12);
    pf::mirror_map(pd, 12);
    CHECK(pd.x_of_q.valuation() == 1);
    CHECK(pd.x_of_q.coeff(2) == Rational(-770));
    const TruncatedSeries r = pd.q_of_x.compose(pd.x_of_q);
    CHECK(agree_to_min_order(r, TruncatedSeries::variable(10, 'q')));
}

TEST_CASE("flat Yukawa normalization") {
    {
        pf::PeriodData pd = pf::frobenius_solve(elliptic_op(), 20);
        pf::mirror_map(pd, 20);
        const RationalFunction c = parse_rational_expr("1/((1-432*x)*x)");
        const TruncatedSeries y = pf::yukawa_flat_check(pd, c, 1, 15);
        CHECK(agree_to_min_order(y, TruncatedSeries::constant(Rational(1), 16, 'q')));
        CHECK(comparable_order(y, TruncatedSeries::constant(Rational(1), 16, 'q')) >= 16);
    }
    {
        pf::PeriodData pd = pf::frobenius_solve(quintic_op(), 14);
        pf::mirror_map(pd, 14);
        const RationalFunction c = parse_rational_expr("5/(x^3*(1-3125*x))");
        const TruncatedSeries y = pf::yukawa_flat_check(pd, c, 3, 8);
        CHECK(y.coeff(0) == Rational(5));
        // matches the x -> 0 limit of x^3 C(x)
        const RationalFunction x3c = c * RationalFunction(Poly::monomial(Rational(1), 3), Poly::constant(Rational(1)));
        CHECK(y.coeff(0) == x3c.eval(Rational(0)));
    }
}

TEST_CASE("holomorphic-limit connections of the elliptic family") {
    pf::PeriodData pd = pf::frobenius_solve(elliptic_op(), 14);
    pf::mirror_map(pd, 14);
    pf::HolLimitConnections h = pf::hol_connections(pd, 10);
    CHECK(h.ttK.coeff(0) == Rational(-60));
    CHECK(h.ttGamma.valuation() == -1);
    CHECK(h.ttGamma.coeff(-1) == Rational(-1));
    // ttK = -(log omega0)' by construction; cross-check against T' = C/omega0^2
    const RationalFunction c = parse_rational_expr("1/((1-432*x)*x)");
    const TruncatedSeries omega0 = pd.omega0.truncated(12);
    CHECK(agree_to_min_order(pd.t_prime, c.expand_at_zero(11) / (omega0 * omega0)));
}
