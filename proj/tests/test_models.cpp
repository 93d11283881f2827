#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "bcov/expr.hpp"
#include "bcov/models.hpp"

using namespace bcov;
using namespace bcov::models;

namespace {

const std::string kModels = BCOV_MODELS_DIR;

ModelSpec load(const std::string& name) { return load_model(kModels + "/" + name + ".model"); }

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        path = std::string("/tmp/bcov_model_") + std::to_string(rand()) + ".model";
        std::ofstream f(path);
        f << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("bundled models load and carry the expected couplings") {
    const ModelSpec ell = load("elliptic");
    CHECK(ell.kind == "elliptic");
    CHECK(ell.yukawa == parse_rational_expr("1/((1-432*x)*x)"));
    CHECK(ell.yukawa_legs == 1);

    const ModelSpec q = load("quintic");
    CHECK(q.kind == "threefold");
    CHECK(q.yukawa == parse_rational_expr("5/(x^3*(1-3125*x))"));
    CHECK(*q.chi == -200);
    CHECK(*q.lift_f == parse_rational_expr("-(8/5)*(1/x)"));
    CHECK(*q.lift_h == parse_rational_expr("(2/25)*(1/x^2)"));
    CHECK(*q.e_xx == parse_rational_expr("x/25"));
    CHECK(*q.kappa * q.yukawa == *q.lift_h);

    const ModelSpec hk = load("hk_two_cusp");
    CHECK(hk.kind == "two_cusp");
    CHECK(hk.cusp_x.has_value());
    CHECK(hk.cusp_z.has_value());
}

TEST_CASE("schema violations are reported") {
    TempFile missing_yukawa(
        "name = broken\nkind = elliptic\nr = 1\npf = [ -60*x ; -432*x ; 1-432*x ]\n"
        "yukawa_legs = 1\n");
    CHECK_THROWS_WITH_AS(load_model(missing_yukawa.path),
                         doctest::Contains("missing required field 'yukawa'"),
                         std::runtime_error);

    TempFile bad_kind("name = broken\nkind = nonsense\nr = 1\n");
    CHECK_THROWS(load_model(bad_kind.path));

    TempFile not_unipotent(
        "name = broken\nkind = elliptic\nr = 1\npf = [ 1 ; 0 ; 1-432*x ]\n"
        "yukawa = 1/x\nyukawa_legs = 1\n");
    CHECK_THROWS_WITH_AS(load_model(not_unipotent.path), doctest::Contains("unipotent"),
                         std::runtime_error);

    // inconsistent kappa vs h-tilde
    TempFile bad_kappa(
        "name = broken\nkind = threefold\nr = 1\nchi = -200\n"
        "pf = [ -120*x ; -1250*x ; -4375*x ; -6250*x ; 1-3125*x ]\n"
        "yukawa = 5/(x^3*(1-3125*x))\nyukawa_legs = 3\n"
        "lift_f = -(8/5)/x\nlift_h = (2/25)/x^2\ne_xx = x/25\ne_x = -1/125\n"
        "e_s = (2/3125)/x\nkappa = x\n");
    CHECK_THROWS_WITH_AS(load_model(bad_kappa.path), doctest::Contains("h_tilde != C * kappa"),
                         std::runtime_error);

    TempFile unknown_field("name = broken\nkind = elliptic\nr = 1\n"
                           "pf = [ -60*x ; -432*x ; 1-432*x ]\nyukawa = 1/x\nyukawa_legs = 1\n"
                           "mystery = 1\n");
    CHECK_THROWS_WITH_AS(load_model(unknown_field.path), doctest::Contains("unknown field"),
                         std::runtime_error);
}

TEST_CASE("elliptic realization satisfies the closed derivation rules") {
    const ModelSpec m = load("elliptic");
    pf::PeriodData pd = pf::frobenius_solve(m.pf_op, 20);
    pf::mirror_map(pd, 20);
    const int N = 15;
    EllipticRealization er = elliptic_realization(pd, m.yukawa, N);
    const TruncatedSeries c = m.yukawa.expand_at_zero(N, 'x');

    // D S = -C S S with D = d/dx - 2 K on the weight (-2,0) scalar
    const YSeries ds = er.S.derive(er.dY_rule) - er.K * er.S * Rational(2);
    CHECK(agree_to_min_order(ds, -(er.S * er.S * c)));

    // D K = -K K - 60 C with D = d/dx - Gamma on the connection one-form
    const YSeries dk = er.K.derive(er.dY_rule) - er.Gamma * er.K;
    CHECK(agree_to_min_order(dk, -(er.K * er.K) - YSeries(c * Rational(60))));

    // D C = 0 with D = d/dx + 2K - Gamma on the weight (2,0) one-form
    const YSeries dc = YSeries(c.derivative()) + er.K * c * Rational(2) - er.Gamma * c;
    CHECK(is_zero_to_min_order(dc));

    // constant term of K is the holomorphic-limit connection
    const TruncatedSeries omega0 = pd.omega0.truncated(N + 1);
    CHECK(agree_to_min_order(er.K.constant_term(), -(omega0.derivative() / omega0)));

    // the constant-term map commutes with d/dx
    CHECK(agree_to_min_order(er.K.derive(er.dY_rule).constant_term(),
                             er.K.constant_term().derivative()));

    CHECK_THROWS(elliptic_realization(pd, m.yukawa, 40));
}

TEST_CASE("lambda lift family") {
    const ModelSpec m = load("elliptic");
    const auto table = lambda_lift_table();
    REQUIRE(table.size() == 4);
    CHECK(table[0].lambda == Rational(1, 144));
    CHECK(table[1].lambda == Rational(25, 144));
    CHECK(table[2].lambda == Rational(49, 144));
    CHECK(table[3].lambda == Rational(121, 144));
    for (const auto& lift : table) CHECK(lambda_lift_invariant_holds(lift, m.yukawa));

    // r = 0 is not a lift: E_x would be the constant -60, not lambda C
    LambdaLift zero{Rational(1, 144), RationalFunction(Rational(0)), false, false, ""};
    CHECK(!lambda_lift_invariant_holds(zero, m.yukawa));

    pf::PeriodData pd = pf::frobenius_solve(m.pf_op, 26);
    pf::mirror_map(pd, 26);
    for (const auto& lift : table) {
        const auto chk = tilde_s_modular_check(lift, pd, m.yukawa, 20);
        CHECK(chk.ok);
        CHECK(chk.compared_order >= 21);
    }
}

TEST_CASE("holomorphic-limit propagators: elliptic") {
    const ModelSpec m = load("elliptic");
    pf::PeriodData pd = pf::frobenius_solve(m.pf_op, 26);
    pf::mirror_map(pd, 26);
    HolPropagators props = hol_propagators(m, pd, 20);
    CHECK(!props.threefold);
    // ttS = -(1/12) E2(q) / omega0(x(q))^2 as a q-series
    const TruncatedSeries lhs = props.ttS.compose(pd.x_of_q);
    const TruncatedSeries om_q = pd.omega0.truncated(22).compose(pd.x_of_q);
    const TruncatedSeries rhs =
        -(modular::eisenstein(2, 20).series / (om_q * om_q)) * Rational(1, 12);
    CHECK(agree_to_min_order(lhs, rhs));
    CHECK(comparable_order(lhs, rhs) >= 20);
}

TEST_CASE("holomorphic-limit propagators: quintic ring data") {
    const ModelSpec m = load("quintic");
    pf::PeriodData pd = pf::frobenius_solve(m.pf_op, 24);
    pf::mirror_map(pd, 24);
    HolPropagators props = hol_propagators(m, pd, 16);
    CHECK(props.threefold);
    CHECK(props.ttSxx.valuation() >= 2);  // regular despite the Laurent inputs

    QuinticRingCheck chk = threefold_ring_check(m, pd, 14);
    CHECK(chk.res_sxx.is_identically_zero());
    CHECK(chk.res_sx.is_identically_zero());
    CHECK(chk.res_s.is_identically_zero());
    CHECK(chk.res_k.is_identically_zero());
    CHECK(chk.all_zero());
}

TEST_CASE("two-cusp tensor exchange") {
    const ModelSpec m = load("hk_two_cusp");
    // denominators as printed: (x-3)-powers times x-powers
    const Poly pole2 = parse_rational_expr("(x-3)^2").num();
    const Poly pole3 = parse_rational_expr("(x-3)^3").num();
    CHECK(m.cusp_x->e_xx.den() == pole2);
    CHECK(m.cusp_x->e_x.den() == pole2);
    CHECK(m.cusp_x->e_s.den() == pole3);
    CHECK(m.cusp_x->kappa_c.den() == parse_rational_expr("x^2").num());

    const CuspExchangeCheck chk = cusp_exchange_check(m);
    CHECK(chk.e_xx_ok);
    CHECK(chk.e_x_ok);
    CHECK(chk.e_s_ok);
    CHECK(chk.kappa_ok);

    // a perturbed tensor must fail the exchange
    ModelSpec bad = m;
    bad.cusp_z->e_x = bad.cusp_z->e_x * Rational(2);
    CHECK(!cusp_exchange_check(bad).e_x_ok);
}
