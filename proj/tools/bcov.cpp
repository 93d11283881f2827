// Command-line driver: period/mirror-map runs, identity verification
// suites, and the genus-by-genus anomaly solver. All output is exact; a
// run exits 0 only if every asserted identity passed.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bcov/models.hpp"
#include "bcov/solver.hpp"

using json = nlohmann::ordered_json;
using namespace bcov;

namespace {

json series_json(const TruncatedSeries& s) {
    json j;
    j["var"] = std::string(1, s.var());
    j["lowest"] = s.valuation();
    j["first_unknown"] = s.order();
    json coeffs = json::array();
    for (int e = s.valuation(); e < s.order(); ++e) coeffs.push_back(s.coeff(e).str());
    j["coefficients"] = coeffs;
    return j;
}

json ring_element_json(const ring::RingElement& e) {
    json j;
    j["weight"] = e.weight();
    json terms = json::object();
    for (const auto& [m, c] : e.terms()) terms[m.str()] = c.str();
    j["terms"] = terms;
    return j;
}

struct Report {
    json checks = json::array();
    bool all_pass = true;

    void check(const std::string& name, bool pass, const std::string& detail = "") {
        json c;
        c["name"] = name;
        c["pass"] = pass;
        if (!detail.empty()) c["detail"] = detail;
        checks.push_back(c);
        all_pass = all_pass && pass;
    }
};

void emit(json& j, const Report& r, const std::string& out_path,
          std::chrono::steady_clock::time_point t0) {
    j["checks"] = r.checks;
    j["pass"] = r.all_pass;
    j["wall_time_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
            .count();
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream f(out_path);
        f << j.dump(2) << "\n";
    }
}

void write_csv(const std::string& path, const std::vector<std::pair<std::string, TruncatedSeries>>& cols) {
    std::ofstream f(path);
    f << "exponent";
    for (const auto& [name, s] : cols) f << "," << name;
    f << "\n";
    int lo = 0, hi = 0;
    for (const auto& [name, s] : cols) {
        lo = std::min(lo, s.valuation());
        hi = std::max(hi, s.order());
    }
    for (int e = lo; e < hi; ++e) {
        f << e;
        for (const auto& [name, s] : cols) {
            f << ",";
            if (e < s.order()) f << s.coeff(e).str();
        }
        f << "\n";
    }
}

int run_pf(const models::ModelSpec& m, int order, const std::string& out, const std::string& csv) {
    const auto t0 = std::chrono::steady_clock::now();
    const int ord = std::max(order, 0);
    const int work = std::max(ord, 1) + 4;
    pf::PeriodData pd = pf::frobenius_solve(m.pf_op, work);
    pf::mirror_map(pd, work, m.omega1_shift);

    Report r;
    r.check("pf(omega0) = 0", m.pf_op.apply(pd.omega0).is_identically_zero());
    r.check("pf(omega1) = 0 (log and regular parts)", m.pf_op.apply(pd.omega1).is_identically_zero());
    const TruncatedSeries round1 = pd.q_of_x.compose(pd.x_of_q);
    r.check("q(x(q)) = q", agree_to_min_order(round1, TruncatedSeries::variable(ord, 'q')));
    const TruncatedSeries round2 = pd.x_of_q.with_var('x').compose(pd.q_of_x);
    r.check("x(q(x)) = x", agree_to_min_order(round2, TruncatedSeries::variable(ord, 'x')));
    const TruncatedSeries yuk = pf::yukawa_flat_check(pd, m.yukawa, m.yukawa_legs, ord);
    if (m.kind == "elliptic")
        r.check("normalized Yukawa = 1",
                agree_to_min_order(yuk, TruncatedSeries::constant(Rational(1), ord, 'q')));
    else {
        const Rational classical =
            (m.yukawa * RationalFunction(Poly::monomial(Rational(1), 3), Poly::constant(Rational(1))))
            .eval(Rational(0));
        r.check("normalized Yukawa constant term = x^3 C at x=0", yuk.coeff(0) == classical,
                "constant term " + yuk.coeff(0).str());
    }

    json j;
    j["command"] = "pf";
    j["model"] = m.name;
    j["order"] = ord;
    j["payloads"]["omega0"] = series_json(pd.omega0.truncated(ord + 1));
    j["payloads"]["x_of_q"] = series_json(pd.x_of_q.truncated(ord + 1));
    j["payloads"]["normalized_yukawa"] = series_json(yuk);
    if (!csv.empty())
        write_csv(csv, {{"omega0", pd.omega0.truncated(ord + 1)},
                        {"x_of_q", pd.x_of_q.truncated(ord + 1)},
                        {"normalized_yukawa", yuk}});
    emit(j, r, out, t0);
    return r.all_pass ? 0 : 1;
}

void suite_elliptic_identities(const models::ModelSpec& m, int order, Report& r) {
    if (m.kind != "elliptic")
        throw std::runtime_error("suite elliptic-identities needs an elliptic model");
    pf::PeriodData pd = pf::frobenius_solve(m.pf_op, order + 6);
    pf::mirror_map(pd, order + 6, m.omega1_shift);
    const TruncatedSeries om_q = pd.omega0.truncated(order + 2).compose(pd.x_of_q);
    const TruncatedSeries e4 = modular::eisenstein(4, order).series;
    r.check("omega0(x(q))^4 = E4(q)", agree_to_min_order(om_q.pow(4), e4));
    const TruncatedSeries c_q = m.yukawa.expand_at_zero(order + 2, 'x').compose(pd.x_of_q);
    r.check("omega0(x(q))^12 / C(x(q)) = eta(q)^24",
            agree_to_min_order(om_q.pow(12) / c_q, modular::eta24(order).series));
    r.check("C(x(q)) = j(q)", agree_to_min_order(c_q, modular::j_normalized(order).series));
    const TruncatedSeries yuk = pf::yukawa_flat_check(pd, m.yukawa, 1, order);
    r.check("(1/omega0^2) C dx/dT = 1",
            agree_to_min_order(yuk, TruncatedSeries::constant(Rational(1), order, 'q')));

    // the Y-ring derivation rules, exact in Q[[x]][Y]
    const int xord = std::max(order - 4, 8);
    models::EllipticRealization er = models::elliptic_realization(pd, m.yukawa, xord);
    const YSeries ds = er.S.derive(er.dY_rule) - er.K * er.S * Rational(2);
    r.check("D_x S = -C S S",
            agree_to_min_order(ds, -(er.S * er.S * m.yukawa.expand_at_zero(xord, 'x'))));
    const YSeries dk = er.K.derive(er.dY_rule) - er.Gamma * er.K;
    const YSeries rk = -(er.K * er.K) -
                       YSeries(m.yukawa.expand_at_zero(xord, 'x') * Rational(60));
    r.check("D_x K = -K K - 60 C", agree_to_min_order(dk, rk));
    const TruncatedSeries cx = m.yukawa.expand_at_zero(xord, 'x');
    const YSeries dc = YSeries(cx.derivative()) + er.K * cx * Rational(2) - er.Gamma * cx;
    r.check("D_x C = 0", is_zero_to_min_order(dc));
}

void suite_lambda_lifts(const models::ModelSpec& m, int order, Report& r) {
    if (m.kind != "elliptic")
        throw std::runtime_error("suite lambda-lifts needs an elliptic model");
    pf::PeriodData pd = pf::frobenius_solve(m.pf_op, order + 6);
    pf::mirror_map(pd, order + 6, m.omega1_shift);
    for (const auto& lift : models::lambda_lift_table()) {
        const std::string tag = "lambda = " + lift.lambda.str();
        r.check(tag + ": r' + C r^2 - 60 = lambda C",
                models::lambda_lift_invariant_holds(lift, m.yukawa));
        const auto chk = models::tilde_s_modular_check(lift, pd, m.yukawa, order);
        r.check(tag + ": S-tilde = -(1/12 omega0^2){" + lift.note + "}", chk.ok,
                chk.ok ? "agrees to q-order " + std::to_string(chk.compared_order)
                       : "first mismatch at q-order " + std::to_string(chk.first_mismatch));
    }
}

void suite_quintic_ring(const models::ModelSpec& m, int order, Report& r) {
    if (m.kind != "threefold")
        throw std::runtime_error("suite quintic-ring needs a threefold model with lift data");
    pf::PeriodData pd = pf::frobenius_solve(m.pf_op, order + 8);
    pf::mirror_map(pd, order + 8, m.omega1_shift);
    models::QuinticRingCheck chk = models::threefold_ring_check(m, pd, order);
    r.check("D S^xx = 2 S^x - C S^xx S^xx + E^xx", chk.res_sxx.is_identically_zero());
    r.check("D S^x = 2 S - C S^x S^xx + E^xx K + E^x", chk.res_sx.is_identically_zero());
    r.check("D S = -(1/2) C S^x S^x + (1/2) E^xx K K + E^x K + E", chk.res_s.is_identically_zero());
    r.check("D K = -K K + C S^xx K - C S^x + C kappa", chk.res_k.is_identically_zero());
}

void suite_modular(int order, Report& r) {
    const bool vacuous = order < 2;
    const int ord = std::max(order, 2);
    for (int k : {2, 4, 6}) {
        const auto ek = modular::eisenstein(k, ord);
        modular::QuasiModularPoly gen = k == 2   ? modular::QuasiModularPoly::gen_E2()
                                        : k == 4 ? modular::QuasiModularPoly::gen_E4()
                                                 : modular::QuasiModularPoly::gen_E6();
        const TruncatedSeries lhs = modular::ramanujan_derive(gen).evaluate(ord);
        r.check("q d/dq E" + std::to_string(k) + " matches the Ramanujan rule",
                agree_to_min_order(lhs, ek.series.theta()),
                vacuous ? "warning: vacuous at this order" : "");
    }
    const TruncatedSeries e4 = modular::eisenstein(4, ord).series;
    r.check("j * eta^24 = E4^3",
            agree_to_min_order(modular::j_normalized(ord).series * modular::eta24(ord).series,
                               e4.pow(3)));
    // E2-derivative recursion spot checks
    modular::ZTable table;
    table[{0, 1}] = modular::QuasiModularPoly::gen_E4();
    const auto z01 = modular::modular_anomaly_rhs(table, 0, 1);
    r.check("dZ_{0;1}/dE2 assembles to 0", z01.poly.is_zero());
    r.check("dZ_{0;1}/dE2 = 0 directly", modular::d_E2(table[{0, 1}]).is_zero());
    const auto z11 = modular::modular_anomaly_rhs(table, 1, 1);
    r.check("(g,n)=(1,1) rhs = Z_{0;1}/12",
            z11.poly == modular::QuasiModularPoly::gen_E4() * Rational(1, 12));
    const auto z02 = modular::modular_anomaly_rhs(table, 0, 2);
    r.check("(g,n)=(0,2) rhs = (1/24) Z_{0;1}^2",
            z02.poly == modular::QuasiModularPoly::gen_E4() * modular::QuasiModularPoly::gen_E4() *
                            Rational(1, 24));
}

int run_verify(const models::ModelSpec& m, const std::string& suite, int order,
               const std::string& out) {
    const auto t0 = std::chrono::steady_clock::now();
    Report r;
    if (suite == "elliptic-identities") suite_elliptic_identities(m, order, r);
    else if (suite == "lambda-lifts") suite_lambda_lifts(m, order, r);
    else if (suite == "quintic-ring") suite_quintic_ring(m, order, r);
    else if (suite == "modular") suite_modular(order, r);
    else throw CLI::ValidationError("--suite", "unknown suite '" + suite + "'");

    json j;
    j["command"] = "verify";
    j["model"] = m.name;
    j["suite"] = suite;
    j["order"] = order;
    emit(j, r, out, t0);
    return r.all_pass ? 0 : 1;
}

int run_solve(const models::ModelSpec& m, int gmax, const std::string& variant, bool emit_hol,
              int order, const std::string& out) {
    const auto t0 = std::chrono::steady_clock::now();
    const solver::Variant v =
        variant == "reduced" ? solver::Variant::Reduced : solver::Variant::Lifted;
    auto sols = solver::solve_to_genus(m, gmax, v);

    Report r;
    json payloads = json::object();
    for (const auto& s : sols) {
        const std::string tag = "F^(" + std::to_string(s.g) + ")";
        r.check(tag + " dF/dK = 0", s.k_constraint_ok);
        r.check(tag + " weight = " + std::to_string(2 - 2 * s.g),
                s.F.weight() == 2 - 2 * s.g &&
                    (v == solver::Variant::Reduced ? s.weight_ok : true),
                v == solver::Variant::Lifted ? "ambiguity terms carry weight in coefficients" : "");
        r.check(tag + " re-differentiation consistent", s.rediff_ok);
        payloads[tag] = ring_element_json(s.F);
    }
    if (emit_hol) {
        pf::PeriodData pd = pf::frobenius_solve(m.pf_op, order + 10);
        pf::mirror_map(pd, order + 10, m.omega1_shift);
        models::HolPropagators props = models::hol_propagators(m, pd, order + 6);
        for (const auto& s : sols) {
            const TruncatedSeries fq = solver::holomorphic_evaluate(s.F, m, pd, props, order);
            payloads["F_" + std::to_string(s.g) + "_of_q"] = series_json(fq);
        }
    }

    json j;
    j["command"] = "solve";
    j["model"] = m.name;
    j["gmax"] = gmax;
    j["variant"] = variant;
    j["order"] = order;
    j["payloads"] = payloads;
    emit(j, r, out, t0);
    return r.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact differential-ring engine for special-geometry propagator algebras"};
    app.require_subcommand(1);

    std::string model_arg, out, csv, suite = "elliptic-identities", variant = "reduced";
    std::string models_dir = "models";
    int order = 20, gmax = 2;
    bool emit_hol = false;

    auto add_common = [&](CLI::App* cmd, bool needs_model) {
        if (needs_model)
            cmd->add_option("--model", model_arg, "model name or path to a .model file")->required();
        cmd->add_option("--models-dir", models_dir, "directory with bundled model files");
        cmd->add_option("--order", order, "series truncation order");
        cmd->add_option("--out", out, "write the JSON report to this file");
    };

    CLI::App* pf_cmd = app.add_subcommand("pf", "periods, mirror map and Yukawa normalization");
    add_common(pf_cmd, true);
    pf_cmd->add_option("--csv", csv, "also write the series tables as CSV");

    CLI::App* verify_cmd = app.add_subcommand("verify", "run an identity suite");
    add_common(verify_cmd, true);
    verify_cmd->add_option("--suite", suite,
                           "elliptic-identities | lambda-lifts | quintic-ring | modular");

    CLI::App* solve_cmd = app.add_subcommand("solve", "solve the genus recursion");
    add_common(solve_cmd, true);
    solve_cmd->add_option("--genus", gmax, "solve up to this genus (>= 2)")->required();
    solve_cmd->add_option("--variant", variant, "reduced | lifted")
        ->check(CLI::IsMember({"reduced", "lifted"}));
    solve_cmd->add_flag("--emit-holomorphic", emit_hol, "also emit the q-series of each F^(g)");

    CLI11_PARSE(app, argc, argv);

    try {
        models::ModelSpec m = models::load_model(models::resolve_model_path(model_arg, models_dir));
        if (app.got_subcommand(pf_cmd)) return run_pf(m, order, out, csv);
        if (app.got_subcommand(verify_cmd)) return run_verify(m, suite, order, out);
        if (app.got_subcommand(solve_cmd)) return run_solve(m, gmax, variant, emit_hol, order, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
