#include "bcov/models.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bcov/expr.hpp"

namespace bcov::models {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
    throw std::runtime_error("model file '" + path + "': " + what);
}

}  // namespace

std::string resolve_model_path(const std::string& name_or_path, const std::string& models_dir) {
    if (name_or_path.find('/') != std::string::npos || name_or_path.find(".model") != std::string::npos)
        return name_or_path;
    return models_dir + "/" + name_or_path + ".model";
}

ModelSpec load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("model file '" + path + "': cannot open");

    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            schema_error(path, "line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            schema_error(path, "line " + std::to_string(lineno) + ": empty key or value");
        if (kv.count(key)) schema_error(path, "duplicate key '" + key + "'");
        kv[key] = val;
    }

    auto take = [&kv](const std::string& key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    auto require = [&](const std::string& key) {
        auto v = take(key);
        if (!v) schema_error(path, "missing required field '" + key + "'");
        return *v;
    };
    auto parse_rf = [&](const std::string& key, const std::string& text, char var) {
        try {
            return parse_rational_expr(text, var);
        } catch (const std::exception& e) {
            schema_error(path, "field '" + key + "': " + e.what());
        }
    };

    ModelSpec m;
    m.name = require("name");
    m.kind = require("kind");
    if (m.kind != "elliptic" && m.kind != "threefold" && m.kind != "two_cusp")
        schema_error(path, "unknown kind '" + m.kind + "'");
    m.r = std::stoi(require("r"));
    if (m.r != 1) schema_error(path, "only one-modulus models are supported (r = 1)");

    if (auto v = take("chi")) m.chi = std::stol(*v);
    if (auto v = take("omega1_shift")) m.omega1_shift = Rational(*v);

    if (m.has_periods()) {
        const std::string pf = require("pf");
        if (pf.front() != '[' || pf.back() != ']')
            schema_error(path, "pf must be a '[ p0 ; p1 ; ... ]' list of theta-coefficients");
        std::vector<Poly> coeffs;
        std::stringstream ss(pf.substr(1, pf.size() - 2));
        std::string piece;
        while (std::getline(ss, piece, ';')) {
            RationalFunction p = parse_rf("pf", trim(piece), 'x');
            if (p.den().degree() != 0)
                schema_error(path, "pf coefficients must be polynomials");
            coeffs.push_back(p.num() * p.den().coeff(0).inverse());
        }
        m.pf_op = pf::PFOperator(std::move(coeffs));
        if (!m.pf_op.is_maximally_unipotent())
            schema_error(path, "pf operator is not maximally unipotent at x = 0");

        m.yukawa = parse_rf("yukawa", require("yukawa"), 'x');
        if (m.yukawa.is_zero()) schema_error(path, "yukawa must be nonzero");
        m.yukawa_legs = std::stoi(require("yukawa_legs"));
        if (m.yukawa_legs != 1 && m.yukawa_legs != 3)
            schema_error(path, "yukawa_legs must be 1 (curve) or 3 (threefold)");
    }

    if (m.kind == "threefold") {
        if (!m.chi) schema_error(path, "missing required field 'chi'");
        m.lift_f = parse_rf("lift_f", require("lift_f"), 'x');
        m.lift_h = parse_rf("lift_h", require("lift_h"), 'x');
        m.e_xx = parse_rf("e_xx", require("e_xx"), 'x');
        m.e_x = parse_rf("e_x", require("e_x"), 'x');
        m.e_s = parse_rf("e_s", require("e_s"), 'x');
        m.kappa = parse_rf("kappa", require("kappa"), 'x');
        // The two routes to the K-equation inhomogeneity must agree.
        if (*m.lift_h != m.yukawa * *m.kappa)
            schema_error(path,
                         "inconsistent lift data: h_tilde != C * kappa (violated equation: "
                         "d K - K^2 = -C S^x + f_tilde K + h_tilde vs D K rule)");
    }

    if (m.kind == "two_cusp") {
        auto read_cusp = [&](const std::string& prefix, char var) {
            CuspTensors t;
            t.var = var;
            t.e_xx = parse_rf(prefix + "e_xx", require(prefix + "e_xx"), var);
            t.e_x = parse_rf(prefix + "e_x", require(prefix + "e_x"), var);
            t.e_s = parse_rf(prefix + "e_s", require(prefix + "e_s"), var);
            t.kappa_c = parse_rf(prefix + "kappa_c", require(prefix + "kappa_c"), var);
            return t;
        };
        m.cusp_x = read_cusp("cuspx_", 'x');
        m.cusp_z = read_cusp("cuspz_", 'z');
    }

    for (int g = 2; g <= 16; ++g) {
        if (auto v = take("ambiguity_" + std::to_string(g)))
            m.ambiguities[g] = parse_rf("ambiguity", *v, 'x');
    }
    if (auto v = take("f0")) m.f0 = parse_rf("f0", *v, 'x');

    if (!kv.empty()) schema_error(path, "unknown field '" + kv.begin()->first + "'");
    return m;
}

// ------------------------------------------------- elliptic realization

EllipticRealization elliptic_realization(const pf::PeriodData& pd, const RationalFunction& yukawa,
                                         int order) {
    if (pd.omega0.order() < order + 1)
        throw std::invalid_argument("elliptic_realization: period data coarser than requested order");
    EllipticRealization er;
    er.order = order;
    er.C = yukawa;
    const TruncatedSeries omega0 = pd.omega0.truncated(order + 2);
    const TruncatedSeries cser = yukawa.expand_at_zero(order + 1, 'x');
    const TruncatedSeries u = cser / (omega0 * omega0);  // C/omega0^2, head 1/x
    const TruncatedSeries dlog_omega0 = omega0.derivative() / omega0;
    er.dY_rule = u;
    er.S = YSeries::y_monomial((omega0 * omega0).inverse(), 1);
    er.K = YSeries::y_monomial(u, 1) + YSeries(-dlog_omega0);
    // Gamma^x_xx = 2 C S + d/dx log(C/omega0^2)
    const TruncatedSeries dlog_u = u.derivative() / u;
    er.Gamma = YSeries::y_monomial(u * Rational(2), 1) + YSeries(dlog_u);
    return er;
}

// ----------------------------------------------------- lambda lift data

namespace {

RationalFunction elliptic_yukawa() {
    // 1/((1-432x) x)
    Poly den({Rational(0), Rational(1), Rational(-432)});
    return RationalFunction(Poly::constant(Rational(1)), den);
}

RationalFunction one_over(const Poly& p) {
    return RationalFunction(Poly::constant(Rational(1)), p);
}

}  // namespace

std::vector<LambdaLift> lambda_lift_table() {
    const RationalFunction c = elliptic_yukawa();
    const RationalFunction base = c.derivative() / (c * c);  // C'/C^2
    const RationalFunction pole = one_over(Poly({Rational(1), Rational(-864)})) * Rational(1, 2);
    std::vector<LambdaLift> t;
    t.push_back({Rational(1, 144), base * Rational(1, 12), false, false, "E2*"});
    t.push_back({Rational(25, 144), base * Rational(5, 12), true, false, "E2* + 4 E6/E4"});
    t.push_back({Rational(49, 144), base * Rational(1, 12) - pole, false, true, "E2* + 6 E4^2/E6"});
    t.push_back({Rational(121, 144), base * Rational(5, 12) - pole, true, true,
                 "E2* + 4 E6/E4 + 6 E4^2/E6"});
    return t;
}

bool lambda_lift_invariant_holds(const LambdaLift& lift, const RationalFunction& yukawa) {
    const RationalFunction lhs =
        lift.r.derivative() + yukawa * lift.r * lift.r - RationalFunction(Rational(60));
    return lhs == yukawa * lift.lambda;
}

TildeSCheck tilde_s_modular_check(const LambdaLift& lift, const pf::PeriodData& pd,
                                  const RationalFunction& yukawa, int order) {
    if (!pd.mirror_map_ready) throw std::logic_error("tilde_s_modular_check: mirror map not built");
    const int work = order + 4;
    const TruncatedSeries omega0 = pd.omega0.truncated(work);
    const TruncatedSeries omega0_sq_inv = (omega0 * omega0).inverse();

    // x-side: S-tilde = Y/omega0^2 + dS, dS = -(1/C) omega0'/omega0 + r(x).
    const TruncatedSeries cinv = yukawa.inverse().expand_at_zero(work, 'x');
    const TruncatedSeries ds =
        -(cinv * (omega0.derivative() / omega0)) + lift.r.expand_at_zero(work, 'x');
    const YSeries lhs_x = YSeries::y_monomial(omega0_sq_inv, 1) + YSeries(ds);
    const YSeries lhs = lhs_x.compose_x(pd.x_of_q);

    // q-side closed form: -(1/12 omega0^2) { E2 - 12 Y (+ corrections) }.
    const TruncatedSeries e2 = modular::eisenstein(2, work).series;
    const TruncatedSeries e4 = modular::eisenstein(4, work).series;
    const TruncatedSeries e6 = modular::eisenstein(6, work).series;
    TruncatedSeries base = e2;
    if (lift.plus_4_e6_over_e4) base += (e6 / e4) * Rational(4);
    if (lift.plus_6_e4sq_over_e6) base += (e4 * e4 / e6) * Rational(6);
    const TruncatedSeries om_q_sq_inv = omega0_sq_inv.compose(pd.x_of_q);
    const YSeries rhs =
        YSeries(-(om_q_sq_inv * base) * Rational(1, 12)) + YSeries::y_monomial(om_q_sq_inv, 1);

    TildeSCheck out{};
    out.compared_order = std::min(comparable_order(lhs.y_coeff(0), rhs.y_coeff(0)),
                                  comparable_order(lhs.y_coeff(1), rhs.y_coeff(1)));
    out.first_mismatch = std::min(first_mismatch(lhs.y_coeff(0), rhs.y_coeff(0)),
                                  first_mismatch(lhs.y_coeff(1), rhs.y_coeff(1)));
    out.ok = agree_to_min_order(lhs, rhs) && out.compared_order >= order + 1;
    return out;
}

// ------------------------------------------------ holomorphic limit data

HolPropagators hol_propagators(const ModelSpec& m, const pf::PeriodData& pd, int order) {
    if (!pd.mirror_map_ready) throw std::logic_error("hol_propagators: mirror map not built");
    const int work = order + 2;
    pf::HolLimitConnections conn = pf::hol_connections(pd, work);
    HolPropagators out;
    out.ttK = conn.ttK;
    out.ttGamma = conn.ttGamma;

    if (m.kind == "elliptic") {
        // ttS from the lambda = 1/144 lift; the Gamma relation
        // ttGamma = 2 C ttS + f_tilde with f_tilde = C'/C - 2 C r is the
        // re-substitution check.
        const LambdaLift lift = lambda_lift_table().front();
        const TruncatedSeries omega0 = pd.omega0.truncated(work);
        const TruncatedSeries cinv = m.yukawa.inverse().expand_at_zero(work, 'x');
        out.ttS = -(cinv * (omega0.derivative() / omega0)) + lift.r.expand_at_zero(work, 'x');
        const RationalFunction f_tilde =
            m.yukawa.derivative() / m.yukawa - m.yukawa * lift.r * Rational(2);
        const TruncatedSeries resid = out.ttGamma -
                                      (m.yukawa.expand_at_zero(work, 'x') * out.ttS * Rational(2) +
                                       f_tilde.expand_at_zero(work, 'x'));
        if (!resid.is_identically_zero())
            throw std::runtime_error("hol_propagators: elliptic Gamma relation failed at order " +
                                     std::to_string(resid.valuation()));
        out.ttSxx = TruncatedSeries::zero(work, 'x');
        out.ttSx = TruncatedSeries::zero(work, 'x');
        return out;
    }

    if (m.kind != "threefold")
        throw std::invalid_argument("hol_propagators: model kind '" + m.kind + "' has no period data");
    const TruncatedSeries c = m.yukawa.expand_at_zero(work + 4, 'x');
    const TruncatedSeries cinv = c.inverse();
    const TruncatedSeries f = m.lift_f->expand_at_zero(work, 'x');
    const TruncatedSeries h = m.lift_h->expand_at_zero(work, 'x');
    const TruncatedSeries exx = m.e_xx->expand_at_zero(work, 'x');
    const TruncatedSeries ex = m.e_x->expand_at_zero(work, 'x');

    // ttGamma = 2 ttK - C ttSxx + f  =>  ttSxx
    out.ttSxx = (out.ttK * Rational(2) + f - out.ttGamma) * cinv;
    // d ttK - ttK^2 = -C ttSx + f ttK + h  =>  ttSx
    out.ttSx = (-(out.ttK.derivative()) + out.ttK * out.ttK + f * out.ttK + h) * cinv;
    // D ttSx = 2 ttS - C ttSx ttSxx + E^xx ttK + E^x  =>  ttS
    const TruncatedSeries d_ttsx =
        out.ttSx.derivative() + out.ttGamma * out.ttSx - out.ttK * out.ttSx * Rational(2);
    out.ttS = (d_ttsx + c * out.ttSx * out.ttSxx - exx * out.ttK - ex) * Rational(1, 2);

    // re-substitution of the defining equations
    const TruncatedSeries r1 = out.ttGamma - (out.ttK * Rational(2) - c * out.ttSxx + f);
    const TruncatedSeries r2 =
        out.ttK.derivative() - out.ttK * out.ttK - (-(c * out.ttSx) + f * out.ttK + h);
    if (!r1.is_identically_zero() || !r2.is_identically_zero())
        throw std::runtime_error("hol_propagators: re-substitution residual nonzero");
    out.threefold = true;
    return out;
}

bool QuinticRingCheck::all_zero() const {
    return res_sxx.is_identically_zero() && res_sx.is_identically_zero() &&
           res_s.is_identically_zero() && res_k.is_identically_zero();
}

QuinticRingCheck threefold_ring_check(const ModelSpec& m, const pf::PeriodData& pd, int order) {
    if (m.kind != "threefold")
        throw std::invalid_argument("threefold_ring_check: needs a threefold model");
    HolPropagators p = hol_propagators(m, pd, order + 2);
    const int work = order + 2;
    const TruncatedSeries c = m.yukawa.expand_at_zero(work + 4, 'x');
    const TruncatedSeries f = m.lift_f->expand_at_zero(work, 'x');
    const TruncatedSeries exx = m.e_xx->expand_at_zero(work, 'x');
    const TruncatedSeries ex = m.e_x->expand_at_zero(work, 'x');
    const TruncatedSeries es = m.e_s->expand_at_zero(work, 'x');
    const TruncatedSeries kap = m.kappa->expand_at_zero(work, 'x');
    const TruncatedSeries &K = p.ttK, &G = p.ttGamma;

    QuinticRingCheck out;
    // D S^xx = 2 S^x - C (S^xx)^2 + E^xx, with D = d/dx + 2 Gamma - 2 K
    out.res_sxx = (p.ttSxx.derivative() + G * p.ttSxx * Rational(2) - K * p.ttSxx * Rational(2)) -
                  (p.ttSx * Rational(2) - c * p.ttSxx * p.ttSxx + exx);
    // D S^x = 2 S - C S^x S^xx + E^xx K + E^x, with D = d/dx + Gamma - 2 K
    out.res_sx = (p.ttSx.derivative() + G * p.ttSx - K * p.ttSx * Rational(2)) -
                 (p.ttS * Rational(2) - c * p.ttSx * p.ttSxx + exx * K + ex);
    // D S = -(1/2) C (S^x)^2 + (1/2) E^xx K^2 + E^x K + E, with D = d/dx - 2 K
    out.res_s = (p.ttS.derivative() - K * p.ttS * Rational(2)) -
                (-(c * p.ttSx * p.ttSx) * Rational(1, 2) + exx * K * K * Rational(1, 2) + ex * K + es);
    // D K = -K^2 + C S^xx K - C S^x + C kappa, with D = d/dx - Gamma
    out.res_k = (K.derivative() - G * K) - (-(K * K) + c * p.ttSxx * K - c * p.ttSx + c * kap);
    return out;
}

// ----------------------------------------------------- two-cusp checks

CuspExchangeCheck cusp_exchange_check(const ModelSpec& m) {
    if (!m.cusp_x || !m.cusp_z)
        throw std::invalid_argument("cusp_exchange_check: model has no two-cusp data");
    const RationalFunction inv(Poly::constant(Rational(1)), Poly::variable());  // 1/t
    const RationalFunction dzdx = -RationalFunction(Poly::monomial(Rational(1), 2),
                                                    Poly::constant(Rational(1)));  // -t^2
    const RationalFunction dxdz =
        -RationalFunction(Poly::constant(Rational(1)), Poly::monomial(Rational(1), 2));

    CuspExchangeCheck out{};
    out.e_xx_ok = m.cusp_z->e_xx == m.cusp_x->e_xx.substitute(inv) * dzdx;
    out.e_x_ok = m.cusp_z->e_x == m.cusp_x->e_x.substitute(inv);
    out.e_s_ok = m.cusp_z->e_s == m.cusp_x->e_s.substitute(inv) * dxdz;
    out.kappa_ok = m.cusp_z->kappa_c == m.cusp_x->kappa_c.substitute(inv) * dxdz * dxdz;
    return out;
}

}  // namespace bcov::models
