#ifndef BCOV_MODELS_HPP
#define BCOV_MODELS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bcov/modular.hpp"
#include "bcov/pf.hpp"
#include "bcov/poly.hpp"
#include "bcov/yseries.hpp"

namespace bcov::models {

// Lift tensors for one coordinate patch of a two-cusp geometry. kappa_c
// stores C * kappa (the Yukawa coupling of that family is not part of the
// data set, so kappa itself is only known through this product).
struct CuspTensors {
    char var = 'x';
    RationalFunction e_xx, e_x, e_s, kappa_c;
};

// Per-geometry data bundle. Which fields are required depends on `kind`:
//   elliptic  : pf, yukawa (1 leg)
//   threefold : pf, yukawa (3 legs), chi, lift data
//   two_cusp  : lift tensors at both cusps, no period data
struct ModelSpec {
    std::string name;
    std::string kind;
    int r = 1;
    std::optional<long> chi;
    pf::PFOperator pf_op;
    RationalFunction yukawa;
    int yukawa_legs = 0;
    std::optional<RationalFunction> lift_f;   // f-tilde
    std::optional<RationalFunction> lift_h;   // h-tilde
    std::optional<RationalFunction> e_xx, e_x, e_s, kappa;
    std::map<int, RationalFunction> ambiguities;  // genus -> f_g, default absent = 0
    std::optional<RationalFunction> f0;           // genus-one ambiguity via d log f0
    Rational omega1_shift = Rational(0);
    std::optional<CuspTensors> cusp_x, cusp_z;    // two_cusp only

    bool has_periods() const { return kind == "elliptic" || kind == "threefold"; }
};

// Loads a model file (documented line format, '#' comments). Performs the
// per-kind schema checks plus the cross-checks that tie lift data together
// (h-tilde = C * kappa when both are present).
ModelSpec load_model(const std::string& path);

// Resolves "elliptic" -> <dir>/elliptic.model unless the argument already
// names a file.
std::string resolve_model_path(const std::string& name_or_path, const std::string& models_dir);

// The propagator ring of the one-modulus curve realized inside Q[[x]][Y],
// Y = (1/2 pi i) / (tbar - t):
//   S = Y / omega0^2,  K_x = (C/omega0^2) Y - omega0'/omega0,
//   Gamma^x_xx = 2 C S + d/dx log(C/omega0^2),
// and d/dx Y = (C/omega0^2) Y^2.
struct EllipticRealization {
    YSeries S, K, Gamma;
    TruncatedSeries dY_rule;  // C/omega0^2
    RationalFunction C;
    int order = 0;
};

EllipticRealization elliptic_realization(const pf::PeriodData& pd, const RationalFunction& yukawa,
                                         int order);

// One entry of the rational lift family: S -> S + dS with
// dS = -(1/C)(omega0'/omega0) + r(x) and E_x := r' + C r^2 - 60 = lambda C.
// The closed form records S-tilde = -(1/12 omega0^2) * (E2* + sum of the
// listed E4/E6 ratio corrections).
struct LambdaLift {
    Rational lambda;
    RationalFunction r;
    bool plus_4_e6_over_e4 = false;
    bool plus_6_e4sq_over_e6 = false;
    std::string note;
};

std::vector<LambdaLift> lambda_lift_table();

// Exact check of E_x = lambda * C as rational functions.
bool lambda_lift_invariant_holds(const LambdaLift& lift, const RationalFunction& yukawa);

// Compares the lifted propagator S + dS against the quoted almost
// holomorphic closed form, as Y-series in q, to the given order. Returns
// the first mismatching q-exponent of any Y-coefficient, or the compared
// order when they agree.
struct TildeSCheck {
    bool ok;
    int compared_order;
    int first_mismatch;
};
TildeSCheck tilde_s_modular_check(const LambdaLift& lift, const pf::PeriodData& pd,
                                  const RationalFunction& yukawa, int order);

// Holomorphic-limit propagators. For a threefold model these solve
//   ttGamma = 2 ttK - C ttSxx + f_tilde,
//   d ttK - ttK^2 = -C ttSx + f_tilde ttK + h_tilde,
// and the S-tilde derivation rule determines ttS. For the elliptic model
// only ttS is meaningful (from the lambda = 1/144 lift).
struct HolPropagators {
    TruncatedSeries ttSxx, ttSx, ttS;
    TruncatedSeries ttK, ttGamma;
    bool threefold = false;
};

HolPropagators hol_propagators(const ModelSpec& m, const pf::PeriodData& pd, int order);

// Residuals of the four lifted derivation identities of a threefold model
// in the holomorphic limit; all must vanish identically.
struct QuinticRingCheck {
    TruncatedSeries res_sxx, res_sx, res_s, res_k;
    bool all_zero() const;
};
QuinticRingCheck threefold_ring_check(const ModelSpec& m, const pf::PeriodData& pd, int order);

// Exact rational-function identities tying the two cusps of a two-cusp
// model together under z = 1/x:
//   E_z^zz = E_x^xx dz/dx, E_z^z = E_x^x, E_z = E_x dx/dz,
//   and (C kappa)_z = (C kappa)_x (dx/dz)^2.
struct CuspExchangeCheck {
    bool e_xx_ok, e_x_ok, e_s_ok, kappa_ok;
    bool all_ok() const { return e_xx_ok && e_x_ok && e_s_ok && kappa_ok; }
};
CuspExchangeCheck cusp_exchange_check(const ModelSpec& m);

}  // namespace bcov::models

#endif
