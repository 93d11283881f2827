#include "bcov/solver.hpp"

#include <stdexcept>

namespace bcov::solver {

using ring::DerivationTable;
using ring::Gen;
using ring::GeneratorId;
using ring::Monomial;
using ring::RingElement;

ring::RingElement genus_one_seed(long chi, const std::optional<RationalFunction>& f1) {
    RingElement seed(0, 1);
    seed.add_term(Monomial({GeneratorId::c3(1, 1, 1), GeneratorId::sij(1, 1)}),
                  RationalFunction(Rational(1, 2)));
    seed.add_term(Monomial({GeneratorId::kk(1)}),
                  RationalFunction(-(Rational(chi, 24) - Rational(1))));
    if (f1) seed.add_term(Monomial::one(), *f1);
    return seed;
}

RhsTargets assemble_rhs(int g, const std::vector<ring::RingElement>& df_plain,
                        const ring::DerivationTable& table) {
    if (g < 2) throw std::invalid_argument("assemble_rhs: the recursion starts at genus 2");
    if (static_cast<int>(df_plain.size()) < g)
        throw std::invalid_argument("assemble_rhs: missing lower-genus derivative data");

    RingElement rhs = table.derive(df_plain[static_cast<size_t>(g - 1)], 1) * Rational(1, 2);
    for (int h = 1; h <= g - 1; ++h)
        rhs = rhs + df_plain[static_cast<size_t>(g - h)] * df_plain[static_cast<size_t>(h)] *
                        Rational(1, 2);

    const RingElement rhs_hat = ring::unhat_transform(rhs, table.rank());
    auto kmap = ring::k_expand(rhs_hat);

    RhsTargets t;
    t.Qij = RingElement(rhs_hat.weight(), rhs_hat.lower());
    t.Qi = RingElement(rhs_hat.weight(), rhs_hat.lower() - 1);
    t.Q = RingElement(rhs_hat.weight(), rhs_hat.lower() - 2);
    for (auto& [kmon, part] : kmap) {
        const int kdeg = kmon.degree();
        if (kdeg == 0) t.Qij = part;
        else if (kdeg == 1) t.Qi = part;
        else if (kdeg == 2) t.Q = part * Rational(2);
        else
            throw std::runtime_error("assemble_rhs: K-degree " + std::to_string(kdeg) +
                                     " in the hatted expansion signals a derivation-rule bug");
    }
    return t;
}

namespace {

void require_k_free(const RingElement& e, const char* who) {
    for (const auto& [m, c] : e.terms())
        if (m.degree_of_kind(Gen::K) > 0)
            throw std::invalid_argument(std::string(who) + ": target is not K-free");
}

// Re-declares section metadata without touching the terms, so targets built
// by hand integrate the same way as assembled ones.
RingElement with_meta(const RingElement& e, int weight, int lower) {
    RingElement r(weight, lower);
    for (const auto& [m, c] : e.terms()) r.add_term(m, c);
    return r;
}

// The constraint the hat change of generators encodes:
// S^jk dF/dS^k + S^j dF/dS + dF/dK_j = 0 on the plain form of F.
bool k_constraint_holds(const RingElement& f_hatted, int r) {
    const RingElement fp = ring::hat_transform(f_hatted, r);
    for (int j = 1; j <= r; ++j) {
        RingElement resid = fp.partial(GeneratorId::kk(j));
        for (int k = 1; k <= r; ++k)
            resid = resid + RingElement::from_gen(GeneratorId::sij(j, k)) * fp.partial(GeneratorId::si(k));
        resid = resid + RingElement::from_gen(GeneratorId::si(j)) * fp.partial(GeneratorId::s());
        if (!resid.is_zero()) return false;
    }
    return true;
}

}  // namespace

GenusSolution integrate_targets(const RhsTargets& targets, int g) {
    require_k_free(targets.Qij, "integrate_targets");
    require_k_free(targets.Qi, "integrate_targets");
    require_k_free(targets.Q, "integrate_targets");

    const GeneratorId s2 = GeneratorId::sij(1, 1);
    const GeneratorId s1 = GeneratorId::si(1);
    const GeneratorId s0 = GeneratorId::s();
    const int w = 2 - 2 * g;
    const RingElement qij = with_meta(targets.Qij, w + 2, 2);
    const RingElement qi = with_meta(targets.Qi, w + 2, 1);
    const RingElement q0 = with_meta(targets.Q, w + 2, 0);

    RingElement f(2 - 2 * g, 0);
    auto propose = [&f](const Monomial& m, const RationalFunction& c) {
        auto it = f.terms().find(m);
        if (it == f.terms().end()) f.add_term(m, c);
        else if (it->second != c)
            throw std::runtime_error("integrate_targets: inconsistent partials at monomial " +
                                     m.str());
    };

    for (const auto& [n, c] : qij.terms()) {
        const Monomial m = n.times(s2);
        propose(m, c * Rational(m.degree_of(s2)).inverse());
    }
    for (const auto& [n, c] : qi.terms()) {
        const Monomial m = n.times(s1);
        if (m.degree_of(s2) > 0) continue;  // covered by the Qij pass, verified below
        propose(m, -c * Rational(m.degree_of(s1)).inverse());
    }
    for (const auto& [n, c] : q0.terms()) {
        const Monomial m = n.times(s0);
        if (m.degree_of(s2) > 0 || m.degree_of(s1) > 0) continue;
        propose(m, c * Rational(m.degree_of(s0)).inverse());
    }

    GenusSolution sol;
    sol.g = g;
    sol.F = f;

    // Authoritative re-differentiation: all three partials must reproduce
    // the targets exactly (this covers mixed-partial symmetry as well).
    if (!(f.partial(s2) == qij))
        throw std::runtime_error("integrate_targets: d/dShat^xx does not reproduce its target");
    if (!(f.partial(s1) == -qi))
        throw std::runtime_error("integrate_targets: d/dShat^x does not reproduce its target");
    if (!(f.partial(s0) == q0))
        throw std::runtime_error("integrate_targets: d/dShat does not reproduce its target");
    for (const auto& [m, c] : f.terms()) {
        if (m.degree_of(s2) + m.degree_of(s1) + m.degree_of(s0) == 0)
            throw std::runtime_error(
                "integrate_targets: propagator-free remainder, the weight argument forbids it");
    }
    sol.rediff_ok = true;
    sol.weight_ok = ring::check_weight(f).ok;
    sol.k_constraint_ok = k_constraint_holds(f, 1);
    return sol;
}

std::vector<GenusSolution> solve_to_genus(const models::ModelSpec& m, int gmax, Variant variant) {
    if (gmax < 2) throw std::invalid_argument("solve_to_genus: gmax must be >= 2");
    if (m.kind != "threefold")
        throw std::invalid_argument("solve_to_genus: model '" + m.name +
                                    "' is not a threefold (the weight grading assumes one)");
    if (!m.chi) throw std::invalid_argument("solve_to_genus: model lacks chi");

    DerivationTable table = variant == Variant::Reduced
                                ? DerivationTable::reduced(1)
                                : DerivationTable::lifted(ring::LiftData{
                                      *m.e_xx, *m.e_x, *m.e_s, *m.kappa, *m.lift_f, m.yukawa});

    std::optional<RationalFunction> f1;
    if (variant == Variant::Lifted && m.f0) f1 = m.f0->derivative() / *m.f0;
    const RingElement seed = genus_one_seed(*m.chi, f1);

    // df_plain[h] = D_x F^(h) in plain generators; index 0 unused.
    std::vector<RingElement> df_plain(static_cast<size_t>(gmax) + 1);
    df_plain[1] = ring::hat_transform(seed, 1);

    std::vector<GenusSolution> out;
    for (int g = 2; g <= gmax; ++g) {
        RhsTargets targets = assemble_rhs(g, df_plain, table);
        GenusSolution sol = integrate_targets(targets, g);
        if (variant == Variant::Lifted) {
            auto it = m.ambiguities.find(g);
            if (it != m.ambiguities.end()) sol.F.add_term(Monomial::one(), it->second);
        }
        sol.k_constraint_ok = k_constraint_holds(sol.F, 1);
        if (g < gmax)
            df_plain[static_cast<size_t>(g)] = table.derive(ring::hat_transform(sol.F, 1), 1);
        out.push_back(std::move(sol));
    }
    return out;
}

TruncatedSeries evaluate_in_x(const ring::RingElement& f_hatted, const models::ModelSpec& m,
                              const models::HolPropagators& props, int order) {
    const int work = order + 8;
    const TruncatedSeries c = m.yukawa.expand_at_zero(work, 'x');
    const TruncatedSeries& k = props.ttK;
    const TruncatedSeries hs2 = props.ttSxx;
    const TruncatedSeries hs1 = props.ttSx - props.ttSxx * k;
    const TruncatedSeries hs0 =
        props.ttS - props.ttSx * k + props.ttSxx * k * k * Rational(1, 2);

    TruncatedSeries acc = TruncatedSeries::zero(work, 'x');
    for (const auto& [mon, coeff] : f_hatted.terms()) {
        TruncatedSeries term = coeff.expand_at_zero(work, 'x');
        for (const auto& gen : mon.g) {
            switch (gen.kind) {
                case Gen::Sij: term = term * hs2; break;
                case Gen::Si: term = term * hs1; break;
                case Gen::S: term = term * hs0; break;
                case Gen::K: term = term * k; break;
                case Gen::C: term = term * c; break;
                default:
                    throw std::invalid_argument("evaluate_in_x: no series image for " + gen.str());
            }
        }
        acc += term;
    }
    return acc.truncated(std::min(acc.order(), order + 1));
}

TruncatedSeries holomorphic_evaluate(const ring::RingElement& f_hatted, const models::ModelSpec& m,
                                     const pf::PeriodData& pd, const models::HolPropagators& props,
                                     int order) {
    if (!pd.mirror_map_ready) throw std::logic_error("holomorphic_evaluate: mirror map not built");
    const TruncatedSeries fx = evaluate_in_x(f_hatted, m, props, order);
    return fx.compose(pd.x_of_q).truncated(std::min(order + 1, fx.order()));
}

}  // namespace bcov::solver
