#ifndef BCOV_SOLVER_HPP
#define BCOV_SOLVER_HPP

#include <optional>
#include <vector>

#include "bcov/models.hpp"
#include "bcov/ring.hpp"

namespace bcov::solver {

// One solved genus. F lives in the hatted generators and is K-free; the
// anomaly equation's K-annihilation constraint is re-checked on the plain
// form and reported in k_constraint_ok.
struct GenusSolution {
    int g = 0;
    ring::RingElement F;  // weight 2-2g, hatted basis
    bool k_constraint_ok = false;
    bool weight_ok = false;
    bool rediff_ok = false;
};

// Right-hand sides of the linearized equation, K-free in hatted
// generators, normalized so that
//   dF/dShat^xx = Qij,  dF/dShat^x = -Qi,  dF/dShat = Q.
struct RhsTargets {
    ring::RingElement Qij, Qi, Q;
};

// D_x F^(1) = (1/2) C_xxx Shat^xx - (chi/24 - 1) K_x (+ d_x log f0 in the
// lifted variant), written in the hatted basis.
ring::RingElement genus_one_seed(long chi, const std::optional<RationalFunction>& f1 = std::nullopt);

// Assembles (1/2) D D F^(g-1) + (1/2) sum_h D F^(g-h) D F^(h) from the
// stored first derivatives (plain basis, one lower index each), rewrites
// in hatted generators and splits by K-degree. Throws if any K-degree
// above 2 survives, or a lower-genus derivative is missing.
RhsTargets assemble_rhs(int g, const std::vector<ring::RingElement>& df_plain,
                        const ring::DerivationTable& table);

// Reconstructs the unique K-free solution of the target system, checking
// every partial and mixed-partial relation exactly. Throws on any
// inconsistency or if a hatted-S-free remainder would be needed.
GenusSolution integrate_targets(const RhsTargets& targets, int g);

enum class Variant { Reduced, Lifted };

// Full recursion from the genus-one seed up to gmax (gmax >= 2). Reduced
// solves over the abstract ring with the C symbol; Lifted uses the model's
// lift tensors and adds the configured ambiguities f_g.
std::vector<GenusSolution> solve_to_genus(const models::ModelSpec& m, int gmax, Variant variant);

// Substitutes the holomorphic-limit propagator series (hatted combinations)
// and the model Yukawa for the symbols, returning an x-series.
TruncatedSeries evaluate_in_x(const ring::RingElement& f_hatted, const models::ModelSpec& m,
                              const models::HolPropagators& props, int order);

// The same, pushed to the flat coordinate: returns a q-series.
TruncatedSeries holomorphic_evaluate(const ring::RingElement& f_hatted, const models::ModelSpec& m,
                                     const pf::PeriodData& pd, const models::HolPropagators& props,
                                     int order);

}  // namespace bcov::solver

#endif
