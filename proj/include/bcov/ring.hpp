#ifndef BCOV_RING_HPP
#define BCOV_RING_HPP

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bcov/poly.hpp"

namespace bcov::ring {

// Generator alphabet of the propagator ring. S-kinds carry weight -2, K
// weight 0, C and H weight +2. Indices of Sij, C and H are kept sorted:
// the tensors they stand for are fully symmetric.
enum class Gen : uint8_t { S, Si, Sij, K, C, H };

struct GeneratorId {
    Gen kind;
    std::vector<int> idx;  // values in 1..r

    GeneratorId(Gen k, std::vector<int> indices);
    static GeneratorId s() { return GeneratorId(Gen::S, {}); }
    static GeneratorId si(int i) { return GeneratorId(Gen::Si, {i}); }
    static GeneratorId sij(int i, int j) { return GeneratorId(Gen::Sij, {i, j}); }
    static GeneratorId kk(int i) { return GeneratorId(Gen::K, {i}); }
    static GeneratorId c3(int i, int j, int k) { return GeneratorId(Gen::C, {i, j, k}); }

    int weight() const;
    int lower_net() const;  // lower indices minus upper indices
    std::string str() const;

    auto operator<=>(const GeneratorId&) const = default;
};

struct Monomial {
    std::vector<GeneratorId> g;  // sorted

    Monomial() = default;
    explicit Monomial(std::vector<GeneratorId> gens);
    static Monomial one() { return Monomial(); }

    int weight() const;
    int lower_net() const;
    int degree() const { return static_cast<int>(g.size()); }
    int degree_of(const GeneratorId& gen) const;
    int degree_of_kind(Gen kind) const;
    Monomial times(const GeneratorId& gen) const;
    // Removes one occurrence; throws if absent.
    Monomial without(const GeneratorId& gen) const;
    std::string str() const;

    std::strong_ordering operator<=>(const Monomial& o) const {
        if (g.size() != o.g.size()) return g.size() <=> o.g.size();
        return g <=> o.g;
    }
    bool operator==(const Monomial& o) const { return g == o.g; }
};

// Weighted polynomial in the generators with RationalFunction coefficients
// in the modulus coordinate. `weight` is the declared section weight and
// `lower` the number of free lower tensor indices; a monomial whose
// generators do not add up to them implicitly carries the deficit on its
// coefficient (that is how rational lift data enters the lifted rules).
class RingElement {
public:
    RingElement() = default;
    RingElement(int weight, int lower) : weight_(weight), lower_(lower) {}
    static RingElement from_gen(const GeneratorId& g);
    static RingElement scalar(const RationalFunction& c, int weight = 0, int lower = 0);

    int weight() const { return weight_; }
    int lower() const { return lower_; }
    bool is_zero() const { return t_.empty(); }
    const std::map<Monomial, RationalFunction>& terms() const { return t_; }

    void add_term(const Monomial& m, const RationalFunction& c);
    RingElement operator-() const;
    friend RingElement operator+(const RingElement& a, const RingElement& b);
    friend RingElement operator-(const RingElement& a, const RingElement& b);
    friend RingElement operator*(const RingElement& a, const RingElement& b);
    RingElement operator*(const Rational& c) const;
    RingElement operator*(const RationalFunction& c) const;
    friend bool operator==(const RingElement& a, const RingElement& b);

    // Plain polynomial partial derivative with respect to one generator.
    RingElement partial(const GeneratorId& gen) const;
    // Maximal degree in generators of the given kind.
    int max_degree_of_kind(Gen kind) const;

    std::string str() const;

private:
    int weight_ = 0;
    int lower_ = 0;
    std::map<Monomial, RationalFunction> t_;
};

// Generator substitution extended as a ring homomorphism; generators not
// in the map pass through unchanged. Declared weight/index counts are
// preserved (the intended substitutions are weight-neutral).
RingElement substitute(const RingElement& e,
                       const std::map<GeneratorId, RingElement>& images);

// Hatted propagators in terms of the plain ones:
//   Shat^ij = S^ij, Shat^k = S^k - S^km K_m,
//   Shat = S - S^m K_m + (1/2) S^mn K_m K_n.
// hat_transform rewrites an element whose S-symbols mean the hatted
// generators as a polynomial in the plain ones; unhat_transform is the
// inverse rewriting. unhat_transform(hat_transform(e)) == e.
RingElement hat_transform(const RingElement& e, int r);
RingElement unhat_transform(const RingElement& e, int r);

// Groups terms by their K-content. Keys are pure-K monomials.
std::map<Monomial, RingElement> k_expand(const RingElement& e);

struct WeightReport {
    bool ok = true;
    std::string first_offender;  // empty when ok
};

// Strict grading check: every monomial's generator weights must sum to the
// declared weight (i.e. no weight hides in the coefficients).
WeightReport check_weight(const RingElement& e);

// Rational lift data entering the monodromy-invariant derivation rules
// (one-modulus case).
struct LiftData {
    RationalFunction e_xx;    // correction in D S^xx
    RationalFunction e_x;     // correction in D S^x
    RationalFunction e_s;     // correction in D S
    RationalFunction kappa;   // correction in D K is C * kappa
    RationalFunction f_tilde; // connection ambiguity in Gamma
    RationalFunction yukawa;  // C(x), needed to differentiate the C symbol
};

// The covariant derivation D_i on the ring. Reduced: the finitely
// generated quotient rules, closed over the symbols alone. Lifted: the
// same rules with the rational correction terms of the invariant lift
// (r = 1 only). `with_h` keeps the holomorphic 4-point obstruction as an
// explicit symbol tower instead of quotienting it away.
class DerivationTable {
public:
    static DerivationTable reduced(int r, bool with_h = false);
    static DerivationTable lifted(const LiftData& data);

    int rank() const { return r_; }
    bool is_lifted() const { return lifted_; }

    RingElement derive_gen(const GeneratorId& g, int i) const;
    RingElement derive(const RingElement& e, int i) const;
    // Gamma^x_xx as a ring element (lifted only): 2K - C S^xx + f_tilde.
    RingElement gamma() const;

private:
    DerivationTable() = default;
    int r_ = 1;
    bool lifted_ = false;
    bool with_h_ = false;
    std::optional<LiftData> data_;
};

}  // namespace bcov::ring

#endif
