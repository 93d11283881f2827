#ifndef BCOV_MODULAR_HPP
#define BCOV_MODULAR_HPP

#include <array>
#include <map>
#include <string>

#include "bcov/series.hpp"
#include "bcov/yseries.hpp"

namespace bcov::modular {

// q-expansion of a named modular object together with its weight.
struct QExpansion {
    TruncatedSeries series;
    int weight = 0;
    std::string name;
};

QExpansion eisenstein(int k, int order);  // k in {2,4,6}, constant term 1
QExpansion eta24(int order);              // q * prod (1-q^n)^24
QExpansion j_normalized(int order);       // E4^3 / eta^24, Laurent head 1/q

// Polynomial in E2, E4, E6 over Q. Mixed weights are allowed; weight() only
// reports a value for homogeneous polynomials.
class QuasiModularPoly {
public:
    using Key = std::array<int, 3>;  // exponents of (E2, E4, E6)

    QuasiModularPoly() = default;
    static QuasiModularPoly constant(const Rational& c);
    static QuasiModularPoly gen_E2();
    static QuasiModularPoly gen_E4();
    static QuasiModularPoly gen_E6();
    static QuasiModularPoly monomial(const Rational& c, int a, int b, int cdeg);

    bool is_zero() const { return t_.empty(); }
    const std::map<Key, Rational>& terms() const { return t_; }
    static int term_weight(const Key& k) { return 2 * k[0] + 4 * k[1] + 6 * k[2]; }
    bool is_homogeneous(int* weight_out = nullptr) const;

    QuasiModularPoly operator-() const;
    friend QuasiModularPoly operator+(const QuasiModularPoly& a, const QuasiModularPoly& b);
    friend QuasiModularPoly operator-(const QuasiModularPoly& a, const QuasiModularPoly& b);
    friend QuasiModularPoly operator*(const QuasiModularPoly& a, const QuasiModularPoly& b);
    QuasiModularPoly operator*(const Rational& c) const;
    friend bool operator==(const QuasiModularPoly& a, const QuasiModularPoly& b) { return a.t_ == b.t_; }

    TruncatedSeries evaluate(int order) const;  // q-expansion
    std::string str() const;

    void add_term(const Key& k, const Rational& c);

private:
    std::map<Key, Rational> t_;
};

// q d/dq on Q[E2,E4,E6]:
//   D E2 = (E2^2 - E4)/12, D E4 = (E2 E4 - E6)/3, D E6 = (E2 E6 - E4^2)/2.
QuasiModularPoly ramanujan_derive(const QuasiModularPoly& p);

// Formal partial derivative with respect to the E2 symbol.
QuasiModularPoly d_E2(const QuasiModularPoly& p);

// Polynomial in E2, E4, E6 and Y, where Y is the normalized
// 1/(2 pi i) * 1/(tbar - t) of weight 2. Q[E2*, E4, E6] sits inside via
// E2* = E2 - 12 Y.
class AlmostHolPoly {
public:
    using Key = std::array<int, 4>;  // exponents of (E2, E4, E6, Y)

    AlmostHolPoly() = default;
    AlmostHolPoly(const QuasiModularPoly& p);  // Y-free embedding
    static AlmostHolPoly gen_Y();
    static AlmostHolPoly gen_E2star();  // E2 - 12 Y
    static AlmostHolPoly monomial(const Rational& c, int a, int b, int cdeg, int m);

    bool is_zero() const { return t_.empty(); }
    const std::map<Key, Rational>& terms() const { return t_; }
    static int term_weight(const Key& k) { return 2 * k[0] + 4 * k[1] + 6 * k[2] + 2 * k[3]; }
    bool is_homogeneous(int* weight_out = nullptr) const;

    AlmostHolPoly operator-() const;
    friend AlmostHolPoly operator+(const AlmostHolPoly& a, const AlmostHolPoly& b);
    friend AlmostHolPoly operator-(const AlmostHolPoly& a, const AlmostHolPoly& b);
    friend AlmostHolPoly operator*(const AlmostHolPoly& a, const AlmostHolPoly& b);
    AlmostHolPoly operator*(const Rational& c) const;
    friend bool operator==(const AlmostHolPoly& a, const AlmostHolPoly& b) { return a.t_ == b.t_; }

    YSeries evaluate(int order) const;  // Y kept formal, E's expanded in q
    std::string str() const;

    void add_term(const Key& k, const Rational& c);

private:
    std::map<Key, Rational> t_;
};

// The weight-raising derivative on almost holomorphic forms,
// D = (1/2 pi i)(d/dtau + k/(tau - taubar)) on weight-k pieces. On the
// generators used here it closes as a derivation with
//   D E2* = (E2*^2 - E4)/12, D E4 = (E2* E4 - E6)/3, D E6 = (E2* E6 - E4^2)/2,
// and D Y = -Y^2 in the Y coordinate above.
AlmostHolPoly almost_hol_derive(const AlmostHolPoly& p);

// The bare (1/2 pi i) d/dtau, acting with the Ramanujan rules on the E's
// and D Y = +Y^2, with no weight term: the q-side counterpart of the
// x-coordinate derivation on Q[[x]][Y]. Relates to the above by
// almost_hol_derive(p) = plain_q_derive(p) - weight(p) * Y * p.
AlmostHolPoly plain_q_derive(const AlmostHolPoly& p);

// Constant term in Y: the differential-ring isomorphism onto Q[E2,E4,E6].
QuasiModularPoly kz_constant_term(const AlmostHolPoly& p);

// Table entry for the genus/insertion recursion: Z_{g;n} carries the
// transcendental prefactor q^(n/2)/eta^(12 n) symbolically, so only the
// polynomial part and n are stored.
struct ZEntry {
    int n = 0;
    QuasiModularPoly poly;
};

using ZTable = std::map<std::pair<int, int>, QuasiModularPoly>;  // (g,n) -> P_{g;n}

// Right-hand side of the E2-derivative recursion:
//   dZ_{g;n}/dE2 = (1/24) sum_{g'+g''=g} sum_{s=1}^{n-1} s(n-s) Z_{g';s} Z_{g'';n-s}
//                  + n(n+1)/24 * Z_{g-1;n},
// returned as the polynomial part at prefactor level n. Entries with g' < 0
// are absent; any required present entry that is missing throws.
ZEntry modular_anomaly_rhs(const ZTable& table, int g, int n);

}  // namespace bcov::modular

#endif
