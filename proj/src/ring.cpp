#include "bcov/ring.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bcov::ring {

// --------------------------------------------------------- GeneratorId

GeneratorId::GeneratorId(Gen k, std::vector<int> indices) : kind(k), idx(std::move(indices)) {
    size_t expect;
    switch (kind) {
        case Gen::S: expect = 0; break;
        case Gen::Si: expect = 1; break;
        case Gen::Sij: expect = 2; break;
        case Gen::K: expect = 1; break;
        case Gen::C:
            if (idx.size() < 3) throw std::invalid_argument("GeneratorId: C needs >= 3 indices");
            expect = idx.size();
            break;
        case Gen::H:
            if (idx.size() < 4) throw std::invalid_argument("GeneratorId: H needs >= 4 indices");
            expect = idx.size();
            break;
        default: throw std::invalid_argument("GeneratorId: unknown kind");
    }
    if (idx.size() != expect) throw std::invalid_argument("GeneratorId: wrong index count");
    for (int i : idx)
        if (i < 1) throw std::invalid_argument("GeneratorId: indices start at 1");
    if (kind == Gen::Sij || kind == Gen::C || kind == Gen::H) std::sort(idx.begin(), idx.end());
}

int GeneratorId::weight() const {
    switch (kind) {
        case Gen::S:
        case Gen::Si:
        case Gen::Sij: return -2;
        case Gen::K: return 0;
        case Gen::C:
        case Gen::H: return 2;
    }
    return 0;
}

int GeneratorId::lower_net() const {
    switch (kind) {
        case Gen::S: return 0;
        case Gen::Si: return -1;
        case Gen::Sij: return -2;
        case Gen::K: return 1;
        case Gen::C:
        case Gen::H: return static_cast<int>(idx.size());
    }
    return 0;
}

std::string GeneratorId::str() const {
    auto upper = [this]() {
        std::string s;
        for (int i : idx) s += std::to_string(i);
        return s;
    };
    switch (kind) {
        case Gen::S: return "S";
        case Gen::Si: return "S^" + upper();
        case Gen::Sij: return "S^" + upper();
        case Gen::K: return "K_" + upper();
        case Gen::C: return "C_" + upper();
        case Gen::H: return "h_" + upper();
    }
    return "?";
}

// ------------------------------------------------------------ Monomial

Monomial::Monomial(std::vector<GeneratorId> gens) : g(std::move(gens)) {
    std::sort(g.begin(), g.end());
}

int Monomial::weight() const {
    int w = 0;
    for (const auto& x : g) w += x.weight();
    return w;
}

int Monomial::lower_net() const {
    int n = 0;
    for (const auto& x : g) n += x.lower_net();
    return n;
}

int Monomial::degree_of(const GeneratorId& gen) const {
    return static_cast<int>(std::count(g.begin(), g.end(), gen));
}

int Monomial::degree_of_kind(Gen kind) const {
    int n = 0;
    for (const auto& x : g) n += (x.kind == kind) ? 1 : 0;
    return n;
}

Monomial Monomial::times(const GeneratorId& gen) const {
    Monomial m(*this);
    m.g.insert(std::upper_bound(m.g.begin(), m.g.end(), gen), gen);
    return m;
}

Monomial Monomial::without(const GeneratorId& gen) const {
    Monomial m(*this);
    auto it = std::find(m.g.begin(), m.g.end(), gen);
    if (it == m.g.end()) throw std::invalid_argument("Monomial::without: generator not present");
    m.g.erase(it);
    return m;
}

std::string Monomial::str() const {
    if (g.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < g.size(); ++i) {
        if (i) s += "*";
        s += g[i].str();
    }
    return s;
}

// --------------------------------------------------------- RingElement

RingElement RingElement::from_gen(const GeneratorId& gen) {
    RingElement e(gen.weight(), gen.lower_net());
    e.add_term(Monomial({gen}), RationalFunction(Rational(1)));
    return e;
}

RingElement RingElement::scalar(const RationalFunction& c, int weight, int lower) {
    RingElement e(weight, lower);
    e.add_term(Monomial::one(), c);
    return e;
}

void RingElement::add_term(const Monomial& m, const RationalFunction& c) {
    if (c.is_zero()) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
        t_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

RingElement RingElement::operator-() const {
    RingElement e(*this);
    for (auto& [m, c] : e.t_) c = -c;
    return e;
}

namespace {
void require_compatible(const RingElement& a, const RingElement& b, const char* op) {
    if (a.is_zero() || b.is_zero()) return;
    if (a.weight() != b.weight() || a.lower() != b.lower())
        throw std::invalid_argument(std::string("RingElement ") + op +
                                    ": mixing weight/index types (" + std::to_string(a.weight()) +
                                    "," + std::to_string(a.lower()) + ") vs (" +
                                    std::to_string(b.weight()) + "," + std::to_string(b.lower()) + ")");
}
}  // namespace

RingElement operator+(const RingElement& a, const RingElement& b) {
    require_compatible(a, b, "add");
    RingElement r = a.is_zero() && !b.is_zero() ? RingElement(b.weight_, b.lower_) : RingElement(a.weight_, a.lower_);
    r.t_ = a.t_;
    for (const auto& [m, c] : b.t_) r.add_term(m, c);
    return r;
}

RingElement operator-(const RingElement& a, const RingElement& b) { return a + (-b); }

RingElement operator*(const RingElement& a, const RingElement& b) {
    RingElement r(a.weight_ + b.weight_, a.lower_ + b.lower_);
    for (const auto& [ma, ca] : a.t_) {
        for (const auto& [mb, cb] : b.t_) {
            std::vector<GeneratorId> g = ma.g;
            g.insert(g.end(), mb.g.begin(), mb.g.end());
            r.add_term(Monomial(std::move(g)), ca * cb);
        }
    }
    return r;
}

RingElement RingElement::operator*(const Rational& c) const {
    return *this * RationalFunction(c);
}

RingElement RingElement::operator*(const RationalFunction& c) const {
    RingElement r(weight_, lower_);
    if (c.is_zero()) return r;
    for (const auto& [m, v] : t_) r.add_term(m, v * c);
    return r;
}

bool operator==(const RingElement& a, const RingElement& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.weight_ == b.weight_ && a.lower_ == b.lower_ && a.t_ == b.t_;
}

RingElement RingElement::partial(const GeneratorId& gen) const {
    RingElement r(weight_ - gen.weight(), lower_ - gen.lower_net());
    for (const auto& [m, c] : t_) {
        const int d = m.degree_of(gen);
        if (d == 0) continue;
        r.add_term(m.without(gen), c * Rational(d));
    }
    return r;
}

int RingElement::max_degree_of_kind(Gen kind) const {
    int d = 0;
    for (const auto& [m, c] : t_) d = std::max(d, m.degree_of_kind(kind));
    return d;
}

std::string RingElement::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : t_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        if (!m.g.empty()) os << "*" << m.str();
    }
    return os.str();
}

// --------------------------------------------------------- substitution

RingElement substitute(const RingElement& e, const std::map<GeneratorId, RingElement>& images) {
    RingElement out(e.weight(), e.lower());
    for (const auto& [m, c] : e.terms()) {
        RingElement prod = RingElement::scalar(c);
        for (const auto& gen : m.g) {
            auto it = images.find(gen);
            if (it == images.end())
                prod = prod * RingElement::from_gen(gen);
            else
                prod = prod * it->second;
        }
        for (const auto& [mm, cc] : prod.terms()) out.add_term(mm, cc);
    }
    return out;
}

namespace {

std::map<GeneratorId, RingElement> hat_images(int r, const Rational& sign) {
    // sign = -1: hatted written in plain; sign = +1: the inverse rewriting.
    std::map<GeneratorId, RingElement> imgs;
    for (int k = 1; k <= r; ++k) {
        RingElement e = RingElement::from_gen(GeneratorId::si(k));
        for (int m = 1; m <= r; ++m) {
            RingElement t = RingElement::from_gen(GeneratorId::sij(k, m)) *
                            RingElement::from_gen(GeneratorId::kk(m));
            e = e + t * sign;
        }
        imgs.emplace(GeneratorId::si(k), e);
    }
    RingElement s = RingElement::from_gen(GeneratorId::s());
    for (int m = 1; m <= r; ++m)
        s = s + RingElement::from_gen(GeneratorId::si(m)) * RingElement::from_gen(GeneratorId::kk(m)) * sign;
    for (int m = 1; m <= r; ++m)
        for (int n = 1; n <= r; ++n) {
            RingElement t = RingElement::from_gen(GeneratorId::sij(m, n)) *
                            RingElement::from_gen(GeneratorId::kk(m)) *
                            RingElement::from_gen(GeneratorId::kk(n));
            s = s + t * Rational(1, 2);
        }
    imgs.emplace(GeneratorId::s(), s);
    return imgs;
}

}  // namespace

RingElement hat_transform(const RingElement& e, int r) {
    return substitute(e, hat_images(r, Rational(-1)));
}

RingElement unhat_transform(const RingElement& e, int r) {
    // S^k = Shat^k + Shat^km K_m and
    // S = Shat + Shat^m K_m + (1/2) Shat^mn K_m K_n: the same shape with
    // the opposite sign except for the quadratic term, whose sign works
    // out positive both ways.
    return substitute(e, hat_images(r, Rational(1)));
}

std::map<Monomial, RingElement> k_expand(const RingElement& e) {
    std::map<Monomial, RingElement> out;
    for (const auto& [m, c] : e.terms()) {
        std::vector<GeneratorId> kpart, rest;
        for (const auto& g : m.g) (g.kind == Gen::K ? kpart : rest).push_back(g);
        Monomial key(std::move(kpart));
        auto it = out.find(key);
        if (it == out.end()) {
            RingElement part(e.weight(), e.lower() - key.lower_net());
            part.add_term(Monomial(std::move(rest)), c);
            out.emplace(std::move(key), std::move(part));
        } else {
            it->second.add_term(Monomial(std::move(rest)), c);
        }
    }
    return out;
}

WeightReport check_weight(const RingElement& e) {
    for (const auto& [m, c] : e.terms()) {
        if (m.weight() != e.weight()) {
            return {false, m.str() + " has weight " + std::to_string(m.weight()) +
                               ", declared " + std::to_string(e.weight())};
        }
    }
    return {};
}

// ----------------------------------------------------- DerivationTable

DerivationTable DerivationTable::reduced(int r, bool with_h) {
    if (r < 1) throw std::invalid_argument("DerivationTable: rank must be >= 1");
    DerivationTable t;
    t.r_ = r;
    t.with_h_ = with_h;
    return t;
}

DerivationTable DerivationTable::lifted(const LiftData& data) {
    DerivationTable t;
    t.r_ = 1;
    t.lifted_ = true;
    t.data_ = data;
    if (data.yukawa.is_zero()) throw std::invalid_argument("DerivationTable::lifted: zero Yukawa");
    return t;
}

RingElement DerivationTable::gamma() const {
    if (!lifted_) throw std::logic_error("DerivationTable::gamma: only defined with lift data");
    RingElement g = RingElement::from_gen(GeneratorId::kk(1)) * Rational(2) -
                    RingElement::from_gen(GeneratorId::c3(1, 1, 1)) *
                        RingElement::from_gen(GeneratorId::sij(1, 1));
    g.add_term(Monomial::one(), data_->f_tilde);
    return g;
}

RingElement DerivationTable::derive_gen(const GeneratorId& gen, int i) const {
    RingElement out(gen.weight(), gen.lower_net() + 1);
    auto S = [](int k) { return RingElement::from_gen(GeneratorId::si(k)); };
    auto Sij = [](int m, int n) { return RingElement::from_gen(GeneratorId::sij(m, n)); };
    auto S0 = []() { return RingElement::from_gen(GeneratorId::s()); };
    auto K = [](int m) { return RingElement::from_gen(GeneratorId::kk(m)); };
    auto C3 = [](int a, int b, int c) { return RingElement::from_gen(GeneratorId::c3(a, b, c)); };
    auto absorb = [&out](const RingElement& e, const Rational& scale = Rational(1)) {
        for (const auto& [m, c] : e.terms()) out.add_term(m, c * scale);
    };

    switch (gen.kind) {
        case Gen::Sij: {
            const int k = gen.idx[0], l = gen.idx[1];
            // D_i S^kl = d^k_i S^l + d^l_i S^k - C_imn S^mk S^nl (+ lift term)
            if (i == k) absorb(S(l));
            if (i == l) absorb(S(k));
            for (int m = 1; m <= r_; ++m)
                for (int n = 1; n <= r_; ++n) absorb(C3(i, m, n) * Sij(m, k) * Sij(n, l), Rational(-1));
            if (lifted_) out.add_term(Monomial::one(), data_->e_xx);
            return out;
        }
        case Gen::Si: {
            const int k = gen.idx[0];
            // D_i S^k = -C_imn S^m S^nk + 2 d^k_i S (+ E^km K_m + E^k)
            for (int m = 1; m <= r_; ++m)
                for (int n = 1; n <= r_; ++n) absorb(C3(i, m, n) * S(m) * Sij(n, k), Rational(-1));
            if (i == k) absorb(S0(), Rational(2));
            if (lifted_) {
                out.add_term(Monomial({GeneratorId::kk(1)}), data_->e_xx);
                out.add_term(Monomial::one(), data_->e_x);
            }
            return out;
        }
        case Gen::S: {
            // D_i S = -(1/2) C_imn S^m S^n (+ (1/2) E^kl K_k K_l + E^m K_m + E)
            for (int m = 1; m <= r_; ++m)
                for (int n = 1; n <= r_; ++n) absorb(C3(i, m, n) * S(m) * S(n), Rational(-1, 2));
            if (lifted_) {
                out.add_term(Monomial({GeneratorId::kk(1), GeneratorId::kk(1)}),
                             data_->e_xx * Rational(1, 2));
                out.add_term(Monomial({GeneratorId::kk(1)}), data_->e_x);
                out.add_term(Monomial::one(), data_->e_s);
            }
            return out;
        }
        case Gen::K: {
            const int j = gen.idx[0];
            // D_i K_j = -K_i K_j + C_ijm S^mn K_n - C_ijm S^m (+ C_ijm kappa^m)
            absorb(K(i) * K(j), Rational(-1));
            for (int m = 1; m <= r_; ++m) {
                for (int n = 1; n <= r_; ++n) absorb(C3(i, j, m) * Sij(m, n) * K(n));
                absorb(C3(i, j, m) * S(m), Rational(-1));
            }
            if (lifted_) out.add_term(Monomial({GeneratorId::c3(1, 1, 1)}), data_->kappa);
            return out;
        }
        case Gen::C: {
            if (gen.idx.size() != 3)
                throw std::domain_error("derive_gen: no rule for C with " +
                                        std::to_string(gen.idx.size()) + " indices");
            // D_l C_ijk = sum over the three pairings {a,b}{c,d} of {i,j,k,l}
            // of C_abm S^mn C_ncd, minus sum_a K_a C_rest (+ h_ijkl or its
            // lifted rational remnant).
            const int a = gen.idx[0], b = gen.idx[1], c = gen.idx[2];
            const std::array<std::array<int, 4>, 3> pairings = {{{i, a, b, c}, {i, b, a, c}, {i, c, a, b}}};
            for (const auto& p : pairings)
                for (int m = 1; m <= r_; ++m)
                    for (int n = 1; n <= r_; ++n)
                        absorb(C3(p[0], p[1], m) * Sij(m, n) * C3(n, p[2], p[3]));
            const std::array<int, 4> all = {i, a, b, c};
            for (size_t drop = 0; drop < 4; ++drop) {
                std::vector<int> rest;
                for (size_t t = 0; t < 4; ++t)
                    if (t != drop) rest.push_back(all[t]);
                absorb(K(all[drop]) * RingElement::from_gen(GeneratorId(Gen::C, rest)), Rational(-1));
            }
            if (with_h_) absorb(RingElement::from_gen(GeneratorId(Gen::H, {i, a, b, c})));
            if (lifted_) {
                const RationalFunction& cx = data_->yukawa;
                out.add_term(Monomial::one(), cx.derivative() - data_->f_tilde * cx * Rational(3));
            }
            return out;
        }
        case Gen::H: {
            if (lifted_) throw std::domain_error("derive_gen: h-symbols have no lifted rule");
            std::vector<int> next = gen.idx;
            next.push_back(i);
            absorb(RingElement::from_gen(GeneratorId(Gen::H, next)));
            return out;
        }
    }
    throw std::domain_error("derive_gen: uncovered generator kind");
}

RingElement DerivationTable::derive(const RingElement& e, int i) const {
    if (i < 1 || i > r_) throw std::invalid_argument("derive: index out of range");
    RingElement out(e.weight(), e.lower() + 1);
    const RingElement gam = lifted_ ? gamma() : RingElement(0, 1);
    for (const auto& [m, c] : e.terms()) {
        // product rule over distinct generators
        for (size_t p = 0; p < m.g.size(); ++p) {
            if (p > 0 && m.g[p] == m.g[p - 1]) continue;
            const GeneratorId& gen = m.g[p];
            const int mult = m.degree_of(gen);
            const RingElement dg = derive_gen(gen, i);
            const Monomial rest = m.without(gen);
            for (const auto& [mm, cc] : dg.terms()) {
                std::vector<GeneratorId> gens = rest.g;
                gens.insert(gens.end(), mm.g.begin(), mm.g.end());
                out.add_term(Monomial(std::move(gens)), c * cc * Rational(mult));
            }
        }
        // coefficient rules: d/dx plus the connection terms owed by any
        // weight or indices the coefficient carries implicitly
        const int cw = e.weight() - m.weight();
        const int cl = e.lower() - m.lower_net();
        if (r_ > 1 && (!c.is_constant() || cw != 0 || cl != 0))
            throw std::domain_error(
                "derive: rank >= 2 supports formal constant coefficients only");
        const RationalFunction dc = c.derivative();
        if (!dc.is_zero()) out.add_term(m, dc);
        if (cw != 0) out.add_term(m.times(GeneratorId::kk(i)), c * Rational(cw));
        if (cl != 0) {
            if (!lifted_)
                throw std::domain_error(
                    "derive: index-carrying coefficient needs the lifted connection");
            for (const auto& [gm, gc] : gam.terms()) {
                std::vector<GeneratorId> gens = m.g;
                gens.insert(gens.end(), gm.g.begin(), gm.g.end());
                out.add_term(Monomial(std::move(gens)), c * gc * Rational(-cl));
            }
        }
    }
    return out;
}

}  // namespace bcov::ring
