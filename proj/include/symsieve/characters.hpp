#pragma once

// Dirichlet characters modulo c, represented by exponent vectors on the
// unit group of each prime-power factor.  Values are exact rational
// multiples of 2*pi, converted to complex doubles only at the boundary,
// so multiplicativity and orthogonality hold exactly in the exponent
// arithmetic.

#include <cassert>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "symsieve/arith.hpp"

namespace symsieve {

// Rational angle a/b, meaning the root of unity e(a/b) = exp(2*pi*i*a/b),
// kept normalized with 0 <= num < den.
struct Angle {
    i64 num = 0;
    i64 den = 1;

    void normalize() {
        i64 g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        num %= den;
        if (num < 0) num += den;
    }
    Angle operator+(const Angle& o) const {
        Angle r{num * o.den + o.num * den, den * o.den};
        r.normalize();
        return r;
    }
    Angle conj() const {
        Angle r{den - num, den};
        r.normalize();
        return r;
    }
    bool is_zero() const { return num == 0; }
    std::complex<double> to_complex() const {
        if (num == 0) return {1.0, 0.0};
        double theta = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
        return {std::cos(theta), std::sin(theta)};
    }
    bool operator==(const Angle& o) const { return num == o.num && den == o.den; }
};

// A character value: either zero (argument shares a factor with the
// modulus) or an exact root of unity.
struct CharValue {
    std::optional<Angle> angle;  // nullopt => 0

    bool is_zero() const { return !angle.has_value(); }
    std::complex<double> to_complex() const {
        return angle ? angle->to_complex() : std::complex<double>(0.0, 0.0);
    }
    static CharValue zero() { return {}; }
    static CharValue one() { return {Angle{0, 1}}; }
};

// Structure of the unit group of Z/p^k Z, with discrete-log tables.
// For odd p the group is cyclic on a least primitive root.  For p = 2:
// k = 1 trivial, k = 2 generated by -1, k >= 3 generated by (-1, 5).
struct UnitGroup {
    i64 p = 0;
    int k = 0;
    i64 q = 1;                      // p^k
    i64 phi = 1;
    std::vector<i64> gen_orders;    // per-generator orders (size 0, 1, or 2)
    std::vector<std::vector<int>> dlog;  // dlog[g][n] for n in [0,q), -1 off units

    // Number of characters = phi = product of gen_orders.
    static std::shared_ptr<const UnitGroup> get(i64 p, int k);
};

namespace detail {

inline std::shared_ptr<const UnitGroup> build_unit_group(i64 p, int k) {
    auto g = std::make_shared<UnitGroup>();
    g->p = p;
    g->k = k;
    g->q = 1;
    for (int i = 0; i < k; ++i) g->q *= p;
    g->phi = (g->q / p) * (p - 1);
    const i64 q = g->q;
    if (p == 2) {
        if (k == 1) return g;  // trivial group
        if (k == 2) {
            g->gen_orders = {2};
            g->dlog = {std::vector<int>(q, -1)};
            g->dlog[0][1] = 0;
            g->dlog[0][3] = 1;
            return g;
        }
        i64 half = q / 4;  // order of 5
        g->gen_orders = {2, half};
        g->dlog = {std::vector<int>(q, -1), std::vector<int>(q, -1)};
        for (int a = 0; a < 2; ++a) {
            i64 x = (a == 0) ? 1 : q - 1;
            for (i64 b = 0; b < half; ++b) {
                g->dlog[0][x] = a;
                g->dlog[1][x] = static_cast<int>(b);
                x = static_cast<i64>(mul_mod(x, 5, q));
            }
        }
        return g;
    }
    // Odd p: find the least primitive root mod p^k.
    std::vector<i64> prime_divs;
    for (auto [pr, e] : factorize(g->phi).factors) prime_divs.push_back(pr);
    i64 root = 0;
    for (i64 cand = 2; cand < q; ++cand) {
        if (cand % p == 0) continue;
        bool ok = true;
        for (i64 ell : prime_divs)
            if (pow_mod(cand, g->phi / ell, q) == 1) { ok = false; break; }
        if (ok) { root = cand; break; }
    }
    assert(root != 0);
    g->gen_orders = {g->phi};
    g->dlog = {std::vector<int>(q, -1)};
    i64 x = 1;
    for (i64 i = 0; i < g->phi; ++i) {
        g->dlog[0][x] = static_cast<int>(i);
        x = static_cast<i64>(mul_mod(x, static_cast<u64>(root), q));
    }
    return g;
}

}  // namespace detail

inline std::shared_ptr<const UnitGroup> UnitGroup::get(i64 p, int k) {
    static std::mutex mu;
    static std::map<std::pair<i64, int>, std::shared_ptr<const UnitGroup>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto g = detail::build_unit_group(p, k);
    cache.emplace(key, g);
    return g;
}

enum class CharKind { trivial, primitive, semi_primitive, mixed };

struct CharacterClass {
    CharKind kind = CharKind::trivial;
    i64 conductor = 1;
};

inline const char* to_string(CharKind k) {
    switch (k) {
        case CharKind::trivial: return "trivial";
        case CharKind::primitive: return "primitive";
        case CharKind::semi_primitive: return "semi-primitive";
        case CharKind::mixed: return "mixed";
    }
    return "?";
}

class DirichletCharacter {
public:
    struct Component {
        std::shared_ptr<const UnitGroup> group;
        std::vector<i64> exps;  // one per generator, exps[i] in [0, gen_orders[i])
    };

    DirichletCharacter() = default;  // trivial character mod 1

    DirichletCharacter(i64 modulus, std::vector<Component> comps)
        : modulus_(modulus), comps_(std::move(comps)) {}

    static DirichletCharacter trivial(i64 c) {
        if (c <= 0) throw std::domain_error("character modulus must be positive");
        std::vector<Component> comps;
        for (auto [p, k] : factorize(c).factors) {
            auto g = UnitGroup::get(p, k);
            comps.push_back({g, std::vector<i64>(g->gen_orders.size(), 0)});
        }
        return DirichletCharacter(c, std::move(comps));
    }

    i64 modulus() const { return modulus_; }
    const std::vector<Component>& components() const { return comps_; }

    CharValue operator()(i64 n) const {
        if (modulus_ == 1) return CharValue::one();
        n %= modulus_;
        if (n < 0) n += modulus_;
        Angle total{0, 1};
        for (const auto& comp : comps_) {
            i64 nq = n % comp.group->q;
            if (comp.group->p == 2 && comp.group->k == 1) {
                if (nq % 2 == 0) return CharValue::zero();
                continue;
            }
            if (comp.group->dlog.empty()) continue;
            int d0 = comp.group->dlog[0][nq];
            if (d0 < 0) return CharValue::zero();
            for (std::size_t i = 0; i < comp.exps.size(); ++i) {
                i64 d = comp.group->dlog[i][nq];
                if (comp.exps[i] != 0)
                    total = total + Angle{comp.exps[i] * d, comp.group->gen_orders[i]};
            }
        }
        return {total};
    }

    std::complex<double> eval(i64 n) const { return (*this)(n).to_complex(); }

    bool is_trivial() const {
        for (const auto& comp : comps_)
            for (i64 e : comp.exps)
                if (e != 0) return false;
        return true;
    }

    DirichletCharacter square() const {
        auto comps = comps_;
        for (auto& comp : comps)
            for (std::size_t i = 0; i < comp.exps.size(); ++i)
                comp.exps[i] = (2 * comp.exps[i]) % comp.group->gen_orders[i];
        return DirichletCharacter(modulus_, std::move(comps));
    }

    bool is_real() const { return square().is_trivial(); }

    bool operator==(const DirichletCharacter& o) const {
        if (modulus_ != o.modulus_) return false;
        for (std::size_t i = 0; i < comps_.size(); ++i)
            if (comps_[i].exps != o.comps_[i].exps) return false;
        return true;
    }

private:
    i64 modulus_ = 1;
    std::vector<Component> comps_;  // sorted by prime
};

// Conductor exponent of one local component, by ascending scan: the
// smallest j with chi(n) = 1 for every unit n == 1 (mod p^j).
inline int component_conductor_exponent(const DirichletCharacter::Component& comp) {
    const auto& g = *comp.group;
    bool trivial = true;
    for (i64 e : comp.exps)
        if (e != 0) trivial = false;
    if (trivial) return 0;
    auto local_trivial_on = [&](i64 pj) {
        for (i64 n = 1 + pj; n < g.q; n += pj) {
            if (n % g.p == 0) continue;
            Angle a{0, 1};
            for (std::size_t i = 0; i < comp.exps.size(); ++i) {
                i64 d = g.dlog[i][n];
                a = a + Angle{comp.exps[i] * d, g.gen_orders[i]};
            }
            if (!a.is_zero()) return false;
        }
        return true;
    };
    i64 pj = g.p;
    for (int j = 1; j <= g.k; ++j) {
        if (local_trivial_on(pj)) return j;
        pj *= g.p;
    }
    return g.k;
}

inline i64 conductor(const DirichletCharacter& chi) {
    i64 c = 1;
    for (const auto& comp : chi.components()) {
        int j = component_conductor_exponent(comp);
        for (int i = 0; i < j; ++i) c *= comp.group->p;
    }
    return c;
}

inline CharacterClass classify(const DirichletCharacter& chi) {
    i64 cstar = conductor(chi);
    if (cstar == 1) return {CharKind::trivial, 1};
    if (cstar == chi.modulus()) return {CharKind::primitive, cstar};
    bool semi = true;
    for (const auto& comp : chi.components()) {
        int j = component_conductor_exponent(comp);
        if (j < 1 || j >= comp.group->k) { semi = false; break; }
    }
    return {semi ? CharKind::semi_primitive : CharKind::mixed, cstar};
}

// All phi(c) characters modulo c, trivial first, in a deterministic
// mixed-radix order over component exponent vectors.
inline std::vector<DirichletCharacter> enumerate_characters(i64 c) {
    if (c <= 0) throw std::domain_error("enumerate_characters: modulus must be positive");
    if (c > 1'000'000) throw std::domain_error("enumerate_characters: modulus exceeds 10^6 cap");
    std::vector<DirichletCharacter::Component> base;
    for (auto [p, k] : factorize(c).factors) {
        auto g = UnitGroup::get(p, k);
        base.push_back({g, std::vector<i64>(g->gen_orders.size(), 0)});
    }
    // Flatten generator slots across components.
    std::vector<std::pair<std::size_t, std::size_t>> slots;  // (component, generator)
    for (std::size_t ci = 0; ci < base.size(); ++ci)
        for (std::size_t gi = 0; gi < base[ci].group->gen_orders.size(); ++gi)
            slots.emplace_back(ci, gi);
    std::vector<DirichletCharacter> out;
    i64 total = euler_phi(c);
    out.reserve(total);
    std::vector<i64> idx(slots.size(), 0);
    for (i64 count = 0; count < total; ++count) {
        auto comps = base;
        for (std::size_t s = 0; s < slots.size(); ++s)
            comps[slots[s].first].exps[slots[s].second] = idx[s];
        out.emplace_back(c, std::move(comps));
        // Increment mixed-radix counter, least-significant slot last so the
        // trivial character (all zeros) comes first.
        for (std::size_t s = slots.size(); s-- > 0;) {
            i64 order = base[slots[s].first].group->gen_orders[slots[s].second];
            if (++idx[s] < order) break;
            idx[s] = 0;
        }
    }
    return out;
}

// chi induced to a multiple modulus: agrees with chi on units of the
// larger modulus, zero elsewhere.
inline DirichletCharacter induce(const DirichletCharacter& chi, i64 c_multiple) {
    if (c_multiple % chi.modulus() != 0)
        throw std::domain_error("induce: target modulus is not a multiple");
    std::vector<DirichletCharacter::Component> comps;
    for (auto [p, m] : factorize(c_multiple).factors) {
        auto g = UnitGroup::get(p, m);
        DirichletCharacter::Component nc{g, std::vector<i64>(g->gen_orders.size(), 0)};
        // Find the old local component at p, if any.
        const DirichletCharacter::Component* old = nullptr;
        for (const auto& oc : chi.components())
            if (oc.group->p == p) { old = &oc; break; }
        if (old != nullptr) {
            int k = old->group->k;
            if (p != 2) {
                // chi_new(n) = chi_old(n mod p^k); exponent transported via
                // the dlog of the new generator in the old group.
                i64 root_m = 0;
                for (i64 n = 0; n < g->q; ++n)
                    if (g->dlog[0][n] == 1) { root_m = n; break; }
                i64 d_old = old->group->dlog[0][root_m % old->group->q];
                // e_new / phi_m == e_old * d_old / phi_k (mod 1)
                i64 ratio = g->phi / old->group->phi;
                nc.exps[0] = (old->exps[0] * d_old % old->group->phi) * ratio % g->phi;
            } else {
                if (k == 1) {
                    // trivial local character; nothing to transport
                } else if (k == 2) {
                    if (m == 2) {
                        nc.exps[0] = old->exps[0];
                    } else {
                        nc.exps[0] = old->exps[0];  // value at -1; 5 == 1 (mod 4)
                    }
                } else {
                    nc.exps[0] = old->exps[0];
                    i64 ratio = (g->q / 4) / (old->group->q / 4);
                    nc.exps[1] = old->exps[1] * ratio % (g->q / 4);
                }
            }
        }
        comps.push_back(std::move(nc));
    }
    return DirichletCharacter(c_multiple, std::move(comps));
}

// Primitive character of modulus conductor(chi) inducing chi.  Built per
// component by brute scan over local characters of the smaller modulus.
inline DirichletCharacter restrict_to_conductor(const DirichletCharacter& chi) {
    std::vector<DirichletCharacter::Component> comps;
    i64 cstar = 1;
    for (const auto& comp : chi.components()) {
        int j = component_conductor_exponent(comp);
        if (j == 0) continue;
        i64 p = comp.group->p;
        auto gj = UnitGroup::get(p, j);
        i64 pj = gj->q;
        cstar *= pj;
        // Scan exponent vectors on the smaller group for agreement.
        std::vector<i64> exps(gj->gen_orders.size(), 0);
        bool found = false;
        while (!found) {
            bool ok = true;
            for (i64 n = 1; n < comp.group->q && ok; ++n) {
                if (n % p == 0) continue;
                Angle big{0, 1};
                for (std::size_t i = 0; i < comp.exps.size(); ++i)
                    big = big + Angle{comp.exps[i] * comp.group->dlog[i][n], comp.group->gen_orders[i]};
                Angle small{0, 1};
                i64 nq = n % pj;
                for (std::size_t i = 0; i < exps.size(); ++i)
                    small = small + Angle{exps[i] * gj->dlog[i][nq], gj->gen_orders[i]};
                if (!(big == small)) ok = false;
            }
            if (ok) { found = true; break; }
            std::size_t s = exps.size();
            while (s-- > 0) {
                if (++exps[s] < gj->gen_orders[s]) break;
                exps[s] = 0;
                if (s == 0) throw std::logic_error("restrict_to_conductor: no match found");
            }
        }
        comps.push_back({gj, exps});
    }
    return DirichletCharacter(cstar, std::move(comps));
}

// Pointwise product of characters with coprime moduli.
inline DirichletCharacter product_coprime(const DirichletCharacter& a, const DirichletCharacter& b) {
    if (std::gcd(a.modulus(), b.modulus()) != 1)
        throw std::domain_error("product_coprime: moduli must be coprime");
    std::vector<DirichletCharacter::Component> comps;
    auto ia = a.components().begin(), ea = a.components().end();
    auto ib = b.components().begin(), eb = b.components().end();
    while (ia != ea || ib != eb) {
        if (ib == eb || (ia != ea && ia->group->p < ib->group->p))
            comps.push_back(*ia++);
        else
            comps.push_back(*ib++);
    }
    return DirichletCharacter(a.modulus() * b.modulus(), std::move(comps));
}

// The section-5 factorization chi = chi0 * chi1 * chi2 with c = c0*c1*c2:
// chi0 trivial, chi1 primitive, chi2 semi-primitive, pairwise coprime.
struct CharacterFactorization {
    DirichletCharacter chi0, chi1, chi2;
};

inline CharacterFactorization factorize_character(const DirichletCharacter& chi) {
    std::vector<DirichletCharacter::Component> comps0, comps1, comps2;
    i64 c0 = 1, c1 = 1, c2 = 1;
    for (const auto& comp : chi.components()) {
        int j = component_conductor_exponent(comp);
        int k = comp.group->k;
        if (j == 0) { c0 *= comp.group->q; comps0.push_back(comp); }
        else if (j == k) { c1 *= comp.group->q; comps1.push_back(comp); }
        else { c2 *= comp.group->q; comps2.push_back(comp); }
    }
    return {DirichletCharacter(c0, std::move(comps0)),
            DirichletCharacter(c1, std::move(comps1)),
            DirichletCharacter(c2, std::move(comps2))};
}

}  // namespace symsieve
