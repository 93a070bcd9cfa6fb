#pragma once

// The Fourier coefficient Fhat(chi) of F(w) = S(w^2, 1; c) e_c(2w) on the
// unit group mod c: direct DFT, the O(c^2) double-sum definition, twisted
// multiplicativity, the closed forms per character class, and the two
// average sums.

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>

#include "symsieve/arith.hpp"
#include "symsieve/characters.hpp"
#include "symsieve/expsums.hpp"

namespace symsieve {

// Per-modulus table of F(u) = S(u^2, 1; c) e_c(2u) over units u, the
// shared input of every DFT at that modulus.
struct FTable {
    i64 c = 1;
    std::vector<cplx> F;  // indexed by u in [0, c), zero off units

    static std::shared_ptr<const FTable> get(i64 c);
};

inline std::shared_ptr<const FTable> FTable::get(i64 c) {
    static std::mutex mu;
    static std::map<i64, std::shared_ptr<const FTable>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(c);
        if (it != cache.end()) return it->second;
    }
    auto ft = std::make_shared<FTable>();
    ft->c = c;
    ft->F.assign(std::max<i64>(c, 1), cplx(0.0, 0.0));
    if (c == 1) {
        ft->F[0] = 1.0;
    } else {
        auto t = ModulusTables::get(c);
        for (i64 u = 1; u < c; ++u) {
            if (t->inv[u] < 0) continue;
            ft->F[u] = kloosterman(u * u % c, 1, c) * t->phase[(2 * u) % c];
        }
    }
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(c, ft);
    return it->second;
}

// Value table chi(u) for u in [0, c); zero off units.
inline std::vector<cplx> character_table(const DirichletCharacter& chi) {
    i64 c = chi.modulus();
    std::vector<cplx> tab(std::max<i64>(c, 1));
    for (i64 u = 0; u < c; ++u) tab[u] = chi.eval(u);
    if (c == 1) tab[0] = 1.0;
    return tab;
}

// Fhat(chi) = (1/phi(c)) sum over u of conj(chi)(u) S(u^2,1;c) e_c(2u).
inline cplx fhat_direct(const DirichletCharacter& chi) {
    i64 c = chi.modulus();
    if (c == 1) return {1.0, 0.0};
    auto ft = FTable::get(c);
    cplx s = 0;
    for (i64 u = 1; u < c; ++u) {
        cplx v = chi.eval(u);
        if (v == cplx(0.0, 0.0)) continue;
        s += std::conj(v) * ft->F[u];
    }
    return s / static_cast<double>(euler_phi(c));
}

// The double-sum form (1/phi(c)) sum_{u,t} conj(chi)(ut) e_c(t (u+1)^2);
// the independent O(c^2) route.
inline cplx fhat_double_sum(const DirichletCharacter& chi) {
    i64 c = chi.modulus();
    if (c == 1) return {1.0, 0.0};
    auto mt = ModulusTables::get(c);
    auto tab = character_table(chi);
    cplx s = 0;
    for (i64 u = 0; u < c; ++u) {
        if (mt->inv[u] < 0) continue;
        i64 q = (u + 1) * (u + 1) % c;
        cplx inner = 0;
        i64 idx = 0;
        for (i64 t = 0; t < c; ++t) {
            if (mt->inv[t] >= 0) inner += std::conj(tab[t]) * mt->phase[idx];
            idx += q;
            if (idx >= c) idx -= c;
        }
        s += std::conj(tab[u]) * inner;
    }
    return s / static_cast<double>(euler_phi(c));
}

// Twisted multiplicativity:
// Fhat(chi1 chi2) = conj(chi1)(c2) conj(chi2)(c1) Fhat(chi1) Fhat(chi2).
inline bool twisted_multiplicativity_check(const DirichletCharacter& chi1,
                                           const DirichletCharacter& chi2,
                                           double tol = kTol) {
    i64 c1 = chi1.modulus(), c2 = chi2.modulus();
    if (std::gcd(c1, c2) != 1)
        throw std::domain_error("twisted_multiplicativity_check: moduli must be coprime");
    DirichletCharacter prod = product_coprime(chi1, chi2);
    cplx lhs = fhat_direct(prod);
    cplx rhs = std::conj(chi1.eval(c2)) * std::conj(chi2.eval(c1)) *
               fhat_direct(chi1) * fhat_direct(chi2);
    return std::abs(lhs - rhs) < tol;
}

// Closed-form knowledge about Fhat(chi) for a prime-power modulus: an
// exact complex value, an exact absolute value, or an upper bound on the
// absolute value.
struct FhatClosed {
    enum class Kind { exact_value, exact_abs, upper_bound } kind = Kind::exact_value;
    double value = 0.0;  // the value, the absolute value, or the bound
};

inline FhatClosed fhat_closed(const DirichletCharacter& chi) {
    i64 c = chi.modulus();
    if (c == 1) return {FhatClosed::Kind::exact_value, 1.0};
    if (chi.components().size() != 1)
        throw std::domain_error("fhat_closed: requires a prime-power modulus");
    const auto& comp = chi.components()[0];
    i64 p = comp.group->p;
    int k = comp.group->k;
    int j = component_conductor_exponent(comp);
    double pd = static_cast<double>(p);
    if (j == 0) {
        // Trivial case, exact values.
        if (k == 1) return {FhatClosed::Kind::exact_value, 1.0 / (pd - 1.0)};
        if (k % 2 == 0) return {FhatClosed::Kind::exact_value, std::pow(pd, k / 2.0)};
        return {FhatClosed::Kind::exact_value, 0.0};
    }
    if (j == k) {
        // Primitive case.
        if (p == 2) return {FhatClosed::Kind::exact_value, 0.0};
        bool legendre = (k == 1) && chi.is_real();
        if (legendre) return {FhatClosed::Kind::exact_abs, std::sqrt(pd) / (pd - 1.0)};
        return {FhatClosed::Kind::exact_abs, pd / (pd - 1.0)};
    }
    // Semi-primitive case, 1 <= j < k.
    if ((k - j) % 2 != 0) return {FhatClosed::Kind::exact_value, 0.0};
    bool chi2_trivial = chi.square().is_trivial();
    if (chi2_trivial) return {FhatClosed::Kind::upper_bound, std::pow(pd, k / 2.0)};
    if (p != 2) return {FhatClosed::Kind::exact_value, 0.0};
    if (k > j + 2) return {FhatClosed::Kind::exact_value, 0.0};
    // p = 2, k = j + 2: a Gauss sum repeated twice.
    return {FhatClosed::Kind::upper_bound, std::pow(2.0, 2.5)};
}

// |Fhat| for a general modulus, assembled over prime-power components by
// multiplicativity.  Returns an upper bound if any component only has a
// bound.
inline FhatClosed fhat_closed_abs(const DirichletCharacter& chi) {
    double prod = 1.0;
    bool bound = false;
    for (const auto& comp : chi.components()) {
        DirichletCharacter local(comp.group->q, {comp});
        FhatClosed fc = fhat_closed(local);
        if (fc.kind == FhatClosed::Kind::upper_bound) bound = true;
        prod *= std::abs(fc.value);
    }
    return {bound ? FhatClosed::Kind::upper_bound : FhatClosed::Kind::exact_abs, prod};
}

// |Fhat(chi_0 mod c)| via the trivial-case closed form, multiplicative
// over prime powers.
inline double fhat_trivial_abs(i64 c) {
    double prod = 1.0;
    for (auto [p, k] : factorize(c).factors) {
        double pd = static_cast<double>(p);
        if (k == 1) prod *= 1.0 / (pd - 1.0);
        else if (k % 2 == 0) prod *= std::pow(pd, k / 2.0);
        else return 0.0;
    }
    return prod;
}

struct AvgSum {
    double sum = 0.0;
    double ratio_to_log = 0.0;  // sum / log(x), 0 at x = 1
};

// Partial sum over trivial characters: sum over c <= x of |Fhat(chi_0 mod c)| / c.
inline AvgSum avg_trivial_sum(i64 x) {
    if (x < 1 || x > 100'000) throw std::domain_error("avg_trivial_sum: x out of range");
    double s = 0.0;
    for (i64 c = 1; c <= x; ++c) s += fhat_trivial_abs(c) / static_cast<double>(c);
    double lx = std::log(static_cast<double>(x));
    return {s, x > 1 ? s / lx : 0.0};
}

inline bool is_powerful(i64 n) {
    for (auto [p, e] : factorize(n).factors)
        if (e < 2) return false;
    return true;
}

// Partial sum over c <= x and semi-primitive chi mod c
// of |Fhat(chi)| / c.  Semi-primitive characters only exist for powerful
// moduli, so the enumeration skips everything else.
inline AvgSum avg_semiprimitive_sum(i64 x) {
    if (x < 1 || x > 10'000) throw std::domain_error("avg_semiprimitive_sum: x out of range");
    double s = 0.0;
    for (i64 c = 2; c <= x; ++c) {
        if (!is_powerful(c)) continue;
        for (const auto& chi : enumerate_characters(c)) {
            if (classify(chi).kind != CharKind::semi_primitive) continue;
            s += std::abs(fhat_direct(chi)) / static_cast<double>(c);
        }
    }
    double lx = std::log(static_cast<double>(x));
    return {s, x > 1 ? s / lx : 0.0};
}

// One row of the scan output.
struct FhatReport {
    i64 c = 1;
    i64 char_index = 0;
    CharacterClass cls;
    cplx direct_value;
    FhatClosed closed;
    bool agree = true;
};

inline bool closed_form_agrees(const cplx& direct, const FhatClosed& fc, double tol = kTol) {
    switch (fc.kind) {
        case FhatClosed::Kind::exact_value:
            // Exact real values in the cases the closed forms produce.
            return std::abs(direct - cplx(fc.value, 0.0)) < tol;
        case FhatClosed::Kind::exact_abs:
            return std::abs(std::abs(direct) - fc.value) < tol;
        case FhatClosed::Kind::upper_bound:
            return std::abs(direct) <= fc.value + tol;
    }
    return false;
}

inline std::vector<FhatReport> scan_fhat(i64 c) {
    std::vector<FhatReport> rows;
    auto chars = enumerate_characters(c);
    for (std::size_t i = 0; i < chars.size(); ++i) {
        FhatReport r;
        r.c = c;
        r.char_index = static_cast<i64>(i);
        r.cls = classify(chars[i]);
        r.direct_value = fhat_direct(chars[i]);
        r.closed = fhat_closed_abs(chars[i]);
        r.agree = closed_form_agrees(r.direct_value, r.closed);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace symsieve
