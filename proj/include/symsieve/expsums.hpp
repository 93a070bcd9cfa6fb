#pragma once

// Exact evaluation of the complete exponential sums: Kloosterman sums by
// direct summation over units, Ramanujan sums, Gauss and Jacobi sums, the
// Selberg identity, and the prime-squared closed form.  Each modulus gets
// an immutable phase table e_c(x) and an inverse table, shared behind a
// cache.

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "symsieve/arith.hpp"
#include "symsieve/characters.hpp"

namespace symsieve {

inline constexpr double kTol = 1e-8;

using cplx = std::complex<double>;

struct ModulusTables {
    i64 c = 1;
    std::vector<cplx> phase;  // phase[x] = e_c(x)
    std::vector<i64> inv;     // inv[x] = x^{-1} mod c, or -1 off units

    static std::shared_ptr<const ModulusTables> get(i64 c);
};

inline std::shared_ptr<const ModulusTables> ModulusTables::get(i64 c) {
    static std::mutex mu;
    static std::map<i64, std::shared_ptr<const ModulusTables>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(c);
        if (it != cache.end()) return it->second;
    }
    auto t = std::make_shared<ModulusTables>();
    t->c = c;
    t->phase.resize(c);
    t->inv.assign(c, -1);
    for (i64 x = 0; x < c; ++x) {
        double theta = 2.0 * std::numbers::pi * static_cast<double>(x) / static_cast<double>(c);
        t->phase[x] = {std::cos(theta), std::sin(theta)};
        if (std::gcd(x, c) == 1) t->inv[x] = mod_inverse(x, c).residue;
    }
    if (c == 1) t->inv[0] = 0;
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(c, t);
    return it->second;
}

// S(a, b; c) = sum over units x mod c of e_c(a x + b x^{-1}).
inline cplx kloosterman(i64 a, i64 b, i64 c) {
    if (c <= 0) throw std::domain_error("kloosterman: modulus must be positive");
    if (c == 1) return {1.0, 0.0};
    auto t = ModulusTables::get(c);
    a %= c; if (a < 0) a += c;
    b %= c; if (b < 0) b += c;
    cplx s = 0;
    for (i64 x = 1; x < c; ++x) {
        if (t->inv[x] < 0) continue;
        s += t->phase[(a * x + b * t->inv[x]) % c];
    }
    return s;
}

// The closed form S(m^2, n^2; p^2) = p (e_{p^2}(2mn) + e_{p^2}(-2mn))
// = 2p cos(4 pi mn / p^2) for odd prime p not dividing mn: the square
// roots of (mn)^2 mod p^2 are +-mn, each contributing a stationary-phase
// term of weight p.
inline cplx kloosterman_p2_closed(i64 m, i64 n, i64 p) {
    if (p < 3 || !is_prime(static_cast<u64>(p)))
        throw std::domain_error("kloosterman_p2_closed: p must be an odd prime");
    if ((m * n) % p == 0)
        throw std::domain_error("kloosterman_p2_closed: requires p coprime to mn");
    i64 p2 = p * p;
    i64 mp = m % p2; if (mp < 0) mp += p2;
    i64 np = n % p2; if (np < 0) np += p2;
    double theta = 4.0 * std::numbers::pi * static_cast<double>(mp * np % p2) / static_cast<double>(p2);
    return {2.0 * static_cast<double>(p) * std::cos(theta), 0.0};
}

struct SelbergCheck {
    cplx lhs, rhs;
    bool agree = false;
};

// Selberg identity: S(m^2, n^2; c) = sum over d | (m^2, n^2, c) of
// d * S(m^2 n^2 / d^2, 1; c/d).
inline SelbergCheck selberg_identity_check(i64 m, i64 n, i64 c) {
    if (m < 1 || n < 1 || c < 1)
        throw std::domain_error("selberg_identity_check: arguments must be positive");
    i64 m2 = m * m, n2 = n * n;
    cplx lhs = kloosterman(m2 % c, n2 % c, c);
    cplx rhs = 0;
    i64 g = std::gcd(std::gcd(m2, n2), c);
    for (i64 d : divisors(g)) {
        i64 cd = c / d;
        i64 arg = (m2 / d) % cd * ((n2 / d) % cd) % cd;
        rhs += static_cast<double>(d) * kloosterman(arg, 1, cd);
    }
    return {lhs, rhs, std::abs(lhs - rhs) < kTol};
}

// S(p^k, 1; p^e) = 0 for e >= 2, k >= 1.
inline bool prime_power_vanishing_check(i64 p, int k, int cexp) {
    if (k < 1 || cexp < 2) throw std::domain_error("prime_power_vanishing_check: need k >= 1, cexp >= 2");
    i64 pe = 1;
    for (int i = 0; i < cexp; ++i) pe *= p;
    i64 a = pow_mod(static_cast<u64>(p), static_cast<u64>(k), static_cast<u64>(pe));
    return std::abs(kloosterman(a, 1, pe)) < kTol;
}

// Ramanujan sum c_q(n), by the divisor formula; exact integer.
inline i64 ramanujan_sum(i64 q, i64 n) {
    if (q < 1) throw std::domain_error("ramanujan_sum: q must be positive");
    n %= q; if (n < 0) n += q;
    i64 g = (n == 0) ? q : std::gcd(q, n);
    i64 s = 0;
    for (i64 d : divisors(g)) s += d * moebius(q / d);
    return s;
}

// Direct unit-sum route for the Ramanujan sum, the test oracle.
inline cplx ramanujan_sum_direct(i64 q, i64 n) {
    if (q == 1) return {1.0, 0.0};
    auto t = ModulusTables::get(q);
    n %= q; if (n < 0) n += q;
    cplx s = 0;
    for (i64 x = 1; x < q; ++x)
        if (t->inv[x] >= 0) s += t->phase[(x * n) % q];
    return s;
}

// Gauss sum tau(chi) = sum over t mod c of chi(t) e_c(t).
inline cplx gauss_sum(const DirichletCharacter& chi) {
    i64 c = chi.modulus();
    if (c == 1) return {1.0, 0.0};
    auto t = ModulusTables::get(c);
    cplx s = 0;
    for (i64 x = 1; x < c; ++x) {
        if (t->inv[x] < 0) continue;
        s += chi.eval(x) * t->phase[x];
    }
    return s;
}

// Jacobi sum with the convention J(chi, psi) = sum over u mod c of
// chi(u) psi(1 - u).  The shifted sum sum_u conj(chi)(u) chi^2(u+1)
// equals chi(-1) J(conj(chi), chi^2) after u -> -u - 1; absolute values are
// convention-independent.
inline cplx jacobi_sum(const DirichletCharacter& chi, const DirichletCharacter& psi) {
    if (chi.modulus() != psi.modulus())
        throw std::domain_error("jacobi_sum: characters must share a modulus");
    i64 c = chi.modulus();
    if (c == 1) return {1.0, 0.0};
    cplx s = 0;
    for (i64 u = 0; u < c; ++u) {
        CharValue a = chi(u);
        if (a.is_zero()) continue;
        CharValue b = psi((1 - u) % c + c);
        if (b.is_zero()) continue;
        s += (*a.angle + *b.angle).to_complex();
    }
    return s;
}

}  // namespace symsieve
