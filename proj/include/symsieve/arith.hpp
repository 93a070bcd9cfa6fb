#pragma once

// Exact integer and modular arithmetic substrate: factorization,
// multiplicative functions, CRT, and small helpers consumed by the
// character and exponential-sum layers.  Everything here is pure and
// deterministic; inputs are capped at desk scale (n <= 10^12).

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace symsieve {

using i64 = std::int64_t;
using u64 = std::uint64_t;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin, valid for all n < 3.3 * 10^24 with this base
// set; we only need n <= 10^12.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

struct Factorization {
    i64 value = 1;
    std::vector<std::pair<i64, int>> factors;  // (prime, exponent), primes increasing
};

inline Factorization factorize(i64 n) {
    if (n <= 0) throw std::domain_error("factorize: input must be positive");
    if (n > 1'000'000'000'000LL) throw std::domain_error("factorize: input exceeds 10^12 cap");
    Factorization f;
    f.value = n;
    i64 m = n;
    for (i64 p = 2; p * p <= m && p <= 1'000'000; p += (p == 2 ? 1 : 2)) {
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) { m /= p; ++e; }
            f.factors.emplace_back(p, e);
        }
    }
    if (m > 1) {
        // After trial division to 10^6 the cofactor of n <= 10^12 is prime.
        if (!is_prime(static_cast<u64>(m)))
            throw std::logic_error("factorize: cofactor not prime");
        f.factors.emplace_back(m, 1);
    }
    return f;
}

inline i64 euler_phi(i64 n) {
    auto f = factorize(n);
    i64 phi = 1;
    for (auto [p, e] : f.factors) {
        i64 pk = 1;
        for (int i = 0; i < e - 1; ++i) pk *= p;
        phi *= pk * (p - 1);
    }
    return phi;
}

inline int moebius(i64 n) {
    auto f = factorize(n);
    for (auto [p, e] : f.factors)
        if (e > 1) return 0;
    return (f.factors.size() % 2 == 0) ? 1 : -1;
}

inline std::vector<i64> divisors(i64 n) {
    auto f = factorize(n);
    std::vector<i64> ds{1};
    for (auto [p, e] : f.factors) {
        std::size_t sz = ds.size();
        i64 pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < sz; ++j) ds.push_back(ds[j] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

inline int valuation(i64 n, i64 p) {
    int v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

struct ResidueClass {
    i64 residue = 0;   // in [0, modulus)
    i64 modulus = 1;
};

// Extended gcd: returns g = gcd(a,b) and x with a*x == g (mod b).
inline i64 egcd(i64 a, i64 b, i64& x, i64& y) {
    if (b == 0) { x = 1; y = 0; return a; }
    i64 x1, y1;
    i64 g = egcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

inline ResidueClass mod_inverse(i64 a, i64 c) {
    if (c <= 0) throw std::domain_error("mod_inverse: modulus must be positive");
    if (c == 1) return {0, 1};
    a %= c;
    if (a < 0) a += c;
    i64 x, y;
    i64 g = egcd(a, c, x, y);
    if (g != 1) throw std::domain_error("mod_inverse: argument not invertible");
    x %= c;
    if (x < 0) x += c;
    return {x, c};
}

inline ResidueClass crt_combine(const std::vector<std::pair<i64, i64>>& pairs) {
    i64 r = 0, m = 1;
    for (auto [ri, mi] : pairs) {
        if (mi <= 0) throw std::domain_error("crt_combine: modulus must be positive");
        if (std::gcd(m, mi) != 1) throw std::domain_error("crt_combine: moduli not pairwise coprime");
        i64 ri_n = ri % mi;
        if (ri_n < 0) ri_n += mi;
        // Solve x == r (mod m), x == ri_n (mod mi).
        i64 inv = mod_inverse(m % mi, mi).residue;
        i64 t = static_cast<i64>(mul_mod(static_cast<u64>((ri_n - r % mi + mi) % mi),
                                         static_cast<u64>(inv), static_cast<u64>(mi)));
        r = r + m * t;
        m = m * mi;
        r %= m;
    }
    return {r, m};
}

// Smallest d' with d | (d')^2, i.e. prod p^ceil(e/2).
inline i64 d_prime(i64 d) {
    auto f = factorize(d);
    i64 r = 1;
    for (auto [p, e] : f.factors)
        for (int i = 0; i < (e + 1) / 2; ++i) r *= p;
    return r;
}

inline std::vector<i64> primes_in(i64 lo, i64 hi) {
    std::vector<i64> out;
    if (lo > hi) return out;
    lo = std::max<i64>(lo, 2);
    if (hi - lo > 100'000'000) throw std::domain_error("primes_in: range too wide");
    i64 root = 1;
    while ((root + 1) * (root + 1) <= hi) ++root;
    std::vector<char> small(static_cast<std::size_t>(root) + 1, 1);
    std::vector<i64> base;
    for (i64 p = 2; p <= root; ++p) {
        if (!small[p]) continue;
        base.push_back(p);
        for (i64 q = p * p; q <= root; q += p) small[q] = 0;
    }
    std::vector<char> seg(static_cast<std::size_t>(hi - lo + 1), 1);
    for (i64 p : base) {
        i64 start = std::max(p * p, ((lo + p - 1) / p) * p);
        for (i64 q = start; q <= hi; q += p) seg[q - lo] = 0;
    }
    for (i64 n = lo; n <= hi; ++n)
        if (seg[n - lo]) out.push_back(n);
    return out;
}

}  // namespace symsieve
