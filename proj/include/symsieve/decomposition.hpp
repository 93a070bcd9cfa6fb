#pragma once

// Three routes to D(m, n) with a compactly supported test weight in place
// of the analytic transform: the raw c-sum, the Selberg/Moebius
// decomposition, and the character-expanded form through Fhat.  The
// decomposition identities are purely arithmetic, so any compact weight
// makes all three sides finite and exactly comparable.

#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "symsieve/expsums.hpp"
#include "symsieve/fhat.hpp"

namespace symsieve {

struct TestWeight {
    double lo = 0.0, hi = 0.0;  // support [lo, hi], 0 < lo < hi
    std::function<double(double)> f;
    std::string name;
    double max_value = 1.0;

    double operator()(double x) const {
        if (x <= lo || x >= hi) return 0.0;
        return f(x);
    }
};

// Piecewise-linear tent with peak 1 at the midpoint of [lo, hi].
inline TestWeight tent_weight(double lo, double hi) {
    double mid = 0.5 * (lo + hi);
    return {lo, hi,
            [lo, hi, mid](double x) {
                return x <= mid ? (x - lo) / (mid - lo) : (hi - x) / (hi - mid);
            },
            "tent[" + std::to_string(lo) + "," + std::to_string(hi) + "]", 1.0};
}

// Smooth bump exp(1 - 1/(1-u^2)) on [lo, hi], u the affine coordinate.
inline TestWeight bump_weight(double lo, double hi) {
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    return {lo, hi,
            [mid, half](double x) {
                double u = (x - mid) / half;
                double d = 1.0 - u * u;
                return d > 0 ? std::exp(1.0 - 1.0 / d) : 0.0;
            },
            "bump[" + std::to_string(lo) + "," + std::to_string(hi) + "]", 1.0};
}

// The fixed battery used by the verification suite: supports spanning one
// to three octaves.
inline std::vector<TestWeight> weight_battery() {
    return {tent_weight(4.0, 8.0), tent_weight(6.0, 24.0), tent_weight(3.0, 24.0),
            bump_weight(5.0, 20.0), bump_weight(8.0, 32.0)};
}

namespace detail {
// c-window for weight argument x = A / c to land in (lo, hi).
inline std::pair<i64, i64> c_window(double A, const TestWeight& H) {
    if (!(H.lo > 0.0) || !(H.hi > H.lo) || !std::isfinite(H.hi))
        throw std::domain_error("test weight must have bounded support away from 0");
    i64 clo = static_cast<i64>(std::floor(A / H.hi)) + 1;
    i64 chi = static_cast<i64>(std::ceil(A / H.lo)) - 1;
    return {std::max<i64>(clo, 1), chi};
}
}  // namespace detail

// D(m,n) = sum_c S(m^2, n^2; c) e_c(2mn) c^{-1} H(4 pi mn / c), + branch.
inline cplx d_raw(i64 m, i64 n, const TestWeight& H) {
    if (m < 1 || n < 1) throw std::domain_error("d_raw: m, n must be positive");
    double A = 4.0 * std::numbers::pi * static_cast<double>(m) * static_cast<double>(n);
    auto [clo, chi] = detail::c_window(A, H);
    cplx s = 0;
    for (i64 c = clo; c <= chi; ++c) {
        double h = H(A / static_cast<double>(c));
        if (h == 0.0) continue;
        auto t = ModulusTables::get(c);
        cplx term = kloosterman(m * m % c, n * n % c, c) * t->phase[(2 * m % c) * (n % c) % c];
        s += term * (h / static_cast<double>(c));
    }
    return s;
}

// The (d, g, c) triple sum with S((mn/dg)^2, 1; c) e_c(2mn/dg): Selberg
// identity on each term, then Moebius to restore the coprimality (c, mn/d) = 1.
inline cplx d_decomposed(i64 m, i64 n, const TestWeight& H) {
    if (m < 1 || n < 1) throw std::domain_error("d_decomposed: m, n must be positive");
    double A = 4.0 * std::numbers::pi * static_cast<double>(m) * static_cast<double>(n);
    i64 mn = m * n;
    i64 h = std::gcd(m, n);
    cplx s = 0;
    for (i64 d : divisors(h * h)) {          // divisors of (m^2, n^2) = (m,n)^2
        i64 w0 = mn / d;
        for (i64 g : divisors(w0)) {
            int mu = moebius(g);
            if (mu == 0) continue;
            i64 w = w0 / g;
            auto [clo, chigh] = detail::c_window(A / static_cast<double>(d * g), H);
            cplx inner = 0;
            for (i64 c = clo; c <= chigh; ++c) {
                if (std::gcd(c, w0) != 1) continue;
                double hval = H(A / static_cast<double>(d * g) / static_cast<double>(c));
                if (hval == 0.0) continue;
                auto t = ModulusTables::get(c);
                cplx term = kloosterman(w % c * (w % c) % c, 1, c) * t->phase[(2 * w) % c];
                inner += term * (hval / static_cast<double>(c));
            }
            s += (static_cast<double>(mu) / static_cast<double>(g)) * inner;
        }
    }
    return s;
}

namespace detail {
// Cached Fhat values for every character mod c, in enumeration order.
struct FhatSpectrum {
    std::vector<DirichletCharacter> chars;
    std::vector<cplx> fhat;

    static std::shared_ptr<const FhatSpectrum> get(i64 c) {
        static std::mutex mu;
        static std::map<i64, std::shared_ptr<const FhatSpectrum>> cache;
        {
            std::lock_guard<std::mutex> lock(mu);
            auto it = cache.find(c);
            if (it != cache.end()) return it->second;
        }
        auto sp = std::make_shared<FhatSpectrum>();
        sp->chars = enumerate_characters(c);
        for (const auto& chi : sp->chars) sp->fhat.push_back(fhat_direct(chi));
        std::lock_guard<std::mutex> lock(mu);
        auto [it, inserted] = cache.emplace(c, sp);
        return it->second;
    }
};
}  // namespace detail

// The character-expanded form: F(w) replaced by sum_chi Fhat(chi) chi(w)
// inside d_decomposed.
inline cplx d_fourier_form(i64 m, i64 n, const TestWeight& H) {
    if (m < 1 || n < 1) throw std::domain_error("d_fourier_form: m, n must be positive");
    double A = 4.0 * std::numbers::pi * static_cast<double>(m) * static_cast<double>(n);
    i64 mn = m * n;
    i64 h = std::gcd(m, n);
    cplx s = 0;
    for (i64 d : divisors(h * h)) {
        i64 w0 = mn / d;
        for (i64 g : divisors(w0)) {
            int mu = moebius(g);
            if (mu == 0) continue;
            i64 w = w0 / g;
            auto [clo, chigh] = detail::c_window(A / static_cast<double>(d * g), H);
            cplx inner = 0;
            for (i64 c = clo; c <= chigh; ++c) {
                if (std::gcd(c, w0) != 1) continue;
                double hval = H(A / static_cast<double>(d * g) / static_cast<double>(c));
                if (hval == 0.0) continue;
                auto sp = detail::FhatSpectrum::get(c);
                cplx fw = 0;
                i64 wc = w % c;
                for (std::size_t i = 0; i < sp->chars.size(); ++i)
                    fw += sp->fhat[i] * sp->chars[i].eval(wc);
                inner += fw * (hval / static_cast<double>(c));
            }
            s += (static_cast<double>(mu) / static_cast<double>(g)) * inner;
        }
    }
    return s;
}

}  // namespace symsieve
