#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symsieve/decomposition.hpp"

using namespace symsieve;

TEST_CASE("test weights vanish outside their support") {
    for (const auto& H : weight_battery()) {
        CHECK(H(H.lo) == 0.0);
        CHECK(H(H.hi) == 0.0);
        CHECK(H(H.lo - 1.0) == 0.0);
        CHECK(H(H.hi + 1.0) == 0.0);
        double mid = 0.5 * (H.lo + H.hi);
        CHECK(H(mid) > 0.0);
        CHECK(H(mid) <= H.max_value + 1e-12);
    }
}

TEST_CASE("tent and bump shapes") {
    auto t = tent_weight(4.0, 8.0);
    CHECK(t(6.0) == doctest::Approx(1.0));
    CHECK(t(5.0) == doctest::Approx(0.5));
    CHECK(t(7.0) == doctest::Approx(0.5));
    auto b = bump_weight(5.0, 20.0);
    CHECK(b(12.5) == doctest::Approx(1.0));
    CHECK(b(12.5 - 3.0) == doctest::Approx(b(12.5 + 3.0)));  // even about the midpoint
}

TEST_CASE("c-window covers exactly the support") {
    auto H = tent_weight(4.0, 8.0);
    double A = 100.0;
    auto [clo, chigh] = detail::c_window(A, H);
    for (i64 c = std::max<i64>(1, clo - 3); c <= chigh + 3; ++c) {
        double x = A / static_cast<double>(c);
        if (H(x) != 0.0) {
            CHECK(c >= clo);
            CHECK(c <= chigh);
        }
    }
}

TEST_CASE("three routes to D(m, n) agree across the weight battery") {
    auto battery = weight_battery();
    for (auto [m, n] : {std::pair<i64, i64>{1, 1}, {1, 2}, {2, 3}, {2, 2},
                        {3, 5}, {4, 6}, {6, 6}, {5, 7}, {8, 9}, {12, 10}}) {
        for (const auto& H : battery) {
            cplx raw = d_raw(m, n, H);
            cplx dec = d_decomposed(m, n, H);
            cplx fou = d_fourier_form(m, n, H);
            CHECK(std::abs(raw - dec) < 1e-8);
            CHECK(std::abs(dec - fou) < 1e-7);
        }
    }
}

TEST_CASE("conjugation symmetry: D(m, n) = D(n, m)") {
    auto H = tent_weight(3.0, 24.0);
    for (auto [m, n] : {std::pair<i64, i64>{1, 3}, {2, 5}, {4, 9}, {6, 10}})
        CHECK(std::abs(d_raw(m, n, H) - d_raw(n, m, H)) < 1e-9);
}

TEST_CASE("coprime m, n collapses the d-sum to d = 1") {
    // with (m, n) = 1 the only d is 1; check against a hand-rolled single-d sum
    auto H = bump_weight(5.0, 20.0);
    i64 m = 3, n = 4;
    double A = 4.0 * std::numbers::pi * 12.0;
    i64 mn = 12;
    cplx s = 0;
    for (i64 g : divisors(mn)) {
        int mu = moebius(g);
        if (mu == 0) continue;
        i64 w = mn / g;
        auto [clo, chigh] = detail::c_window(A / static_cast<double>(g), H);
        for (i64 c = clo; c <= chigh; ++c) {
            if (std::gcd(c, mn) != 1) continue;
            double hval = H(A / static_cast<double>(g) / static_cast<double>(c));
            if (hval == 0.0) continue;
            auto t = ModulusTables::get(c);
            s += kloosterman(w % c * (w % c) % c, 1, c) * t->phase[(2 * w) % c] *
                 (static_cast<double>(mu) / static_cast<double>(g)) *
                 (hval / static_cast<double>(c));
        }
    }
    CHECK(std::abs(d_decomposed(m, n, H) - s) < 1e-10);
    CHECK(std::abs(d_raw(m, n, H) - s) < 1e-8);
}

TEST_CASE("domain errors") {
    auto H = tent_weight(4.0, 8.0);
    CHECK_THROWS_AS(d_raw(0, 1, H), std::domain_error);
    CHECK_THROWS_AS(d_decomposed(1, 0, H), std::domain_error);
    TestWeight bad{0.0, 8.0, [](double) { return 1.0; }, "bad", 1.0};
    CHECK_THROWS_AS(d_raw(1, 1, bad), std::domain_error);
}
