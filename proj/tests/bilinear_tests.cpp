#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "symsieve/bilinear.hpp"

#ifdef SYMSIEVE_HAVE_EIGEN
#include <Eigen/Dense>
#endif

using namespace symsieve;

namespace {

// Alternating-series oracle for zeta: eta(s) / (1 - 2^{1-s}) with the
// Cohen-Rodriguez Villegas-Zagier acceleration (64 terms; error bound
// ~ (1 + 2|t|) e^{pi |t| / 2} (3 + sqrt 8)^{-64}, negligible for |t| <= 50).
std::complex<double> zeta_alternating(std::complex<double> s) {
    constexpr int n = 64;
    auto a = [&](int k) {  // (k+1)^{-s}
        double lk = std::log(static_cast<double>(k + 1));
        return std::exp(-s.real() * lk) *
               std::complex<double>(std::cos(-s.imag() * lk), std::sin(-s.imag() * lk));
    };
    double d = std::pow(3.0 + std::sqrt(8.0), n);
    d = 0.5 * (d + 1.0 / d);
    double b = -1.0, c = -d;
    std::complex<double> sum = 0.0;
    for (int k = 0; k < n; ++k) {
        c = b - c;
        sum += c * a(k);
        b *= 2.0 * (k + n) * (k - n) / ((2.0 * k + 1.0) * (k + 1.0));
    }
    sum /= d;
    double l2 = std::log(2.0);
    std::complex<double> denom = 1.0 - std::exp((1.0 - s.real()) * l2) *
        std::complex<double>(std::cos(s.imag() * l2), -std::sin(s.imag() * l2));
    return sum / denom;
}

}  // namespace

TEST_CASE("tau_it basics") {
    CHECK(tau_it(1, 3.7) == doctest::Approx(1.0));
    // tau_it(p) = 2 cos(t log p)
    for (double t : {0.5, 2.0, 11.0})
        CHECK(tau_it(7, t) == doctest::Approx(2.0 * std::cos(t * std::log(7.0))));
    // tau_it(4) = 2 cos(t log 4) + 1
    CHECK(tau_it(4, 1.5) == doctest::Approx(2.0 * std::cos(1.5 * std::log(4.0)) + 1.0));
    // multiplicative on coprime arguments
    for (double t : {1.0, 5.5})
        CHECK(tau_it(12, t) == doctest::Approx(tau_it(4, t) * tau_it(3, t)));
    // |tau_it(n)| <= d(n)
    for (i64 n = 1; n <= 200; ++n)
        CHECK(std::abs(tau_it(n, 17.3)) <= static_cast<double>(divisors(n).size()) + 1e-12);
    CHECK_THROWS_AS(tau_it(0, 1.0), std::domain_error);
}

TEST_CASE("zeta on Re(s) = 1 against the alternating-series oracle") {
    for (double t : {0.7, 1.0, 3.0, 10.0, 25.0, 50.0}) {
        auto em = zeta_euler_maclaurin({1.0, t});
        auto alt = zeta_alternating({1.0, t});
        CHECK(std::abs(em - alt) < 1e-10);
    }
    // conjugate symmetry
    auto zp = zeta_euler_maclaurin({1.0, 13.0});
    auto zm = zeta_euler_maclaurin({1.0, -13.0});
    CHECK(std::abs(zp - std::conj(zm)) < 1e-12);
    CHECK_THROWS_AS(zeta_euler_maclaurin({1.0, 0.0}), std::domain_error);
}

TEST_CASE("eis_weight is even, positive, and pole-guarded") {
    for (double t = 0.5; t <= 200.0; t *= 1.7) {
        double w = eis_weight(t);
        CHECK(w > 0.0);
        CHECK(w == doctest::Approx(eis_weight(-t)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(eis_weight(0.3), std::domain_error);
}

TEST_CASE("quadrature integrates oscillatory functions to machine accuracy") {
    // int_0^{2pi} cos^2(10 x) dx = pi
    double omega = 10.0;
    int panels = panel_count(0.0, 2.0 * std::numbers::pi, omega);
    double v = integrate_composite([](double x) { double c = std::cos(10.0 * x); return c * c; },
                                   0.0, 2.0 * std::numbers::pi, panels);
    CHECK(v == doctest::Approx(std::numbers::pi).epsilon(1e-12));
    // polynomial exactness on one panel
    double p = integrate_panel([](double x) { return x * x * x - 2.0 * x + 1.0; }, -1.0, 3.0);
    CHECK(p == doctest::Approx(20.0 - 8.0 + 4.0).epsilon(1e-13));
}

TEST_CASE("gram matrix is symmetric PSD-looking and grid-converged") {
    FamilyWindow win;
    win.T = 100.0;
    win.Delta = 5.0;
    win.N = 10;
    win.support = {11, 13};
    auto gm = gram_assemble(win);
    CHECK(gm.converged);
    CHECK(gm.entries.size() == 2);
    CHECK(gm.entries[0][1] == doctest::Approx(gm.entries[1][0]));
    CHECK(gm.entries[0][0] > 0.0);
    CHECK(gm.entries[1][1] > 0.0);
    // Cauchy-Schwarz on the inner-product structure
    CHECK(gm.entries[0][1] * gm.entries[0][1] <= gm.entries[0][0] * gm.entries[1][1] + 1e-9);

    // diagonal entry against a directly coded integral
    int panels = 4 * gm.panels;
    double direct = integrate_composite(
        [&](double t) { double x = tau_it(11 * 11, t); return x * x / eis_weight(t); },
        win.T, win.T + win.Delta, panels);
    CHECK(gm.entries[0][0] == doctest::Approx(direct).epsilon(1e-8));

    FamilyWindow bad = win;
    bad.support = {50};
    CHECK_THROWS_AS(gram_assemble(bad), std::domain_error);
}

TEST_CASE("power iteration matches hand-checked spectra") {
    std::vector<std::vector<double>> diag = {{3.0, 0.0}, {0.0, 1.0}};
    auto r = top_eigenvalue(diag);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(std::abs(r.vector[0]) == doctest::Approx(1.0).epsilon(1e-6));

    // 2x2 with known top eigenvalue 3 (matrix [[2,1],[1,2]])
    auto r2 = top_eigenvalue({{2.0, 1.0}, {1.0, 2.0}});
    CHECK(r2.value == doctest::Approx(3.0).epsilon(1e-9));

    auto rz = top_eigenvalue({{0.0}});
    CHECK(rz.converged);
    CHECK(rz.value == 0.0);
    CHECK_THROWS_AS(top_eigenvalue({}), std::domain_error);
}

#ifdef SYMSIEVE_HAVE_EIGEN
TEST_CASE("power iteration against the dense eigensolver on random PSD matrices") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 8;
        Eigen::MatrixXd B(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) B(i, j) = dist(rng);
        Eigen::MatrixXd A = B.transpose() * B;  // PSD
        std::vector<std::vector<double>> G(n, std::vector<double>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) G[i][j] = A(i, j);
        auto r = top_eigenvalue(G);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
        double expect = es.eigenvalues().maxCoeff();
        CHECK(r.value == doctest::Approx(expect).epsilon(1e-8));
    }
}
#endif

TEST_CASE("mvt closed form against quadrature") {
    i64 N = 100;
    std::vector<double> coeffs = {1.0, -0.5, 0.0, 2.0, 0.25};
    double T = 40.0;
    auto r = mvt_dirichlet_poly(T, N, coeffs);
    double omega = std::log(2.0 * static_cast<double>(N));
    int panels = panel_count(0.0, T, omega);
    double direct = integrate_composite(
        [&](double t) {
            std::complex<double> s = 0.0;
            for (std::size_t i = 0; i < coeffs.size(); ++i) {
                double ln = std::log(static_cast<double>(N + static_cast<i64>(i)));
                s += coeffs[i] * std::complex<double>(std::cos(t * ln), std::sin(t * ln));
            }
            return std::norm(s);
        },
        0.0, T, panels);
    CHECK(r.integral == doctest::Approx(direct).epsilon(1e-10));
    // mean-value bound: integral <= C (T + N) |a|^2 with modest C
    CHECK(r.bound_ratio < 3.0);
    CHECK_THROWS_AS(mvt_dirichlet_poly(2000.0, 100, coeffs), std::domain_error);
}

TEST_CASE("gallagher hybrid sum stays within the large-sieve envelope") {
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (i64 Q : {1, 3, 5, 8}) {
        for (int rep = 0; rep < 3; ++rep) {
            std::vector<double> coeffs(30);
            for (auto& a : coeffs) a = dist(rng);
            auto g = gallagher_lhs(Q, 50.0, 200, coeffs);
            CHECK(g.lhs >= 0.0);
            CHECK(g.rhs_normalized < 10.0);
        }
    }
    // Q = 1 reduces to the plain mean value
    std::vector<double> coeffs = {1.0, 2.0, -1.0};
    auto g1 = gallagher_lhs(1, 30.0, 50, coeffs);
    auto mv = mvt_dirichlet_poly(30.0, 50, coeffs);
    CHECK(g1.lhs == doctest::Approx(mv.integral).epsilon(1e-12));
}

TEST_CASE("reparameterization identity on a (d, g, N) grid") {
    for (i64 d : {1, 2, 4, 9, 12, 36})
        for (i64 g : {1, 2, 3, 6, 10})
            CHECK(corollary23_reparam_check(d, g, 60));
    CHECK(corollary23_reparam_check(8, 5, 40));
    CHECK(corollary23_reparam_check(25, 7, 50));
    CHECK_THROWS_AS(corollary23_reparam_check(4, 4, 50), std::domain_error);  // g not square-free
    CHECK_THROWS_AS(corollary23_reparam_check(500, 1, 50), std::domain_error);
}

TEST_CASE("d_prime is the minimal d' with d | d'^2") {
    for (i64 d = 1; d <= 200; ++d) {
        i64 dp = d_prime(d);
        CHECK((dp * dp) % d == 0);
        for (i64 e = 1; e < dp; ++e) CHECK((e * e) % d != 0);
    }
}

TEST_CASE("reference curves: branches, monotonicity, and crossings") {
    auto r1 = theorem_curves(10.0, 100.0, 50.0);
    CHECK(r1.branch == 1);
    CHECK(r1.mainthm == doctest::Approx(10.0 * 100.0 + 10.0 * 50.0));
    auto r2 = theorem_curves(10.0, 100.0, 500.0);
    CHECK(r2.branch == 2);
    auto r3 = theorem_curves(10.0, 100.0, 20000.0);
    CHECK(r3.branch == 3);
    CHECK(r3.mainthm == doctest::Approx(20000.0 * 20000.0 / 100.0));

    // at N ~ T, Delta small: mainthm beats the trivial sym-square curve
    auto c = theorem_curves(1.0, 1000.0, 1000.0);
    CHECK(c.mainthm < c.sym2_trivial);
    // and beats duke_kowalski once T is large at fixed N
    auto dk = theorem_curves(5.0, 10000.0, 100.0);
    CHECK(dk.mainthm < dk.duke_kowalski);
    CHECK_THROWS_AS(theorem_curves(0.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("lower-bound experiment structure") {
    auto r = lower_bound_experiment(100.0, 10.0, 100);
    CHECK(r.prime_count == 21);  // primes in [100, 200]
    CHECK(r.diag == doctest::Approx(10.0 * 21.0 * 21.0));
    CHECK(r.full == doctest::Approx(r.diag + r.cross + r.square));
    CHECK(r.ratio > 0.5);
    CHECK(r.ratio < 2.0);
    CHECK(r.w_max > 0.0);
    CHECK(r.implied_lower_bound > 0.0);
    CHECK_THROWS_AS(lower_bound_experiment(10.0, 10.0, 100), std::domain_error);
}
