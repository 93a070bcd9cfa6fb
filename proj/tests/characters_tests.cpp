#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>
#include <set>

#include "symsieve/characters.hpp"

using namespace symsieve;
using std::complex;

namespace {

DirichletCharacter find_legendre(i64 p) {
    for (const auto& chi : enumerate_characters(p))
        if (!chi.is_trivial() && chi.is_real()) return chi;
    throw std::logic_error("no quadratic character");
}

}  // namespace

TEST_CASE("enumerate_characters counts and trivial-first ordering") {
    for (i64 c : {1, 2, 3, 4, 5, 8, 12, 36, 100, 243, 1000, 2000}) {
        auto chars = enumerate_characters(c);
        CHECK(static_cast<i64>(chars.size()) == euler_phi(c));
        CHECK(chars[0].is_trivial());
    }
    CHECK_THROWS_AS(enumerate_characters(0), std::domain_error);
}

TEST_CASE("character counting matches phi for all c <= 2000") {
    for (i64 c = 1; c <= 2000; ++c)
        CHECK(static_cast<i64>(enumerate_characters(c).size()) == euler_phi(c));
}

TEST_CASE("mod 5 generator character takes fourth roots of unity") {
    auto chars = enumerate_characters(5);
    // Some character of full order 4 exists; its values on units are
    // exactly the 4th roots of unity.
    bool found = false;
    for (const auto& chi : chars) {
        std::set<std::pair<i64, i64>> angles;
        for (i64 n = 1; n <= 4; ++n) {
            auto v = chi(n);
            REQUIRE(!v.is_zero());
            angles.insert({v.angle->num, v.angle->den});
        }
        if (angles == std::set<std::pair<i64, i64>>{{0, 1}, {1, 4}, {1, 2}, {3, 4}}) found = true;
    }
    CHECK(found);
}

TEST_CASE("mod 8 characters are all real") {
    auto chars = enumerate_characters(8);
    CHECK(chars.size() == 4);
    for (const auto& chi : chars) CHECK(chi.is_real());
}

TEST_CASE("evaluation basics") {
    auto triv12 = DirichletCharacter::trivial(12);
    CHECK(triv12.eval(5) == complex<double>(1.0, 0.0));
    for (const auto& chi : enumerate_characters(12))
        CHECK(chi(4).is_zero());
    auto leg3 = find_legendre(3);
    CHECK(leg3.eval(2).real() == doctest::Approx(-1.0));
}

TEST_CASE("orthogonality over characters and over units, c <= 200") {
    for (i64 c = 1; c <= 200; ++c) {
        auto chars = enumerate_characters(c);
        for (i64 a = 2; a < c; ++a) {
            if (std::gcd(a, c) != 1) continue;
            complex<double> s = 0;
            for (const auto& chi : chars) s += chi.eval(a);
            CHECK(std::abs(s) < 1e-9);
        }
        for (const auto& chi : chars) {
            if (chi.is_trivial()) continue;
            complex<double> s = 0;
            for (i64 n = 0; n < c; ++n) s += chi.eval(n);
            CHECK(std::abs(s) < 1e-9);
        }
    }
}

TEST_CASE("multiplicativity is exact in the angle arithmetic") {
    std::mt19937 rng(7);
    for (i64 c : {7, 12, 45, 80, 144, 200}) {
        auto chars = enumerate_characters(c);
        std::uniform_int_distribution<i64> dist(0, 10 * c);
        for (const auto& chi : chars)
            for (int rep = 0; rep < 20; ++rep) {
                i64 m = dist(rng), n = dist(rng);
                auto vm = chi(m), vn = chi(n), vmn = chi(m * n);
                if (vm.is_zero() || vn.is_zero()) {
                    CHECK(vmn.is_zero());
                } else {
                    CHECK(vmn.angle.has_value());
                    CHECK(*vmn.angle == *vm.angle + *vn.angle);
                }
            }
    }
}

TEST_CASE("conductor values") {
    CHECK(conductor(DirichletCharacter::trivial(12)) == 1);
    auto leg3 = find_legendre(3);
    CHECK(conductor(induce(leg3, 9)) == 3);
    for (const auto& chi : enumerate_characters(5))
        if (!chi.is_trivial()) CHECK(conductor(chi) == 5);
}

TEST_CASE("classification") {
    auto cls = classify(DirichletCharacter::trivial(40));
    CHECK(cls.kind == CharKind::trivial);
    CHECK(cls.conductor == 1);

    auto leg3 = find_legendre(3);
    auto semi = classify(induce(leg3, 27));
    CHECK(semi.kind == CharKind::semi_primitive);
    CHECK(semi.conductor == 3);

    // (primitive mod 3) x (trivial mod 5) as character mod 15 -> mixed.
    auto mixed = classify(induce(leg3, 15));
    CHECK(mixed.kind == CharKind::mixed);
}

TEST_CASE("induce agrees pointwise and conductor restriction round-trips") {
    for (i64 c : {3, 4, 5, 8, 9, 12, 16, 27, 45}) {
        for (const auto& chi : enumerate_characters(c)) {
            for (i64 mult : {2, 3, 4}) {
                i64 C = c * mult;
                auto big = induce(chi, C);
                for (i64 n = 0; n < C; ++n) {
                    if (std::gcd(n, C) != 1) {
                        CHECK(big(n).is_zero());
                    } else {
                        CHECK(std::abs(big.eval(n) - chi.eval(n)) < 1e-12);
                    }
                }
            }
            // restriction to the conductor, induced back, reproduces chi
            auto prim = restrict_to_conductor(chi);
            CHECK(conductor(prim) == conductor(chi));
            auto back = induce(prim, c);
            for (i64 n = 0; n < c; ++n)
                CHECK(std::abs(back.eval(n) - chi.eval(n)) < 1e-12);
        }
    }
    CHECK_THROWS_AS(induce(DirichletCharacter::trivial(4), 6), std::domain_error);
}

TEST_CASE("square and is_real") {
    auto leg3 = find_legendre(3);
    CHECK(leg3.square().is_trivial());
    // order-4 character mod 5 squares to the quadratic character
    for (const auto& chi : enumerate_characters(5)) {
        if (chi.is_trivial() || chi.is_real()) continue;
        auto sq = chi.square();
        CHECK(sq.is_real());
        CHECK(!sq.is_trivial());
    }
    auto ind = induce(DirichletCharacter::trivial(1), 6);
    CHECK(ind.is_trivial());
    CHECK(ind.modulus() == 6);
}

TEST_CASE("factorize_character routes components and reconstructs") {
    auto triv12 = DirichletCharacter::trivial(12);
    auto f = factorize_character(triv12);
    CHECK(f.chi0.modulus() == 12);
    CHECK(f.chi1.modulus() == 1);
    CHECK(f.chi2.modulus() == 1);

    for (const auto& chi : enumerate_characters(7)) {
        if (chi.is_trivial()) continue;
        auto g = factorize_character(chi);
        CHECK(g.chi0.modulus() == 1);
        CHECK(g.chi1.modulus() == 7);
        CHECK(g.chi2.modulus() == 1);
    }

    // (Legendre mod 3 induced mod 9) x (primitive mod 5), modulus 45
    auto leg3 = find_legendre(3);
    auto semi9 = induce(leg3, 9);
    for (const auto& chi5 : enumerate_characters(5)) {
        if (chi5.is_trivial()) continue;
        auto chi = product_coprime(semi9, chi5);
        auto g = factorize_character(chi);
        CHECK(g.chi0.modulus() == 1);
        CHECK(g.chi1.modulus() == 5);
        CHECK(g.chi2.modulus() == 9);
        break;
    }
}

TEST_CASE("factorize_character reconstruction for all c <= 500") {
    for (i64 c = 1; c <= 500; ++c) {
        for (const auto& chi : enumerate_characters(c)) {
            auto f = factorize_character(chi);
            CHECK(f.chi0.modulus() * f.chi1.modulus() * f.chi2.modulus() == c);
            CHECK(classify(f.chi0).kind == CharKind::trivial);
            i64 c1 = f.chi1.modulus();
            if (c1 > 1) CHECK(conductor(f.chi1) == c1);
            if (f.chi2.modulus() > 1) CHECK(classify(f.chi2).kind == CharKind::semi_primitive);
            // product of the three induced parts equals chi on units
            auto p01 = product_coprime(f.chi0, f.chi1);
            auto prod = product_coprime(p01, f.chi2);
            for (i64 n = 0; n < c; ++n)
                CHECK(std::abs(prod.eval(n) - chi.eval(n)) < 1e-12);
        }
    }
}
