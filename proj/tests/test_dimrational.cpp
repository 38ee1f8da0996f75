#include <doctest.h>

#include "tracktor/dimrational.hpp"

#include <random>

using namespace tracktor;

namespace {
DimRational N() { return DimRational::n(); }
DimRational k(long long v) { return DimRational(v); }
}  // namespace

TEST_CASE("rational basics") {
    Rational a(BigInt(2), BigInt(4));
    CHECK(a.num == 1);
    CHECK(a.den == 2);
    CHECK((a + a).num == 1);
    CHECK((a + a).den == 1);
    CHECK((-a).num == -1);
    CHECK(Rational(BigInt(3), BigInt(-6)).num == -1);
}

TEST_CASE("polynomial arithmetic and printing") {
    Poly n = Poly::n();
    Poly p = n * n - Poly(8) * n + Poly(16);
    CHECK(p.str() == "n^2 - 8*n + 16");
    CHECK(p.eval(Rational(4)).is_zero());
    auto q = p.divide_exact(n - Poly(4));
    REQUIRE(q.has_value());
    CHECK(*q == n - Poly(4));
    CHECK(!p.divide_exact(n - Poly(3)).has_value());
    CHECK(poly_gcd(p, n - Poly(4)) == n - Poly(4));
}

TEST_CASE("eval_at_dimension basics") {
    // (n-4)/(n-6) at n=8 -> 2
    DimRational r = (N() - k(4)) / (N() - k(6));
    CHECK(r.eval_at(Rational(8)) == Rational(2));
    // 2/(n-4) at n=4 -> pole error
    DimRational s = k(2) / (N() - k(4));
    CHECK_THROWS_AS(s.eval_at(Rational(4)), PoleError);
}

TEST_CASE("normalization by gcd before evaluating") {
    // (n^2-8n+16)/(n-4) normalizes to n-4, so the value at n=4 is 0, not a pole.
    // Oracle: long division gives quotient n-4 with zero remainder.
    DimRational r = (N() * N() - k(8) * N() + k(16)) / (N() - k(4));
    CHECK(r.num() == Poly::n() - Poly(4));
    CHECK(r.den() == Poly(1));
    CHECK(r.eval_at(Rational(4)) == Rational(0));
}

TEST_CASE("arithmetic agrees with evaluation on random inputs") {
    std::mt19937 rng(12345);
    auto rnd = [&]() {
        std::uniform_int_distribution<int> d(-5, 5);
        DimRational num = k(d(rng)) + k(d(rng)) * N();
        DimRational den = k(0);
        while (den.is_zero()) den = k(d(rng)) + k(d(rng)) * N();
        return num / den;
    };
    int checked = 0;
    for (int trial = 0; trial < 400 && checked < 100; ++trial) {
        DimRational a = rnd(), b = rnd();
        Rational n0(trial % 13 + 3);
        try {
            Rational ea = a.eval_at(n0), eb = b.eval_at(n0);
            CHECK((a + b).eval_at(n0) == ea + eb);
            CHECK((a - b).eval_at(n0) == ea - eb);
            CHECK((a * b).eval_at(n0) == ea * eb);
            if (!eb.is_zero()) CHECK((a / b).eval_at(n0) == ea / eb);
            ++checked;
        } catch (const PoleError&) {
            continue;  // skip pole configurations
        }
    }
    CHECK(checked == 100);
}

TEST_CASE("coefficient cancellation") {
    DimRational a = (N() - k(4)) / k(2);
    DimRational b = k(2) / (N() - k(4));
    CHECK((a * b).is_one());
}
