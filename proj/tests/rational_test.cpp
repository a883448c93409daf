#include "cvstab/rational.hpp"

#include <gtest/gtest.h>

#include "cvstab/intmath.hpp"
#include "cvstab/rng.hpp"

using cvstab::Rational;

TEST(Rational, NormalizesToLowestTerms) {
    Rational r(6, -4);
    EXPECT_EQ(r.num(), -3);
    EXPECT_EQ(r.den(), 2);
    EXPECT_EQ(Rational(0, 7), Rational(0));
}

TEST(Rational, Arithmetic) {
    Rational a(1, 2), b(1, 3);
    EXPECT_EQ(a + b, Rational(5, 6));
    EXPECT_EQ(a - b, Rational(1, 6));
    EXPECT_EQ(a * b, Rational(1, 6));
    EXPECT_EQ(a / b, Rational(3, 2));
    EXPECT_LT(b, a);
}

TEST(Rational, ParseAcceptsFractionsAndIntegers) {
    EXPECT_EQ(Rational::parse("3"), Rational(3));
    EXPECT_EQ(Rational::parse("-1/2"), Rational(-1, 2));
    EXPECT_EQ(Rational::parse("+5/4"), Rational(5, 4));
}

TEST(Rational, ParseRejectsMalformedInput) {
    EXPECT_THROW(Rational::parse("1/0"), std::domain_error);
    EXPECT_THROW(Rational::parse("1.5"), std::invalid_argument);
    EXPECT_THROW(Rational::parse("a/b"), std::invalid_argument);
    EXPECT_THROW(Rational::parse("1/"), std::invalid_argument);
}

TEST(Rational, OverflowThrowsInsteadOfWrapping) {
    Rational big(INT64_MAX / 2, 1);
    EXPECT_THROW(big * big, std::overflow_error);
}

TEST(IntMath, ExtGcdBezout) {
    for (std::int64_t a = -12; a <= 12; ++a) {
        for (std::int64_t b = -12; b <= 12; ++b) {
            auto e = cvstab::ext_gcd(a, b);
            EXPECT_EQ(e.g, std::gcd(a, b));
            EXPECT_EQ(e.s * a + e.t * b, e.g);
        }
    }
}

TEST(IntMath, FastModMatchesBuiltin) {
    for (std::uint32_t d : {2u, 3u, 7u, 8u, 12u, 18u, 32767u}) {
        cvstab::FastMod f(d);
        cvstab::SplitMix64 rng(d);
        for (int i = 0; i < 2000; ++i) {
            std::uint32_t a = static_cast<std::uint32_t>(rng.next() % d);
            std::uint32_t b = static_cast<std::uint32_t>(rng.next() % d);
            EXPECT_EQ(f.mul(a, b), (std::uint64_t(a) * b) % d);
            EXPECT_EQ(f.add(a, b), (a + b) % d);
            EXPECT_EQ(f.sub(a, b), (a + d - b) % d);
        }
    }
}

TEST(IntMath, UnitMultiplierReachesGcd) {
    for (std::uint32_t m : {2u, 4u, 6u, 8u, 9u, 12u, 18u, 24u}) {
        for (std::uint32_t a = 1; a < m; ++a) {
            std::uint32_t u = cvstab::unit_multiplier(a, m);
            EXPECT_EQ(std::gcd(u, m), 1u) << "a=" << a << " m=" << m;
            EXPECT_EQ(std::uint64_t(u) * a % m, std::gcd(a, m))
                << "a=" << a << " m=" << m;
        }
    }
}
