#include "compwalk/numeric.hpp"

#include <doctest.h>

#include <cmath>

using namespace compwalk;

TEST_CASE("binomial basics") {
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(10, 3) == 120);
    CHECK(binomial(3, 5) == 0);
    CHECK(binomial(5, -1) == 0);
    CHECK(binomial(52, 26) == BigInt("495918532948104"));
}

TEST_CASE("ratio_as_double handles operands beyond double range") {
    BigInt big = BigInt(1) << 4096;
    CHECK(ratio_as_double(big, big * 2) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ratio_as_double(BigInt(-3), BigInt(4)) == doctest::Approx(-0.75));
    CHECK(ratio_as_double(BigInt(0), BigInt(7)) == 0.0);
    // f ~ 4^n sized numerators over 4^n denominators
    BigInt num = (BigInt(1) << 2000) * 3;
    BigInt den = (BigInt(1) << 2001);
    CHECK(ratio_as_double(num, den) == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("rational parse/format round trip") {
    CHECK(rat_to_string(parse_rational("55/648")) == "55/648");
    CHECK(rat_to_string(parse_rational("-3/9")) == "-1/3");
    CHECK(rat_to_string(parse_rational("7")) == "7");
    CHECK(rat_to_string(BigRat(4, 2)) == "2");
    CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
    CHECK_THROWS_AS(parse_rational("abc"), DomainError);
    CHECK_THROWS_AS(parse_rational(""), DomainError);
}

TEST_CASE("double formatting is shortest round-trip") {
    CHECK(double_to_string(0.5) == "0.5");
    CHECK(double_to_string(1.0 / 3.0) == "0.3333333333333333");
    double v = 0.1 + 0.2;
    CHECK(std::stod(double_to_string(v)) == v);
}

TEST_CASE("exact square roots") {
    CHECK(exact_sqrt(BigInt(144)) == 12);
    CHECK(exact_sqrt(BigRat(9, 16)) == BigRat(3, 4));
    CHECK_THROWS_AS(exact_sqrt(BigInt(2)), DomainError);
    CHECK_THROWS_AS(exact_sqrt(BigInt(-4)), DomainError);
}
