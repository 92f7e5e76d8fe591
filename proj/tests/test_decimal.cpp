// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#include <clue/decimal.hpp>

#include <doctest.h>

#include <random>

using namespace clue;

TEST_CASE("decimal parse and format") {
    CHECK(Decimal::parse("0").to_string() == "0");
    CHECK(Decimal::parse("369.02").to_string() == "369.02");
    CHECK(Decimal::parse("2576.350").to_string() == "2576.35");  // normalized
    CHECK(Decimal::parse("0.0001").to_string() == "0.0001");
    CHECK(Decimal::parse("-1.5").to_string() == "-1.5");
    CHECK_THROWS_AS(Decimal::parse("1.2.3"), ParseError);
    CHECK_THROWS_AS(Decimal::parse("abc"), ParseError);
    CHECK_THROWS_AS(Decimal::parse("1."), ParseError);
    CHECK_THROWS_AS(Decimal::parse(".5"), ParseError);
}

TEST_CASE("arithmetic is exact") {
    const Decimal a = Decimal::parse("0.1");
    const Decimal b = Decimal::parse("0.2");
    CHECK((a + b) == Decimal::parse("0.3"));
    CHECK((a * b) == Decimal::parse("0.02"));
    CHECK((Decimal::parse("1") - Decimal::parse("0.999")) == Decimal::parse("0.001"));
}

TEST_CASE("division by powers of ten is exact") {
    const Decimal v = Decimal::from_int(BigInt("2576350000000000000000")).div_pow10(18);
    CHECK(v.to_string() == "2576.35");
}

TEST_CASE("half-even rounding") {
    CHECK(Decimal::parse("2.345").to_fixed(2) == "2.34");
    CHECK(Decimal::parse("2.355").to_fixed(2) == "2.36");
    CHECK(Decimal::parse("2.335").to_fixed(2) == "2.34");
    CHECK(Decimal::parse("2.3449").to_fixed(2) == "2.34");
    CHECK(Decimal::parse("2.3451").to_fixed(2) == "2.35");
    CHECK(Decimal::parse("5").to_fixed(2) == "5.00");
    CHECK(Decimal::parse("0.005").to_fixed(2) == "0.00");
    CHECK(Decimal::parse("0.015").to_fixed(2) == "0.02");
}

TEST_CASE("comparison aligns scales") {
    CHECK(Decimal::parse("1.5") == Decimal::parse("1.50"));
    CHECK(Decimal::parse("1.5") < Decimal::parse("1.51"));
    CHECK(Decimal::parse("10") > Decimal::parse("9.999"));
}

TEST_CASE("addition is associative and commutative on random values") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const Decimal a(BigInt(rng() % 1'000'000'000), static_cast<int32_t>(rng() % 6));
        const Decimal b(BigInt(rng() % 1'000'000'000), static_cast<int32_t>(rng() % 6));
        const Decimal c(BigInt(rng() % 1'000'000'000), static_cast<int32_t>(rng() % 6));
        CHECK((a + b) == (b + a));
        CHECK(((a + b) + c) == (a + (b + c)));
    }
}

TEST_CASE("multiplication distributes over addition") {
    std::mt19937_64 rng(100);
    for (int trial = 0; trial < 200; ++trial) {
        const Decimal a(BigInt(rng() % 1'000'000), static_cast<int32_t>(rng() % 4));
        const Decimal b(BigInt(rng() % 1'000'000), static_cast<int32_t>(rng() % 4));
        const Decimal k(BigInt(rng() % 10'000), static_cast<int32_t>(rng() % 4));
        CHECK((k * (a + b)) == (k * a + k * b));
    }
}
