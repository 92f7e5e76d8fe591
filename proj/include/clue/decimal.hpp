// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <clue/errors.hpp>
#include <clue/hex.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace clue {

/// Exact base-10 fixed-point number: mantissa × 10^-scale.
///
/// Monetary values (ETH, USD) never touch binary floats; addition and
/// multiplication are exact, division is restricted to powers of ten.
/// Values are kept normalized (no trailing fractional zeros), so equal
/// values have identical representations.
class Decimal {
public:
    Decimal() = default;
    Decimal(BigInt mantissa, int32_t scale);

    /// Strict decimal literal: optional sign, digits, optional '.' + digits.
    static Decimal parse(std::string_view text);
    static Decimal from_int(BigInt value) { return Decimal(std::move(value), 0); }

    Decimal operator+(const Decimal& other) const;
    Decimal operator-(const Decimal& other) const;
    Decimal operator*(const Decimal& other) const;
    Decimal& operator+=(const Decimal& other) { return *this = *this + other; }

    /// Exact division by 10^n.
    Decimal div_pow10(uint32_t n) const { return Decimal(mantissa_, scale_ + static_cast<int32_t>(n)); }

    /// Rounds to `digits` fractional digits, ties to even.
    Decimal round_half_even(int32_t digits) const;

    bool operator==(const Decimal& other) const = default;
    std::strong_ordering operator<=>(const Decimal& other) const;

    bool is_zero() const { return mantissa_ == 0; }
    bool is_negative() const { return mantissa_ < 0; }
    const BigInt& mantissa() const { return mantissa_; }
    int32_t scale() const { return scale_; }

    /// Minimal exact form, e.g. "2576.35", "0", "-1.5".
    std::string to_string() const;
    /// Exactly `digits` fractional digits, rounding half-even if needed.
    std::string to_fixed(int32_t digits) const;

private:
    BigInt mantissa_ = 0;
    int32_t scale_ = 0;  // >= 0 after normalization
};

}  // namespace clue
