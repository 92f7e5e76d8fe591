// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#include <clue/decimal.hpp>

namespace clue {

namespace {

BigInt pow10(uint32_t n) {
    BigInt v = 1;
    for (uint32_t i = 0; i < n; ++i) v *= 10;
    return v;
}

}  // namespace

Decimal::Decimal(BigInt mantissa, int32_t scale) : mantissa_(std::move(mantissa)), scale_(scale) {
    if (scale_ < 0) {
        mantissa_ *= pow10(static_cast<uint32_t>(-scale_));
        scale_ = 0;
    }
    while (scale_ > 0 && mantissa_ % 10 == 0) {
        mantissa_ /= 10;
        --scale_;
    }
    if (mantissa_ == 0) scale_ = 0;
}

Decimal Decimal::parse(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
        negative = body[0] == '-';
        body.remove_prefix(1);
    }
    const auto dot = body.find('.');
    std::string digits;
    int32_t scale = 0;
    if (dot == std::string_view::npos) {
        digits = std::string(body);
    } else {
        digits = std::string(body.substr(0, dot)) + std::string(body.substr(dot + 1));
        scale = static_cast<int32_t>(body.size() - dot - 1);
        if (scale == 0 || dot == 0)
            throw ParseError("malformed decimal: \"" + std::string(text) + "\"");
    }
    if (digits.empty())
        throw ParseError("malformed decimal: \"" + std::string(text) + "\"");
    BigInt mant = 0;
    for (char c : digits) {
        if (c < '0' || c > '9')
            throw ParseError("malformed decimal: \"" + std::string(text) + "\"");
        mant = mant * 10 + (c - '0');
    }
    if (negative) mant = -mant;
    return Decimal(std::move(mant), scale);
}

Decimal Decimal::operator+(const Decimal& other) const {
    const int32_t scale = std::max(scale_, other.scale_);
    const BigInt a = mantissa_ * pow10(static_cast<uint32_t>(scale - scale_));
    const BigInt b = other.mantissa_ * pow10(static_cast<uint32_t>(scale - other.scale_));
    return Decimal(a + b, scale);
}

Decimal Decimal::operator-(const Decimal& other) const {
    const int32_t scale = std::max(scale_, other.scale_);
    const BigInt a = mantissa_ * pow10(static_cast<uint32_t>(scale - scale_));
    const BigInt b = other.mantissa_ * pow10(static_cast<uint32_t>(scale - other.scale_));
    return Decimal(a - b, scale);
}

Decimal Decimal::operator*(const Decimal& other) const {
    return Decimal(mantissa_ * other.mantissa_, scale_ + other.scale_);
}

std::strong_ordering Decimal::operator<=>(const Decimal& other) const {
    const int32_t scale = std::max(scale_, other.scale_);
    const BigInt a = mantissa_ * pow10(static_cast<uint32_t>(scale - scale_));
    const BigInt b = other.mantissa_ * pow10(static_cast<uint32_t>(scale - other.scale_));
    if (a < b) return std::strong_ordering::less;
    if (a > b) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Decimal Decimal::round_half_even(int32_t digits) const {
    if (digits < 0) throw Error("negative rounding digits");
    if (scale_ <= digits) return *this;
    const BigInt divisor = pow10(static_cast<uint32_t>(scale_ - digits));
    const bool negative = mantissa_ < 0;
    const BigInt abs_mant = negative ? BigInt(-mantissa_) : mantissa_;
    BigInt q = abs_mant / divisor;
    const BigInt r = abs_mant % divisor;
    const BigInt twice = r * 2;
    if (twice > divisor || (twice == divisor && q % 2 != 0)) ++q;
    return Decimal(negative ? BigInt(-q) : q, digits);
}

std::string Decimal::to_string() const {
    const bool negative = mantissa_ < 0;
    std::string digits = (negative ? BigInt(-mantissa_) : mantissa_).convert_to<std::string>();
    if (scale_ > 0) {
        const auto s = static_cast<size_t>(scale_);
        if (digits.size() <= s) digits.insert(0, s + 1 - digits.size(), '0');
        digits.insert(digits.size() - s, ".");
    }
    return negative ? "-" + digits : digits;
}

std::string Decimal::to_fixed(int32_t digits) const {
    const Decimal rounded = round_half_even(digits);
    const bool negative = rounded.mantissa_ < 0;
    const BigInt abs_mant = negative ? BigInt(-rounded.mantissa_) : rounded.mantissa_;
    // rounded.scale_ <= digits by construction; pad up to exactly `digits`.
    std::string base = (abs_mant * pow10(static_cast<uint32_t>(digits - rounded.scale_)))
                           .convert_to<std::string>();
    const auto s = static_cast<size_t>(digits);
    if (base.size() <= s) base.insert(0, s + 1 - base.size(), '0');
    if (digits > 0) base.insert(base.size() - s, ".");
    return negative ? "-" + base : base;
}

}  // namespace clue
