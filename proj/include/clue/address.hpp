// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <clue/errors.hpp>

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace clue {

/// 20-byte account address. Canonical text form is 0x-prefixed lowercase hex.
struct Address {
    std::array<uint8_t, 20> bytes{};

    /// Parses "0x" + 40 hex digits (any case), normalizing to lowercase.
    /// Throws ParseError naming the offending input.
    static Address parse(std::string_view text);

    std::string to_string() const;
    bool is_zero() const;

    auto operator<=>(const Address&) const = default;
};

/// 32-byte transaction hash.
struct Hash32 {
    std::array<uint8_t, 32> bytes{};

    static Hash32 parse(std::string_view text);

    std::string to_string() const;

    auto operator<=>(const Hash32&) const = default;
};

}  // namespace clue

template <>
struct std::hash<clue::Address> {
    size_t operator()(const clue::Address& a) const noexcept {
        size_t h = 1469598103934665603ull;
        for (uint8_t b : a.bytes) h = (h ^ b) * 1099511628211ull;
        return h;
    }
};

template <>
struct std::hash<clue::Hash32> {
    size_t operator()(const clue::Hash32& a) const noexcept {
        size_t h = 1469598103934665603ull;
        for (uint8_t b : a.bytes) h = (h ^ b) * 1099511628211ull;
        return h;
    }
};
