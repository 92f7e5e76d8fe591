// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <clue/errors.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace clue {

using BigInt = boost::multiprecision::cpp_int;

/// Lowercase hex with 0x prefix; "0x" for empty input.
std::string to_hex(const std::vector<uint8_t>& bytes);
std::string to_hex(const uint8_t* data, size_t size);

/// Accepts optional 0x prefix and mixed case. Rejects odd length and
/// non-hex characters with a ParseError naming the input.
std::vector<uint8_t> from_hex(std::string_view text);

/// Ethereum wire quantity: 0x-prefixed hex, no leading zeros, "0x0" for zero.
std::string to_quantity(const BigInt& value);
BigInt from_quantity(std::string_view text);

/// Non-negative decimal integer string, as used by the fixture schema.
BigInt parse_dec(std::string_view text);
uint64_t parse_dec_u64(std::string_view text);

}  // namespace clue
