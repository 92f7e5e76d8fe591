// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#include <clue/address.hpp>
#include <clue/hex.hpp>

namespace clue {

namespace {

template <size_t N>
std::array<uint8_t, N> parse_fixed(std::string_view text, const char* what) {
    if (text.size() != 2 + 2 * N || text[0] != '0' || (text[1] != 'x' && text[1] != 'X'))
        throw ParseError(std::string(what) + " must be 0x followed by " +
                         std::to_string(2 * N) + " hex digits: \"" + std::string(text) + "\"");
    const auto bytes = from_hex(text);
    std::array<uint8_t, N> out{};
    std::copy(bytes.begin(), bytes.end(), out.begin());
    return out;
}

}  // namespace

Address Address::parse(std::string_view text) {
    return Address{parse_fixed<20>(text, "address")};
}

std::string Address::to_string() const {
    return to_hex(bytes.data(), bytes.size());
}

bool Address::is_zero() const {
    for (uint8_t b : bytes)
        if (b != 0) return false;
    return true;
}

Hash32 Hash32::parse(std::string_view text) {
    return Hash32{parse_fixed<32>(text, "transaction hash")};
}

std::string Hash32::to_string() const {
    return to_hex(bytes.data(), bytes.size());
}

}  // namespace clue
