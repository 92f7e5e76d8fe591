// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#include <clue/hex.hpp>

namespace clue {

namespace {

constexpr char kDigits[] = "0123456789abcdef";

int nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::string to_hex(const uint8_t* data, size_t size) {
    std::string out;
    out.reserve(2 + size * 2);
    out += "0x";
    for (size_t i = 0; i < size; ++i) {
        out += kDigits[data[i] >> 4];
        out += kDigits[data[i] & 0x0f];
    }
    return out;
}

std::string to_hex(const std::vector<uint8_t>& bytes) {
    return to_hex(bytes.data(), bytes.size());
}

std::vector<uint8_t> from_hex(std::string_view text) {
    std::string_view body = text;
    if (body.size() >= 2 && body[0] == '0' && (body[1] == 'x' || body[1] == 'X'))
        body.remove_prefix(2);
    if (body.size() % 2 != 0)
        throw ParseError("odd-length hex string: \"" + std::string(text) + "\"");
    std::vector<uint8_t> out;
    out.reserve(body.size() / 2);
    for (size_t i = 0; i < body.size(); i += 2) {
        const int hi = nibble(body[i]);
        const int lo = nibble(body[i + 1]);
        if (hi < 0 || lo < 0)
            throw ParseError("invalid hex character in \"" + std::string(text) + "\"");
        out.push_back(static_cast<uint8_t>(hi << 4 | lo));
    }
    return out;
}

std::string to_quantity(const BigInt& value) {
    if (value == 0) return "0x0";
    std::string digits;
    BigInt v = value;
    while (v != 0) {
        digits += kDigits[static_cast<unsigned>(v & 0x0f)];
        v >>= 4;
    }
    digits += "x0";
    return {digits.rbegin(), digits.rend()};
}

BigInt from_quantity(std::string_view text) {
    if (text.size() < 3 || text[0] != '0' || (text[1] != 'x' && text[1] != 'X'))
        throw ParseError("quantity must be 0x-prefixed hex: \"" + std::string(text) + "\"");
    BigInt value = 0;
    for (char c : text.substr(2)) {
        const int n = nibble(c);
        if (n < 0)
            throw ParseError("invalid hex character in quantity \"" + std::string(text) + "\"");
        value = (value << 4) | n;
    }
    return value;
}

BigInt parse_dec(std::string_view text) {
    if (text.empty())
        throw ParseError("empty decimal integer");
    BigInt value = 0;
    for (char c : text) {
        if (c < '0' || c > '9')
            throw ParseError("invalid decimal integer: \"" + std::string(text) + "\"");
        value = value * 10 + (c - '0');
    }
    return value;
}

uint64_t parse_dec_u64(std::string_view text) {
    const BigInt v = parse_dec(text);
    if (v > std::numeric_limits<uint64_t>::max())
        throw ParseError("decimal integer out of range: \"" + std::string(text) + "\"");
    return v.convert_to<uint64_t>();
}

}  // namespace clue
