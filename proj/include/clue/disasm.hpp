// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <clue/address.hpp>
#include <clue/opcodes.hpp>

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace clue {

/// One decoded instruction. For PUSHn, push_data is always n bytes; when the
/// code ends mid-payload the instruction is marked truncated, push_data is
/// zero-padded and `size` counts only the bytes actually present in code.
struct Instruction {
    uint32_t offset = 0;
    uint8_t opcode = 0;
    std::string mnemonic;
    std::vector<uint8_t> push_data;
    uint32_t size = 1;
    bool truncated = false;

    bool is_push() const { return clue::is_push(opcode); }
};

struct Program {
    std::vector<uint8_t> code;
    std::vector<Instruction> instructions;
    std::set<uint32_t> jumpdests;
};

/// Linear sweep from offset 0. Total on arbitrary bytes: unknown opcodes
/// decode as INVALID(0xXX), push payloads are consumed as data.
Program disassemble(std::span<const uint8_t> code);

/// Every PUSH20 payload, reported as a candidate embedded address.
std::vector<std::pair<uint32_t, Address>> find_push20_constants(const Program& program);

/// Cheap pre-screen: true iff the library address appears as a PUSH20
/// payload or as the low-order 20 bytes of a PUSH21..PUSH32 payload.
bool screen_hardcoded(const Program& program, const Address& library);

/// "<offset-hex>: <MNEMONIC> [0x<payload>]", one line per instruction.
std::string format_instruction(const Instruction& ins);

}  // namespace clue
