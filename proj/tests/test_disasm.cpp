// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#include <clue/disasm.hpp>
#include <clue/hex.hpp>

#include <doctest.h>

#include "support/asm.hpp"

#include <random>

using namespace clue;

namespace {

const Address kLibrary = Address::parse("0x1234567890abcdef1234567890abcdef12345678");

bool partition_holds(const Program& program) {
    uint32_t expected_offset = 0;
    for (const auto& ins : program.instructions) {
        if (ins.offset != expected_offset) return false;
        expected_offset += ins.size;
    }
    return expected_offset == program.code.size();
}

std::vector<uint8_t> reserialize(const Program& program) {
    std::vector<uint8_t> out;
    for (const auto& ins : program.instructions) {
        out.push_back(ins.opcode);
        // Only the bytes actually present in code (size-1 of the payload).
        out.insert(out.end(), ins.push_data.begin(), ins.push_data.begin() + (ins.size - 1));
    }
    return out;
}

}  // namespace

TEST_CASE("empty code disassembles to an empty program") {
    const Program program = disassemble(std::vector<uint8_t>{});
    CHECK(program.instructions.empty());
    CHECK(program.jumpdests.empty());
}

TEST_CASE("push1 push1 add decodes to the reference listing") {
    const Program program = disassemble(from_hex("0x6001600101"));
    REQUIRE(program.instructions.size() == 3);
    CHECK(program.instructions[0].offset == 0);
    CHECK(program.instructions[0].mnemonic == "PUSH1");
    CHECK(program.instructions[0].push_data == std::vector<uint8_t>{0x01});
    CHECK(program.instructions[1].offset == 2);
    CHECK(program.instructions[1].mnemonic == "PUSH1");
    CHECK(program.instructions[2].offset == 4);
    CHECK(program.instructions[2].mnemonic == "ADD");
    CHECK(program.instructions[2].size == 1);
}

TEST_CASE("lone push is truncated and zero padded") {
    const Program program = disassemble(from_hex("0x60"));
    REQUIRE(program.instructions.size() == 1);
    const auto& ins = program.instructions[0];
    CHECK(ins.mnemonic == "PUSH1");
    CHECK(ins.truncated);
    CHECK(ins.push_data == std::vector<uint8_t>{0x00});
    CHECK(ins.size == 1);  // only the opcode byte exists in code
}

TEST_CASE("push payloads are never decoded as opcodes") {
    // PUSH2 0x5b5b: the jumpdest bytes are payload, not instructions.
    const Program program = disassemble(from_hex("0x615b5b"));
    REQUIRE(program.instructions.size() == 1);
    CHECK(program.jumpdests.empty());
}

TEST_CASE("unknown opcodes decode as INVALID with size 1") {
    const Program program = disassemble(from_hex("0x0c5f48"));
    REQUIRE(program.instructions.size() == 3);
    CHECK(program.instructions[0].mnemonic == "INVALID(0x0C)");
    CHECK(program.instructions[1].mnemonic == "INVALID(0x5F)");  // post-Istanbul PUSH0
    CHECK(program.instructions[2].mnemonic == "INVALID(0x48)");  // post-Istanbul BASEFEE
}

TEST_CASE("find_push20_constants reports push20 payloads only") {
    test::Asm both;
    both.push_address(kLibrary).op(OP_POP).push1(0x01).op(OP_STOP);
    const auto found = find_push20_constants(disassemble(both.bytes()));
    REQUIRE(found.size() == 1);
    CHECK(found[0].first == 0);
    CHECK(found[0].second == kLibrary);

    test::Asm none;
    none.push1(0x01).op(OP_STOP);
    CHECK(find_push20_constants(disassemble(none.bytes())).empty());
}

TEST_CASE("push32 low bytes are found by the screen but not by find_push20") {
    std::vector<uint8_t> payload(12, 0xee);
    payload.insert(payload.end(), kLibrary.bytes.begin(), kLibrary.bytes.end());
    test::Asm a;
    a.push_bytes(32, payload).op(OP_POP).op(OP_STOP);
    const Program program = disassemble(a.bytes());
    CHECK(find_push20_constants(program).empty());
    CHECK(screen_hardcoded(program, kLibrary));
}

TEST_CASE("screen_hardcoded detects the embedded library") {
    test::Asm wallet;
    wallet.op(OP_CALLDATASIZE).push1(0).push1(0).op(OP_CALLDATACOPY);
    wallet.push1(0).push1(0).op(OP_CALLDATASIZE).push1(0);
    wallet.push_address(kLibrary).op(OP_GAS).op(OP_DELEGATECALL).op(OP_STOP);
    CHECK(screen_hardcoded(disassemble(wallet.bytes()), kLibrary));

    // One flipped payload byte defeats the screen.
    auto mutated = wallet.bytes();
    for (size_t i = 0; i + 20 <= mutated.size(); ++i) {
        if (mutated[i] == OP_PUSH20) {
            mutated[i + 1] ^= 0x01;
            break;
        }
    }
    CHECK_FALSE(screen_hardcoded(disassemble(mutated), kLibrary));

    CHECK_FALSE(screen_hardcoded(disassemble(std::vector<uint8_t>{}), kLibrary));
}

TEST_CASE("screen result survives appended code") {
    std::mt19937_64 rng(123);
    test::Asm base;
    base.push_address(kLibrary).op(OP_POP).op(OP_STOP);
    for (int trial = 0; trial < 100; ++trial) {
        auto code = base.bytes();
        const size_t extra = rng() % 64;
        for (size_t i = 0; i < extra; ++i) code.push_back(static_cast<uint8_t>(rng()));
        CHECK(screen_hardcoded(disassemble(code), kLibrary));
    }
}

TEST_CASE("disassembly is total and partitions arbitrary bytes") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<uint8_t> code(rng() % 256);
        for (auto& b : code) b = static_cast<uint8_t>(rng());
        const Program program = disassemble(code);
        CHECK(partition_holds(program));
        CHECK(reserialize(program) == code);
    }
}

TEST_CASE("instruction formatting") {
    const Program program = disassemble(from_hex("0x6001"));
    CHECK(format_instruction(program.instructions[0]) == "0x0000: PUSH1 0x01");
    const Program stop = disassemble(from_hex("0x00"));
    CHECK(format_instruction(stop.instructions[0]) == "0x0000: STOP");
}
