// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#include <clue/symexec.hpp>

#include <doctest.h>

#include "support/asm.hpp"
#include "support/reference_interp.hpp"

#include <random>
#include <set>

using namespace clue;

namespace {

const Address kLibrary = Address::parse("0xaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaa");
const Address kOther = Address::parse("0xbbbbbbbbbbbbbbbbbbbbbbbbbbbbbbbbbbbbbbbb");

std::vector<uint8_t> delegate_stub(const Address& target) {
    // outLen outOff inLen inOff, then the target and gas.
    test::Asm a;
    a.push1(0).push1(0).push1(0).push1(0);
    a.push_address(target);
    a.push(2, 0xffff);
    a.op(OP_DELEGATECALL);
    return a.bytes();
}

}  // namespace

TEST_CASE("minimal delegate stub yields one concrete site") {
    const Program program = disassemble(delegate_stub(kLibrary));
    const ExecutionReport report = execute(program);
    REQUIRE(report.call_sites.size() == 1);
    const auto& site = report.call_sites[0];
    CHECK(site.opcode == OP_DELEGATECALL);
    REQUIRE(site.target.is_concrete());
    CHECK(site.concrete_address() == kLibrary);
    CHECK_FALSE(report.truncated);

    // The reference interpreter agrees the operand order puts the target
    // second from the top.
    const auto ref = test::reference_scan_calldata(program.code, 0);
    REQUIRE(ref.reached);
    REQUIRE(ref.constant);
    CHECK(address_from_word(Word(ref.target)) == kLibrary);
}

TEST_CASE("calldata-derived target is symbolic with calldata origin") {
    test::Asm a;
    a.push1(0).push1(0).push1(0).push1(0);  // outLen outOff inLen inOff
    a.push1(0);                             // value
    a.push1(0).op(OP_CALLDATALOAD);         // target from calldata,
    a.push1(248).op(OP_SHR);                // shifted into address range
    a.op(OP_GAS).op(OP_CALL);
    const ExecutionReport report = execute(disassemble(a.bytes()));
    REQUIRE(report.call_sites.size() == 1);
    CHECK_FALSE(report.call_sites[0].target.is_concrete());
    CHECK(report.call_sites[0].target.origin() == SymOrigin::calldata);

    // Reference: the target varies with calldata.
    const auto ref = test::reference_scan_calldata(a.bytes(), 2);
    REQUIRE(ref.reached);
    CHECK_FALSE(ref.constant);
}

TEST_CASE("empty program explores a single path with no sites") {
    const ExecutionReport report = execute(disassemble(std::vector<uint8_t>{}));
    CHECK(report.call_sites.empty());
    CHECK(report.paths_explored == 1);
    CHECK_FALSE(report.truncated);
}

TEST_CASE("push20 masked by AND stays concrete") {
    std::vector<uint8_t> mask(20, 0xff);
    test::Asm a;
    a.push1(0).push1(0).push1(0).push1(0);
    a.push_address(kLibrary);
    a.push_bytes(20, mask).op(OP_AND);  // 160-bit mask keeps the value
    a.op(OP_GAS).op(OP_DELEGATECALL);
    const ExecutionReport report = execute(disassemble(a.bytes()));
    REQUIRE(report.call_sites.size() == 1);
    CHECK(report.call_sites[0].concrete_address() == kLibrary);
}

TEST_CASE("storage-loaded target is symbolic with storage origin") {
    test::Asm a;
    a.push1(0).push1(0).push1(0).push1(0);
    a.push1(0).op(OP_SLOAD);
    a.op(OP_GAS).op(OP_DELEGATECALL);
    const ExecutionReport report = execute(disassemble(a.bytes()));
    REQUIRE(report.call_sites.size() == 1);
    CHECK(report.call_sites[0].target.origin() == SymOrigin::storage);
}

TEST_CASE("join of distinct origins is unknown") {
    test::Asm a;
    a.push1(0).push1(0).push1(0).push1(0);
    a.push1(0).op(OP_CALLDATALOAD);
    a.push1(0).op(OP_SLOAD);
    a.op(OP_ADD);  // calldata + storage -> unknown
    a.op(OP_GAS).op(OP_DELEGATECALL);
    const ExecutionReport report = execute(disassemble(a.bytes()));
    REQUIRE(report.call_sites.size() == 1);
    CHECK(report.call_sites[0].target.origin() == SymOrigin::unknown);
}

TEST_CASE("symbolic JUMPI forks both branches") {
    // Calldata picks one of two pushed targets; both arms meet at the same
    // DELEGATECALL. Layout:
    //   0: PUSH1 0; 2: CALLDATALOAD; 3: PUSH1 31; 5: JUMPI
    //   6: PUSH20 L; 27: PUSH1 53; 29: JUMP; 30: STOP
    //  31: JUMPDEST; 32: PUSH20 M
    //  53: JUMPDEST; 54..61: PUSH1 0 x4; 62: SWAP4; 63: GAS; 64: DELEGATECALL
    std::vector<uint8_t> code;
    auto push1 = [&code](uint8_t v) { code.insert(code.end(), {OP_PUSH1, v}); };
    push1(0);
    code.push_back(OP_CALLDATALOAD);
    push1(31);
    code.push_back(OP_JUMPI);
    code.push_back(OP_PUSH20);
    code.insert(code.end(), kLibrary.bytes.begin(), kLibrary.bytes.end());
    push1(53);
    code.push_back(OP_JUMP);
    code.push_back(OP_STOP);
    code.push_back(OP_JUMPDEST);
    code.push_back(OP_PUSH20);
    code.insert(code.end(), kOther.bytes.begin(), kOther.bytes.end());
    code.push_back(OP_JUMPDEST);
    // Stack holds [target]; deliver it as the second-from-top call operand.
    push1(0);
    push1(0);
    push1(0);
    push1(0);
    code.push_back(static_cast<uint8_t>(OP_SWAP1 + 3));  // SWAP4: target back on top
    code.push_back(OP_GAS);
    code.push_back(OP_DELEGATECALL);

    REQUIRE(code[31] == OP_JUMPDEST);
    REQUIRE(code[53] == OP_JUMPDEST);

    const ExecutionReport report = execute(disassemble(code));
    REQUIRE(report.call_sites.size() == 2);
    CHECK(report.paths_explored == 2);
    std::set<Address> targets;
    for (const auto& site : report.call_sites) {
        REQUIRE(site.target.is_concrete());
        targets.insert(*site.concrete_address());
    }
    CHECK(targets == std::set<Address>{kLibrary, kOther});

    // Oracle sees two distinct targets across the calldata space.
    const auto ref = test::reference_scan_calldata(code, 1);
    REQUIRE(ref.reached);
    CHECK_FALSE(ref.constant);
}

TEST_CASE("memory round-trip keeps a concrete target") {
    test::Asm a;
    a.push_address(kLibrary).push1(0).op(OP_MSTORE);  // mem[0] = L
    a.push1(0).push1(0).push1(0).push1(0);
    a.push1(0).op(OP_MLOAD);  // reload target from memory
    a.op(OP_GAS).op(OP_DELEGATECALL);
    const ExecutionReport report = execute(disassemble(a.bytes()));
    REQUIRE(report.call_sites.size() == 1);
    CHECK(report.call_sites[0].concrete_address() == kLibrary);
}

TEST_CASE("unmodeled memory reads are symbolic(memory)") {
    test::Asm a;
    a.push1(0).push1(0).push1(0).push1(0);
    a.push1(0x40).op(OP_MLOAD);
    a.op(OP_GAS).op(OP_DELEGATECALL);
    const ExecutionReport report = execute(disassemble(a.bytes()));
    REQUIRE(report.call_sites.size() == 1);
    CHECK(report.call_sites[0].target.origin() == SymOrigin::memory);
}

TEST_CASE("signed arithmetic and hashing degrade to unknown even on constants") {
    for (const uint8_t op : {OP_SDIV, OP_SMOD, OP_EXP, OP_SHA3, OP_SAR, OP_SIGNEXTEND}) {
        test::Asm a;
        a.push1(0).push1(0).push1(0).push1(0);
        a.push1(2).push_address(kLibrary).op(op);
        a.op(OP_GAS).op(OP_DELEGATECALL);
        const ExecutionReport report = execute(disassemble(a.bytes()));
        REQUIRE(report.call_sites.size() == 1);
        CHECK_FALSE(report.call_sites[0].target.is_concrete());
        CHECK(report.call_sites[0].target.origin() == SymOrigin::unknown);
    }
}

TEST_CASE("loop bound truncates adversarial bytecode") {
    // 0: JUMPDEST; 1: PUSH1 0; 3: JUMP -> infinite loop
    test::Asm a;
    a.op(OP_JUMPDEST).push1(0).op(OP_JUMP);
    ExecConfig config;
    config.max_loop_iterations = 8;
    const ExecutionReport report = execute(disassemble(a.bytes()), config);
    CHECK(report.truncated);
    CHECK(report.paths_explored == 1);
}

TEST_CASE("stack underflow terminates only the offending path") {
    test::Asm a;
    a.op(OP_ADD);  // nothing on the stack
    const ExecutionReport report = execute(disassemble(a.bytes()));
    CHECK(report.paths_explored == 1);
    CHECK(report.call_sites.empty());
}

TEST_CASE("execution is deterministic") {
    std::vector<uint8_t> code;
    code.insert(code.end(), {OP_PUSH1, 0, OP_CALLDATALOAD, OP_PUSH1, 9, OP_JUMPI,
                             OP_PUSH1, 1, OP_POP, OP_JUMPDEST, OP_PUSH1, 0, OP_PUSH1, 0,
                             OP_PUSH1, 0, OP_PUSH1, 0});
    code.push_back(OP_PUSH20);
    code.insert(code.end(), kLibrary.bytes.begin(), kLibrary.bytes.end());
    code.insert(code.end(), {OP_GAS, OP_DELEGATECALL, OP_STOP});
    const Program program = disassemble(code);
    const ExecutionReport a = execute(program);
    const ExecutionReport b = execute(program);
    REQUIRE(a.call_sites.size() == b.call_sites.size());
    CHECK(a.paths_explored == b.paths_explored);
    CHECK(a.truncated == b.truncated);
    for (size_t i = 0; i < a.call_sites.size(); ++i) {
        CHECK(a.call_sites[i].pc == b.call_sites[i].pc);
        CHECK(a.call_sites[i].path_id == b.call_sites[i].path_id);
        CHECK(a.call_sites[i].target.is_concrete() == b.call_sites[i].target.is_concrete());
    }
}

TEST_CASE("resolve_delegate_target verdicts") {
    ExecutionReport confirmed;
    confirmed.call_sites.push_back(
        {0, OP_DELEGATECALL, SymValue::concrete(word_from_address(kLibrary)), 0});
    CHECK(resolve_delegate_target(confirmed, kLibrary) == Verdict::confirmed);

    ExecutionReport symbolic_only;
    symbolic_only.call_sites.push_back(
        {0, OP_CALL, SymValue::symbolic(SymOrigin::calldata), 0});
    CHECK(resolve_delegate_target(symbolic_only, kLibrary) == Verdict::inconclusive);

    ExecutionReport refuted;
    refuted.call_sites.push_back(
        {0, OP_DELEGATECALL, SymValue::concrete(word_from_address(kOther)), 0});
    CHECK(resolve_delegate_target(refuted, kLibrary) == Verdict::refuted);

    ExecutionReport empty;
    CHECK(resolve_delegate_target(empty, kLibrary) == Verdict::inconclusive);

    // Truncated exploration without a confirming site stays inconclusive.
    refuted.truncated = true;
    CHECK(resolve_delegate_target(refuted, kLibrary) == Verdict::inconclusive);

    // A confirming site wins even when truncated.
    confirmed.truncated = true;
    CHECK(resolve_delegate_target(confirmed, kLibrary) == Verdict::confirmed);
}

TEST_CASE("cbc_lock_check definitions") {
    const SymValue lib = SymValue::concrete(word_from_address(kLibrary));
    const SymValue other = SymValue::concrete(word_from_address(kOther));
    const SymValue calldata = SymValue::symbolic(SymOrigin::calldata);

    ExecutionReport only_lib;
    only_lib.call_sites.push_back({0, OP_DELEGATECALL, lib, 0});
    CHECK(cbc_lock_check(only_lib, kLibrary));

    ExecutionReport with_calldata = only_lib;
    with_calldata.call_sites.push_back({5, OP_CALL, calldata, 0});
    CHECK_FALSE(cbc_lock_check(with_calldata, kLibrary));

    ExecutionReport with_other = only_lib;
    with_other.call_sites.push_back({5, OP_CALL, other, 0});
    CHECK_FALSE(cbc_lock_check(with_other, kLibrary));
}

namespace {

/// Random straight-line program over the exactly-modeled opcode fragment.
/// Returns bytecode ending in a DELEGATECALL whose target is the expression
/// result; `with_calldata` mixes in calldata-derived bytes.
std::vector<uint8_t> random_straightline_program(std::mt19937_64& rng, bool with_calldata) {
    std::vector<uint8_t> code;
    size_t depth = 0;
    auto push1 = [&](uint8_t v) {
        code.insert(code.end(), {OP_PUSH1, v});
        ++depth;
    };
    auto push20 = [&] {
        code.push_back(OP_PUSH20);
        for (int i = 0; i < 20; ++i) code.push_back(static_cast<uint8_t>(rng()));
        ++depth;
    };
    auto push_calldata_byte = [&] {
        push1(0);
        code.push_back(OP_CALLDATALOAD);
        push1(248);
        code.push_back(OP_SHR);
        depth -= 1;  // two pushes, two binary-ish consumers net one value
    };

    const uint8_t binaries[] = {OP_ADD, OP_SUB, OP_MUL, OP_DIV, OP_MOD, OP_AND, OP_OR,
                                OP_XOR, OP_EQ,  OP_LT,  OP_GT,  OP_BYTE, OP_SHL, OP_SHR};
    const size_t ops = 4 + rng() % 16;
    for (size_t i = 0; i < ops; ++i) {
        const unsigned choice = rng() % 10;
        if (depth < 2 || choice < 3) {
            if (with_calldata && rng() % 4 == 0)
                push_calldata_byte();
            else if (rng() % 2)
                push20();
            else
                push1(static_cast<uint8_t>(rng()));
        } else if (choice < 7) {
            code.push_back(binaries[rng() % std::size(binaries)]);
            --depth;
        } else if (choice < 8 && depth >= 3) {
            code.push_back(rng() % 2 ? OP_ADDMOD : OP_MULMOD);
            depth -= 2;
        } else if (choice < 9) {
            code.push_back(rng() % 2 ? OP_ISZERO : OP_NOT);
        } else if (rng() % 2) {
            const size_t n = 1 + rng() % std::min<size_t>(depth, 4);  // DUPn needs n items
            code.push_back(static_cast<uint8_t>(OP_DUP1 + n - 1));
            ++depth;
        } else {
            const size_t n = 1 + rng() % std::min<size_t>(depth - 1, 4);  // SWAPn needs n+1
            code.push_back(static_cast<uint8_t>(OP_SWAP1 + n - 1));
        }
    }
    // Deliver the top of stack as the call target.
    for (int i = 0; i < 4; ++i) push1(0);
    code.push_back(static_cast<uint8_t>(OP_SWAP1 + 3));
    code.push_back(OP_GAS);
    code.push_back(OP_DELEGATECALL);
    return code;
}

}  // namespace

TEST_CASE("differential fuzz against the reference interpreter") {
    std::mt19937_64 rng(0x5eed);
    size_t concrete_checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const bool with_calldata = trial % 2 == 1;
        const auto code = random_straightline_program(rng, with_calldata);
        const auto ref = test::reference_scan_calldata(code, 1);
        REQUIRE_FALSE(ref.any_failure);
        REQUIRE(ref.reached);

        const ExecutionReport report = execute(disassemble(code));
        REQUIRE(report.call_sites.size() == 1);
        const auto& site = report.call_sites[0];
        if (site.target.is_concrete()) {
            // A concrete claim must be the unique target the oracle saw.
            REQUIRE(ref.constant);
            CHECK(site.target.word() == Word(ref.target));
            ++concrete_checked;
        }
        if (!with_calldata) {
            // The pure-concrete fragment must resolve exactly.
            CHECK(site.target.is_concrete());
        }
    }
    CHECK(concrete_checked >= 150);
}

TEST_CASE("boundedness on random byte programs") {
    std::mt19937_64 rng(77);
    ExecConfig config;
    config.max_paths = 64;
    config.max_steps_per_path = 2000;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<uint8_t> code(1 + rng() % 128);
        for (auto& b : code) b = static_cast<uint8_t>(rng());
        const ExecutionReport report = execute(disassemble(code), config);
        CHECK(report.paths_explored <= config.max_paths);
    }
}
