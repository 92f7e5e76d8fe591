// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#include <clue/opcodes.hpp>

#include <array>
#include <cstdio>

namespace clue {

namespace {

const std::array<const char*, 256>& mnemonic_table() {
    static const std::array<const char*, 256> table = [] {
        std::array<const char*, 256> t{};
        t.fill(nullptr);
        t[OP_STOP] = "STOP";
        t[OP_ADD] = "ADD";
        t[OP_MUL] = "MUL";
        t[OP_SUB] = "SUB";
        t[OP_DIV] = "DIV";
        t[OP_SDIV] = "SDIV";
        t[OP_MOD] = "MOD";
        t[OP_SMOD] = "SMOD";
        t[OP_ADDMOD] = "ADDMOD";
        t[OP_MULMOD] = "MULMOD";
        t[OP_EXP] = "EXP";
        t[OP_SIGNEXTEND] = "SIGNEXTEND";
        t[OP_LT] = "LT";
        t[OP_GT] = "GT";
        t[OP_SLT] = "SLT";
        t[OP_SGT] = "SGT";
        t[OP_EQ] = "EQ";
        t[OP_ISZERO] = "ISZERO";
        t[OP_AND] = "AND";
        t[OP_OR] = "OR";
        t[OP_XOR] = "XOR";
        t[OP_NOT] = "NOT";
        t[OP_BYTE] = "BYTE";
        t[OP_SHL] = "SHL";
        t[OP_SHR] = "SHR";
        t[OP_SAR] = "SAR";
        t[OP_SHA3] = "SHA3";
        t[OP_ADDRESS] = "ADDRESS";
        t[OP_BALANCE] = "BALANCE";
        t[OP_ORIGIN] = "ORIGIN";
        t[OP_CALLER] = "CALLER";
        t[OP_CALLVALUE] = "CALLVALUE";
        t[OP_CALLDATALOAD] = "CALLDATALOAD";
        t[OP_CALLDATASIZE] = "CALLDATASIZE";
        t[OP_CALLDATACOPY] = "CALLDATACOPY";
        t[OP_CODESIZE] = "CODESIZE";
        t[OP_CODECOPY] = "CODECOPY";
        t[OP_GASPRICE] = "GASPRICE";
        t[OP_EXTCODESIZE] = "EXTCODESIZE";
        t[OP_EXTCODECOPY] = "EXTCODECOPY";
        t[OP_RETURNDATASIZE] = "RETURNDATASIZE";
        t[OP_RETURNDATACOPY] = "RETURNDATACOPY";
        t[OP_EXTCODEHASH] = "EXTCODEHASH";
        t[OP_BLOCKHASH] = "BLOCKHASH";
        t[OP_COINBASE] = "COINBASE";
        t[OP_TIMESTAMP] = "TIMESTAMP";
        t[OP_NUMBER] = "NUMBER";
        t[OP_DIFFICULTY] = "DIFFICULTY";
        t[OP_GASLIMIT] = "GASLIMIT";
        t[OP_CHAINID] = "CHAINID";
        t[OP_SELFBALANCE] = "SELFBALANCE";
        t[OP_POP] = "POP";
        t[OP_MLOAD] = "MLOAD";
        t[OP_MSTORE] = "MSTORE";
        t[OP_MSTORE8] = "MSTORE8";
        t[OP_SLOAD] = "SLOAD";
        t[OP_SSTORE] = "SSTORE";
        t[OP_JUMP] = "JUMP";
        t[OP_JUMPI] = "JUMPI";
        t[OP_PC] = "PC";
        t[OP_MSIZE] = "MSIZE";
        t[OP_GAS] = "GAS";
        t[OP_JUMPDEST] = "JUMPDEST";
        static std::array<std::string, 32> push_names;
        static std::array<std::string, 16> dup_names;
        static std::array<std::string, 16> swap_names;
        static std::array<std::string, 5> log_names;
        for (unsigned i = 0; i < 32; ++i) {
            push_names[i] = "PUSH" + std::to_string(i + 1);
            t[OP_PUSH1 + i] = push_names[i].c_str();
        }
        for (unsigned i = 0; i < 16; ++i) {
            dup_names[i] = "DUP" + std::to_string(i + 1);
            t[OP_DUP1 + i] = dup_names[i].c_str();
            swap_names[i] = "SWAP" + std::to_string(i + 1);
            t[OP_SWAP1 + i] = swap_names[i].c_str();
        }
        for (unsigned i = 0; i < 5; ++i) {
            log_names[i] = "LOG" + std::to_string(i);
            t[OP_LOG0 + i] = log_names[i].c_str();
        }
        t[OP_CREATE] = "CREATE";
        t[OP_CALL] = "CALL";
        t[OP_CALLCODE] = "CALLCODE";
        t[OP_RETURN] = "RETURN";
        t[OP_DELEGATECALL] = "DELEGATECALL";
        t[OP_CREATE2] = "CREATE2";
        t[OP_STATICCALL] = "STATICCALL";
        t[OP_REVERT] = "REVERT";
        t[OP_INVALID] = "INVALID";
        t[OP_SELFDESTRUCT] = "SELFDESTRUCT";
        return t;
    }();
    return table;
}

}  // namespace

bool opcode_known(uint8_t op) {
    return mnemonic_table()[op] != nullptr;
}

std::string opcode_mnemonic(uint8_t op) {
    if (const char* name = mnemonic_table()[op]) return name;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "INVALID(0x%02X)", op);
    return buf;
}

}  // namespace clue
