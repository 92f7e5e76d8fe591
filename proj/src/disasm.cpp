// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#include <clue/disasm.hpp>
#include <clue/hex.hpp>

#include <algorithm>
#include <cstdio>

namespace clue {

Program disassemble(std::span<const uint8_t> code) {
    Program program;
    program.code.assign(code.begin(), code.end());
    size_t offset = 0;
    while (offset < code.size()) {
        Instruction ins;
        ins.offset = static_cast<uint32_t>(offset);
        ins.opcode = code[offset];
        ins.mnemonic = opcode_mnemonic(ins.opcode);
        if (is_push(ins.opcode)) {
            const unsigned n = push_size(ins.opcode);
            const size_t available = std::min<size_t>(n, code.size() - offset - 1);
            ins.push_data.assign(code.begin() + offset + 1, code.begin() + offset + 1 + available);
            if (available < n) {
                // Reads past end-of-code yield zero bytes.
                ins.push_data.resize(n, 0x00);
                ins.truncated = true;
            }
            ins.size = static_cast<uint32_t>(1 + available);
        } else {
            if (ins.opcode == OP_JUMPDEST) program.jumpdests.insert(ins.offset);
            ins.size = 1;
        }
        offset += ins.size;
        program.instructions.push_back(std::move(ins));
    }
    return program;
}

std::vector<std::pair<uint32_t, Address>> find_push20_constants(const Program& program) {
    std::vector<std::pair<uint32_t, Address>> out;
    for (const auto& ins : program.instructions) {
        if (ins.opcode != OP_PUSH20) continue;
        Address addr;
        std::copy(ins.push_data.begin(), ins.push_data.end(), addr.bytes.begin());
        out.emplace_back(ins.offset, addr);
    }
    return out;
}

bool screen_hardcoded(const Program& program, const Address& library) {
    for (const auto& ins : program.instructions) {
        if (!ins.is_push() || ins.push_data.size() < 20) continue;
        if (std::equal(library.bytes.begin(), library.bytes.end(),
                       ins.push_data.end() - 20))
            return true;
    }
    return false;
}

std::string format_instruction(const Instruction& ins) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "0x%04x: ", ins.offset);
    std::string line = buf + ins.mnemonic;
    if (ins.is_push()) {
        line += " " + to_hex(ins.push_data);
        if (ins.truncated) line += " (truncated)";
    }
    return line;
}

}  // namespace clue
