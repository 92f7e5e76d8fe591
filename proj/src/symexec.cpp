// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#include <clue/symexec.hpp>

#include <map>
#include <unordered_map>

namespace clue {

namespace {

using boost::multiprecision::uint512_t;

constexpr size_t kStackLimit = 1024;

const Word& address_mask() {
    static const Word mask = (Word(1) << 160) - 1;
    return mask;
}

struct PathState {
    uint32_t pc = 0;
    uint32_t path_id = 0;
    uint64_t steps = 0;
    std::vector<SymValue> stack;
    std::map<uint64_t, SymValue> memory;                // concrete-offset word map
    std::unordered_map<uint32_t, uint32_t> dest_visits; // per-JUMPDEST loop counter
};

class Engine {
public:
    Engine(const Program& program, const ExecConfig& config)
        : program_(program), config_(config) {
        for (size_t i = 0; i < program.instructions.size(); ++i)
            by_offset_[program.instructions[i].offset] = i;
    }

    ExecutionReport run() {
        std::vector<PathState> worklist;
        worklist.push_back(PathState{});
        uint32_t next_path_id = 1;
        while (!worklist.empty()) {
            if (report_.paths_explored >= config_.max_paths) {
                report_.truncated = true;
                break;
            }
            PathState state = std::move(worklist.back());
            worklist.pop_back();
            run_path(state, worklist, next_path_id);
            ++report_.paths_explored;
        }
        return std::move(report_);
    }

private:
    // Executes one path to completion; symbolic JUMPI forks push clones.
    void run_path(PathState& st, std::vector<PathState>& worklist, uint32_t& next_path_id) {
        for (;;) {
            const auto it = by_offset_.find(st.pc);
            if (it == by_offset_.end()) return;  // past end of code: implicit STOP
            if (++st.steps > config_.max_steps_per_path) {
                report_.truncated = true;
                return;
            }
            const Instruction& ins = program_.instructions[it->second];
            if (!step(st, ins, worklist, next_path_id)) return;
        }
    }

    // Returns false when the path halts. Advances st.pc otherwise.
    bool step(PathState& st, const Instruction& ins, std::vector<PathState>& worklist,
              uint32_t& next_path_id) {
        const uint32_t next_pc = ins.offset + ins.size;
        const uint8_t op = ins.opcode;

        auto pop = [&st]() {
            SymValue v = std::move(st.stack.back());
            st.stack.pop_back();
            return v;
        };
        auto push = [&st](SymValue v) { st.stack.push_back(std::move(v)); };
        auto need = [&st](size_t n) { return st.stack.size() >= n; };

        if (is_push(op)) {
            if (st.stack.size() >= kStackLimit) return false;
            Word w = 0;
            for (uint8_t b : ins.push_data) w = (w << 8) | b;
            push(SymValue::concrete(w));
            st.pc = next_pc;
            return true;
        }
        if (op >= OP_DUP1 && op <= OP_DUP16) {
            const size_t n = op - OP_DUP1 + 1;
            if (!need(n) || st.stack.size() >= kStackLimit) return false;
            push(st.stack[st.stack.size() - n]);
            st.pc = next_pc;
            return true;
        }
        if (op >= OP_SWAP1 && op <= OP_SWAP16) {
            const size_t n = op - OP_SWAP1 + 1;
            if (!need(n + 1)) return false;
            std::swap(st.stack[st.stack.size() - 1], st.stack[st.stack.size() - 1 - n]);
            st.pc = next_pc;
            return true;
        }
        if (op >= OP_LOG0 && op <= OP_LOG4) {
            const size_t n = 2 + (op - OP_LOG0);
            if (!need(n)) return false;
            st.stack.resize(st.stack.size() - n);
            st.pc = next_pc;
            return true;
        }

        switch (op) {
            case OP_STOP:
            case OP_INVALID:
                return false;

            case OP_ADD: return binop(st, next_pc, [](const Word& a, const Word& b) { return Word(a + b); });
            case OP_MUL: return binop(st, next_pc, [](const Word& a, const Word& b) { return Word(a * b); });
            case OP_SUB: return binop(st, next_pc, [](const Word& a, const Word& b) { return Word(a - b); });
            case OP_DIV:
                return binop(st, next_pc, [](const Word& a, const Word& b) { return b == 0 ? Word(0) : Word(a / b); });
            case OP_MOD:
                return binop(st, next_pc, [](const Word& a, const Word& b) { return b == 0 ? Word(0) : Word(a % b); });
            case OP_LT: return binop(st, next_pc, [](const Word& a, const Word& b) { return Word(a < b ? 1 : 0); });
            case OP_GT: return binop(st, next_pc, [](const Word& a, const Word& b) { return Word(a > b ? 1 : 0); });
            case OP_EQ: return binop(st, next_pc, [](const Word& a, const Word& b) { return Word(a == b ? 1 : 0); });
            case OP_AND: return binop(st, next_pc, [](const Word& a, const Word& b) { return Word(a & b); });
            case OP_OR: return binop(st, next_pc, [](const Word& a, const Word& b) { return Word(a | b); });
            case OP_XOR: return binop(st, next_pc, [](const Word& a, const Word& b) { return Word(a ^ b); });
            case OP_BYTE:
                return binop(st, next_pc, [](const Word& i, const Word& x) {
                    if (i >= 32) return Word(0);
                    const unsigned shift = 8 * (31 - i.convert_to<unsigned>());
                    return Word((x >> shift) & 0xff);
                });
            case OP_SHL:
                return binop(st, next_pc, [](const Word& shift, const Word& v) {
                    return shift >= 256 ? Word(0) : Word(v << shift.convert_to<unsigned>());
                });
            case OP_SHR:
                return binop(st, next_pc, [](const Word& shift, const Word& v) {
                    return shift >= 256 ? Word(0) : Word(v >> shift.convert_to<unsigned>());
                });
            case OP_ADDMOD:
                return ternop(st, next_pc, [](const Word& a, const Word& b, const Word& n) {
                    return n == 0 ? Word(0) : Word((uint512_t(a) + uint512_t(b)) % n);
                });
            case OP_MULMOD:
                return ternop(st, next_pc, [](const Word& a, const Word& b, const Word& n) {
                    return n == 0 ? Word(0) : Word((uint512_t(a) * uint512_t(b)) % n);
                });

            case OP_ISZERO: {
                if (!need(1)) return false;
                const SymValue a = pop();
                push(a.is_concrete() ? SymValue::concrete(a.word() == 0 ? 1 : 0)
                                     : SymValue::symbolic(a.origin()));
                st.pc = next_pc;
                return true;
            }
            case OP_NOT: {
                if (!need(1)) return false;
                const SymValue a = pop();
                push(a.is_concrete() ? SymValue::concrete(~a.word())
                                     : SymValue::symbolic(a.origin()));
                st.pc = next_pc;
                return true;
            }

            // Signed arithmetic, EXP and SHA3 do not participate in address
            // provenance; they degrade to unknown regardless of inputs.
            case OP_SDIV:
            case OP_SMOD:
            case OP_SLT:
            case OP_SGT:
            case OP_SAR:
            case OP_SIGNEXTEND:
            case OP_EXP:
                return opaque(st, next_pc, 2);
            case OP_SHA3:
                return opaque(st, next_pc, 2);

            case OP_CALLDATALOAD: return tagged(st, next_pc, 1, SymOrigin::calldata);
            case OP_CALLDATASIZE: return tagged(st, next_pc, 0, SymOrigin::calldata);
            case OP_SLOAD: return tagged(st, next_pc, 1, SymOrigin::storage);
            case OP_ADDRESS:
            case OP_ORIGIN:
            case OP_CALLER:
            case OP_CALLVALUE:
            case OP_GASPRICE:
            case OP_COINBASE:
            case OP_TIMESTAMP:
            case OP_NUMBER:
            case OP_DIFFICULTY:
            case OP_GASLIMIT:
            case OP_CHAINID:
            case OP_SELFBALANCE:
            case OP_RETURNDATASIZE:
            case OP_GAS:
                return tagged(st, next_pc, 0, SymOrigin::env);
            case OP_BALANCE:
            case OP_EXTCODESIZE:
            case OP_EXTCODEHASH:
            case OP_BLOCKHASH:
                return tagged(st, next_pc, 1, SymOrigin::env);
            case OP_MSIZE:
                return tagged(st, next_pc, 0, SymOrigin::memory);

            case OP_PC:
                if (st.stack.size() >= kStackLimit) return false;
                push(SymValue::concrete(ins.offset));
                st.pc = next_pc;
                return true;
            case OP_CODESIZE:
                if (st.stack.size() >= kStackLimit) return false;
                push(SymValue::concrete(program_.code.size()));
                st.pc = next_pc;
                return true;

            case OP_POP:
                if (!need(1)) return false;
                pop();
                st.pc = next_pc;
                return true;

            case OP_MLOAD: {
                if (!need(1)) return false;
                const SymValue off = pop();
                if (off.is_concrete() && off.word() <= std::numeric_limits<uint64_t>::max()) {
                    const auto hit = st.memory.find(off.word().convert_to<uint64_t>());
                    push(hit != st.memory.end() ? hit->second : SymValue::symbolic(SymOrigin::memory));
                } else {
                    push(SymValue::symbolic(SymOrigin::memory));
                }
                st.pc = next_pc;
                return true;
            }
            case OP_MSTORE: {
                if (!need(2)) return false;
                const SymValue off = pop();
                SymValue value = pop();
                if (off.is_concrete() && off.word() <= std::numeric_limits<uint64_t>::max()) {
                    const uint64_t o = off.word().convert_to<uint64_t>();
                    clobber_memory(st, o > 31 ? o - 31 : 0, o + 32);
                    st.memory.insert_or_assign(o, std::move(value));
                } else {
                    st.memory.clear();
                }
                st.pc = next_pc;
                return true;
            }
            case OP_MSTORE8: {
                if (!need(2)) return false;
                const SymValue off = pop();
                pop();
                // Sub-word writes are not modeled; drop overlapping words.
                if (off.is_concrete() && off.word() <= std::numeric_limits<uint64_t>::max()) {
                    const uint64_t o = off.word().convert_to<uint64_t>();
                    clobber_memory(st, o > 31 ? o - 31 : 0, o + 1);
                } else {
                    st.memory.clear();
                }
                st.pc = next_pc;
                return true;
            }
            case OP_SSTORE:
                if (!need(2)) return false;
                pop();
                pop();
                st.pc = next_pc;
                return true;

            case OP_CALLDATACOPY:
            case OP_CODECOPY:
            case OP_RETURNDATACOPY:
                return copy_to_memory(st, next_pc, 3);
            case OP_EXTCODECOPY:
                return copy_to_memory(st, next_pc, 4);

            case OP_JUMP: {
                if (!need(1)) return false;
                const SymValue dest = pop();
                if (!dest.is_concrete()) return false;  // data-dependent jump: path ends
                return jump_to(st, dest.word());
            }
            case OP_JUMPI: {
                if (!need(2)) return false;
                const SymValue dest = pop();
                const SymValue cond = pop();
                if (cond.is_concrete()) {
                    if (cond.word() == 0) {
                        st.pc = next_pc;
                        return true;
                    }
                    if (!dest.is_concrete()) return false;
                    return jump_to(st, dest.word());
                }
                // Symbolic condition: fork. The fall-through continuation is
                // queued; this path takes the jump.
                if (dest.is_concrete() && valid_jumpdest(dest.word())) {
                    PathState fallthrough = st;
                    fallthrough.path_id = next_path_id++;
                    fallthrough.pc = next_pc;
                    worklist.push_back(std::move(fallthrough));
                    return jump_to(st, dest.word());
                }
                // Taken branch cannot proceed; continue as the fall-through.
                st.pc = next_pc;
                return true;
            }
            case OP_JUMPDEST: {
                if (++st.dest_visits[ins.offset] > config_.max_loop_iterations) {
                    report_.truncated = true;
                    return false;
                }
                st.pc = next_pc;
                return true;
            }

            case OP_CREATE:
                return opaque(st, next_pc, 3);
            case OP_CREATE2:
                return opaque(st, next_pc, 4);

            case OP_CALL:
            case OP_CALLCODE:
                return call_site(st, ins, next_pc, 7);
            case OP_DELEGATECALL:
            case OP_STATICCALL:
                return call_site(st, ins, next_pc, 6);

            case OP_RETURN:
            case OP_REVERT:
                return false;
            case OP_SELFDESTRUCT:
                return false;

            default:
                return false;  // unknown opcode terminates the path
        }
    }

    template <typename F>
    bool binop(PathState& st, uint32_t next_pc, F&& f) {
        if (st.stack.size() < 2) return false;
        SymValue a = std::move(st.stack.back());
        st.stack.pop_back();
        SymValue b = std::move(st.stack.back());
        st.stack.pop_back();
        if (a.is_concrete() && b.is_concrete())
            st.stack.push_back(SymValue::concrete(f(a.word(), b.word())));
        else
            st.stack.push_back(SymValue::symbolic(join_of(a, b)));
        st.pc = next_pc;
        return true;
    }

    template <typename F>
    bool ternop(PathState& st, uint32_t next_pc, F&& f) {
        if (st.stack.size() < 3) return false;
        SymValue a = take(st), b = take(st), c = take(st);
        if (a.is_concrete() && b.is_concrete() && c.is_concrete()) {
            st.stack.push_back(SymValue::concrete(f(a.word(), b.word(), c.word())));
        } else {
            std::optional<SymOrigin> origin;
            for (const SymValue* v : {&a, &b, &c}) {
                if (v->is_concrete()) continue;
                origin = origin ? SymValue::join(*origin, v->origin()) : v->origin();
            }
            st.stack.push_back(SymValue::symbolic(*origin));
        }
        st.pc = next_pc;
        return true;
    }

    bool opaque(PathState& st, uint32_t next_pc, size_t args) {
        if (st.stack.size() < args) return false;
        st.stack.resize(st.stack.size() - args);
        if (st.stack.size() >= kStackLimit) return false;
        st.stack.push_back(SymValue::symbolic(SymOrigin::unknown));
        st.pc = next_pc;
        return true;
    }

    bool tagged(PathState& st, uint32_t next_pc, size_t args, SymOrigin origin) {
        if (st.stack.size() < args) return false;
        st.stack.resize(st.stack.size() - args);
        if (st.stack.size() >= kStackLimit) return false;
        st.stack.push_back(SymValue::symbolic(origin));
        st.pc = next_pc;
        return true;
    }

    bool copy_to_memory(PathState& st, uint32_t next_pc, size_t args) {
        if (st.stack.size() < args) return false;
        // EXTCODECOPY carries the address before the destination offset.
        if (args == 4) take(st);
        const SymValue dest = take(st);
        take(st);
        const SymValue len = take(st);
        if (dest.is_concrete() && len.is_concrete() &&
            dest.word() <= std::numeric_limits<uint64_t>::max() && len.word() <= (1u << 24)) {
            const uint64_t d = dest.word().convert_to<uint64_t>();
            clobber_memory(st, d > 31 ? d - 31 : 0, d + len.word().convert_to<uint64_t>());
        } else {
            st.memory.clear();
        }
        st.pc = next_pc;
        return true;
    }

    bool call_site(PathState& st, const Instruction& ins, uint32_t next_pc, size_t args) {
        if (st.stack.size() < args) return false;
        SymValue target = st.stack[st.stack.size() - 2];
        if (target.is_concrete())
            target = SymValue::concrete(target.word() & address_mask());
        report_.call_sites.push_back(ExternalCallSite{ins.offset, ins.opcode, target, st.path_id});

        // Return-data writeback clobbers the out region.
        const SymValue& out_off = st.stack[st.stack.size() - args + 1];
        const SymValue& out_len = st.stack[st.stack.size() - args];
        if (out_off.is_concrete() && out_len.is_concrete() &&
            out_off.word() <= std::numeric_limits<uint64_t>::max() &&
            out_len.word() <= (1u << 24)) {
            const uint64_t o = out_off.word().convert_to<uint64_t>();
            clobber_memory(st, o > 31 ? o - 31 : 0, o + out_len.word().convert_to<uint64_t>());
        } else {
            st.memory.clear();
        }

        st.stack.resize(st.stack.size() - args);
        st.stack.push_back(SymValue::symbolic(SymOrigin::unknown));  // success flag
        st.pc = next_pc;
        return true;
    }

    bool jump_to(PathState& st, const Word& dest) {
        if (!valid_jumpdest(dest)) return false;
        st.pc = dest.convert_to<uint32_t>();
        return true;
    }

    bool valid_jumpdest(const Word& dest) const {
        return dest <= std::numeric_limits<uint32_t>::max() &&
               program_.jumpdests.count(dest.convert_to<uint32_t>()) > 0;
    }

    // Erases modeled words whose 32-byte extent intersects [from, to).
    static void clobber_memory(PathState& st, uint64_t from, uint64_t to) {
        auto it = st.memory.lower_bound(from > 31 ? from - 31 : 0);
        while (it != st.memory.end() && it->first < to) {
            if (it->first + 32 > from)
                it = st.memory.erase(it);
            else
                ++it;
        }
    }

    static SymValue take(PathState& st) {
        SymValue v = std::move(st.stack.back());
        st.stack.pop_back();
        return v;
    }

    static SymOrigin join_of(const SymValue& a, const SymValue& b) {
        if (a.is_concrete()) return b.origin();
        if (b.is_concrete()) return a.origin();
        return SymValue::join(a.origin(), b.origin());
    }

    const Program& program_;
    const ExecConfig& config_;
    std::unordered_map<uint32_t, size_t> by_offset_;
    ExecutionReport report_;
};

}  // namespace

std::optional<Address> ExternalCallSite::concrete_address() const {
    if (!target.is_concrete()) return std::nullopt;
    return address_from_word(target.word());
}

ExecutionReport execute(const Program& program, const ExecConfig& config) {
    return Engine(program, config).run();
}

Verdict resolve_delegate_target(const ExecutionReport& report, const Address& library) {
    const Word lib_word = word_from_address(library);
    bool any_symbolic = false;
    for (const auto& site : report.call_sites) {
        if (site.target.is_concrete()) {
            if ((site.target.word() & ((Word(1) << 160) - 1)) == lib_word)
                return Verdict::confirmed;
        } else {
            any_symbolic = true;
        }
    }
    if (report.call_sites.empty() || any_symbolic || report.truncated)
        return Verdict::inconclusive;
    return Verdict::refuted;
}

bool cbc_lock_check(const ExecutionReport& report, const Address& library) {
    const Word lib_word = word_from_address(library);
    for (const auto& site : report.call_sites) {
        if (site.target.is_concrete()) {
            if (site.target.word() != lib_word) return false;
        } else if (site.target.origin() == SymOrigin::calldata) {
            return false;
        }
    }
    return true;
}

std::string to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::confirmed: return "confirmed";
        case Verdict::refuted: return "refuted";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

std::string to_string(SymOrigin origin) {
    switch (origin) {
        case SymOrigin::calldata: return "calldata";
        case SymOrigin::storage: return "storage";
        case SymOrigin::env: return "env";
        case SymOrigin::memory: return "memory";
        case SymOrigin::unknown: return "unknown";
    }
    return "unknown";
}

std::string format_call_site(const ExternalCallSite& site) {
    std::string out = "pc=" + std::to_string(site.pc) + " op=" + opcode_mnemonic(site.opcode);
    if (const auto addr = site.concrete_address())
        out += " target=" + addr->to_string();
    else
        out += " target=symbolic:" + to_string(site.target.origin());
    return out;
}

Word word_from_address(const Address& address) {
    Word w = 0;
    for (uint8_t b : address.bytes) w = (w << 8) | b;
    return w;
}

Address address_from_word(const Word& word) {
    Address addr;
    for (int i = 0; i < 20; ++i)
        addr.bytes[19 - i] = static_cast<uint8_t>(Word((word >> (8 * i)) & 0xff).convert_to<unsigned>());
    return addr;
}

}  // namespace clue
