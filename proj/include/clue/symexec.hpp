// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <clue/address.hpp>
#include <clue/disasm.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace clue {

using Word = boost::multiprecision::uint256_t;

/// Where a non-concrete value came from. Joining two distinct origins
/// loses provenance and yields `unknown`.
enum class SymOrigin { calldata, storage, env, memory, unknown };

/// Lattice value: an exact 256-bit word, or a tagged symbolic value.
/// Default-constructed values are symbolic(unknown).
class SymValue {
public:
    SymValue() = default;
    static SymValue concrete(Word word) { return SymValue(std::move(word)); }
    static SymValue symbolic(SymOrigin origin) { return SymValue(origin); }

    bool is_concrete() const { return word_.has_value(); }
    const Word& word() const { return *word_; }
    SymOrigin origin() const { return origin_; }

    static SymOrigin join(SymOrigin a, SymOrigin b) {
        return a == b ? a : SymOrigin::unknown;
    }

private:
    explicit SymValue(Word word) : word_(std::move(word)) {}
    explicit SymValue(SymOrigin origin) : origin_(origin) {}

    std::optional<Word> word_;
    SymOrigin origin_ = SymOrigin::unknown;
};

/// An observed external-call execution. `target` is the second-from-top
/// stack item at the moment the call opcode executes, masked to 160 bits
/// when concrete.
struct ExternalCallSite {
    uint32_t pc = 0;
    uint8_t opcode = 0;  // CALL, CALLCODE, DELEGATECALL or STATICCALL
    SymValue target = SymValue::symbolic(SymOrigin::unknown);
    uint32_t path_id = 0;

    std::optional<Address> concrete_address() const;
};

struct ExecConfig {
    uint32_t max_paths = 256;
    uint32_t max_steps_per_path = 50'000;
    uint32_t max_loop_iterations = 8;
};

struct ExecutionReport {
    std::vector<ExternalCallSite> call_sites;
    uint32_t paths_explored = 0;
    bool truncated = false;
};

/// Depth-first bounded exploration with a symbolic stack. Never throws on
/// program content: stack underflow, invalid opcodes and symbolic jump
/// targets terminate only the offending path.
ExecutionReport execute(const Program& program, const ExecConfig& config = {});

enum class Verdict { confirmed, refuted, inconclusive };

/// Decides whether the program provably delegates to `library`:
/// confirmed   — some call site has a concrete target equal to it;
/// refuted     — sites exist, all targets concrete and different, not truncated;
/// inconclusive otherwise.
Verdict resolve_delegate_target(const ExecutionReport& report, const Address& library);

/// True iff the wallet cannot reach any other contract: no calldata-derived
/// call target and no concrete target other than the library.
bool cbc_lock_check(const ExecutionReport& report, const Address& library);

std::string to_string(Verdict verdict);
std::string to_string(SymOrigin origin);
std::string format_call_site(const ExternalCallSite& site);

Word word_from_address(const Address& address);
Address address_from_word(const Word& word);

}  // namespace clue
