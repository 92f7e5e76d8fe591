// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <clue/chain_source.hpp>
#include <clue/decimal.hpp>

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace clue {

enum class Category { destructed, attacked_parity, creation_failure };

std::string to_string(Category category);

/// One token position held by a finding. usd_value is filled by valuation.
struct TokenBalance {
    Address token;
    std::string symbol;
    uint32_t decimals = 0;
    BigInt raw_amount = 0;
    Decimal usd_value;
};

/// A contract destruction observed in a trace (suicide internal tx).
struct DestructionEvent {
    Address contract;
    Hash32 destroying_tx;
    uint64_t block_number = 0;
    Address refund_to;
};

enum class Verdict;  // symexec.hpp

struct ParityEvidence {
    std::string verdict;       // always "confirmed" on findings
    bool cbc_locked = false;   // call-target provenance proof
    bool truncated = false;
    uint64_t call_sites = 0;
};

struct CreationFailureEvidence {
    Hash32 creation_tx;
    uint64_t block_number = 0;
    std::string error;
    uint64_t post_failure_inbound = 0;
};

/// One classified locked account. Only accounts holding value with no
/// post-lock outflow become findings; everything else stays a candidate.
struct Finding {
    Category category = Category::destructed;
    Address account;
    Wei eth_locked = 0;
    std::vector<TokenBalance> cbc_locked;
    uint64_t first_lock_block = 0;
    std::optional<DestructionEvent> destruction;
    std::optional<ParityEvidence> parity;
    std::optional<CreationFailureEvidence> creation;
    std::vector<std::string> annotations;

    bool has_value() const { return eth_locked > 0 || !cbc_locked.empty(); }
};

/// Result of one detector run: candidates matched the structural pattern,
/// findings additionally hold locked value.
struct PipelineResult {
    Category category = Category::destructed;
    std::vector<Address> candidates;  // sorted, unique
    std::vector<Finding> findings;    // sorted by account
    std::vector<std::string> warnings;
    std::vector<std::string> notes;
    std::map<std::string, uint64_t> counters;
};

struct DetectorOptions {
    std::optional<std::vector<Hash32>> tx_scope;        // destructed; default: whole fixture
    std::optional<std::vector<Address>> account_scope;  // parity/eoa; default: whole fixture
    std::vector<Address> token_universe;                // extra tokens to value (price table)
    unsigned parallelism = 1;
};

/// Positive token balances of `account`: the union of tokens seen in its
/// event log and `extra_tokens`, valued through call_balance_of. Sorted by
/// token address. Backend capability gaps are skipped silently; per-token
/// query failures are appended to `warnings`.
std::vector<TokenBalance> collect_holdings(const ChainSource& source, const Address& account,
                                           std::span<const Address> extra_tokens,
                                           std::vector<std::string>* warnings = nullptr);

struct OutflowCheck {
    bool found = false;
    std::string description;
    bool complete = true;  // false when the backend cannot answer fully
};

/// Looks for any outgoing value movement strictly after `block`: successful
/// external transactions from the account, internal transactions from it,
/// and token transfer events with it as sender.
OutflowCheck find_value_outflow_after(const ChainSource& source, const Address& account,
                                      uint64_t block);

/// True if the account issued an ERC20 approval at or before `block`.
bool has_prior_approval(const ChainSource& source, const Address& account, uint64_t block);

/// Number of inbound value transfers to the account strictly after `block`.
uint64_t count_inbound_value_after(const ChainSource& source, const Address& account,
                                   uint64_t block);

}  // namespace clue
