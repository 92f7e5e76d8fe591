// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <clue/address.hpp>
#include <clue/decimal.hpp>
#include <clue/hex.hpp>

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace clue {

using Wei = BigInt;  // non-negative, arbitrary precision
using Json = nlohmann::ordered_json;

/// One account's state snapshot: nonce, balance and runtime code.
/// Empty code means the account is an EOA or a destructed / never-created
/// contract. Immutable after construction.
struct AccountState {
    Address address;
    uint64_t nonce = 0;
    Wei balance = 0;
    std::vector<uint8_t> code;

    bool has_code() const { return !code.empty(); }
};

enum class TxStatus { success, failed };

struct Transaction {
    Hash32 hash;
    Address from;
    std::optional<Address> to;  // absent => contract creation
    Wei value = 0;
    uint64_t block_number = 0;
    TxStatus status = TxStatus::success;
    std::optional<std::string> error;             // present when failed
    std::optional<Address> created_contract;      // present for creations

    bool is_creation() const { return !to.has_value(); }
};

enum class InternalTxType { call, callcode, delegatecall, staticcall, create, suicide, other };

/// Message-level effect recorded by the call tracer. "selfdestruct" on the
/// wire normalizes to suicide.
struct InternalTransaction {
    Hash32 parent_hash;
    InternalTxType type = InternalTxType::call;
    Address from;
    std::optional<Address> to;
    Wei value = 0;
    uint32_t depth = 0;
};

struct TraceStep {
    uint32_t pc = 0;
    std::string opcode;
    uint32_t depth = 0;
};

struct TraceRecord {
    Hash32 tx_hash;
    std::vector<TraceStep> steps;
    std::vector<InternalTransaction> internal_txs;
};

enum class TokenEventKind { transfer, approval };

/// ERC20 Transfer / Approval log entry.
struct TokenEvent {
    Address token;
    TokenEventKind kind = TokenEventKind::transfer;
    Address from;
    Address to_or_spender;
    BigInt amount = 0;
    uint64_t block_number = 0;
};

struct TokenInfo {
    Address address;
    std::string symbol;
    uint32_t decimals = 0;
};

/// Converts Wei to ETH as an exact decimal (divides by 10^18).
Decimal wei_to_eth(const Wei& amount);

std::string to_string(TxStatus status);
TxStatus tx_status_from_string(std::string_view text);
std::string to_string(InternalTxType type);
InternalTxType internal_tx_type_from_string(std::string_view text);
std::string to_string(TokenEventKind kind);
TokenEventKind token_event_kind_from_string(std::string_view text);

// Fixture schema (all large integers serialized as decimal strings).
Json account_to_json(const AccountState& account);
AccountState account_from_json(const Json& j);
Json transaction_to_json(const Transaction& tx);
Transaction transaction_from_json(const Json& j);
Json trace_to_json(const TraceRecord& trace);
TraceRecord trace_from_json(const Json& j);
Json token_event_to_json(const TokenEvent& event);
TokenEvent token_event_from_json(const Json& j);
Json token_info_to_json(const TokenInfo& info);
TokenInfo token_info_from_json(const Json& j);

}  // namespace clue
