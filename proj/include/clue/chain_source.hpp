// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <clue/chain_model.hpp>

#include <functional>
#include <memory>
#include <vector>

namespace clue {

/// Uniform read interface over chain data. Implementations must be safe for
/// concurrent read queries. Capabilities a backend cannot provide throw
/// CapabilityError.
class ChainSource {
public:
    virtual ~ChainSource() = default;

    virtual AccountState get_account_state(const Address& address) const = 0;
    virtual std::vector<uint8_t> get_code(const Address& address) const = 0;
    virtual Wei get_balance(const Address& address) const = 0;
    virtual uint64_t get_nonce(const Address& address) const = 0;

    /// Transactions touching the address in any role (sender, recipient,
    /// created contract, internal-transaction participant), ascending by
    /// (block_number, intra-block index). "Oldest" means the first element.
    virtual std::vector<Transaction> list_transactions(const Address& address) const = 0;

    virtual std::optional<Transaction> get_transaction(const Hash32& tx_hash) const = 0;
    virtual TraceRecord get_trace(const Hash32& tx_hash) const = 0;
    virtual std::vector<TokenEvent> list_token_events(const Address& address) const = 0;
    virtual BigInt call_balance_of(const Address& token, const Address& holder) const = 0;

    /// Fixture backend only; the RPC backend cannot enumerate state.
    virtual void list_all_accounts(const std::function<void(const AccountState&)>& sink) const = 0;

    /// All transaction hashes known to the source (fixture backend only).
    virtual std::vector<Hash32> list_all_tx_hashes() const = 0;

    /// Token contracts the source knows about (fixture backend only).
    virtual std::vector<TokenInfo> list_tokens() const = 0;
};

/// Loads a fixture directory into memory. All queries are deterministic and
/// referentially transparent. Throws LoadError on schema violations,
/// including transactions whose trace file is missing.
std::unique_ptr<ChainSource> open_fixture_source(const std::string& directory_path);

}  // namespace clue
