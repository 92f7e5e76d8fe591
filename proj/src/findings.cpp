// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#include <clue/findings.hpp>

#include <algorithm>
#include <set>

namespace clue {

std::string to_string(Category category) {
    switch (category) {
        case Category::destructed: return "destructed";
        case Category::attacked_parity: return "attacked_parity";
        case Category::creation_failure: return "creation_failure";
    }
    return "destructed";
}

std::vector<TokenBalance> collect_holdings(const ChainSource& source, const Address& account,
                                           std::span<const Address> extra_tokens,
                                           std::vector<std::string>* warnings) {
    std::set<Address> tokens(extra_tokens.begin(), extra_tokens.end());
    try {
        for (const auto& event : source.list_token_events(account))
            tokens.insert(event.token);
    } catch (const CapabilityError&) {
        // Backend cannot enumerate events; extra_tokens is the universe.
    }

    std::map<Address, TokenInfo> metadata;
    try {
        for (const auto& info : source.list_tokens()) metadata.emplace(info.address, info);
    } catch (const CapabilityError&) {
    }

    std::vector<TokenBalance> out;
    for (const Address& token : tokens) {
        BigInt raw;
        try {
            raw = source.call_balance_of(token, account);
        } catch (const CapabilityError&) {
            continue;
        } catch (const Error& e) {
            if (warnings)
                warnings->push_back("balance query failed for token " + token.to_string() +
                                    " holder " + account.to_string() + ": " + e.what());
            continue;
        }
        if (raw <= 0) continue;
        TokenBalance balance;
        balance.token = token;
        balance.raw_amount = raw;
        const auto meta = metadata.find(token);
        if (meta != metadata.end()) {
            balance.symbol = meta->second.symbol;
            balance.decimals = meta->second.decimals;
        }
        out.push_back(std::move(balance));
    }
    return out;  // std::set iteration keeps tokens sorted by address
}

OutflowCheck find_value_outflow_after(const ChainSource& source, const Address& account,
                                      uint64_t block) {
    OutflowCheck check;
    std::vector<Transaction> txs;
    try {
        txs = source.list_transactions(account);
    } catch (const CapabilityError&) {
        check.complete = false;
    }
    for (const auto& tx : txs) {
        if (tx.block_number <= block) continue;
        if (tx.from == account && tx.status == TxStatus::success && tx.value > 0) {
            check.found = true;
            check.description = "outgoing transaction " + tx.hash.to_string() + " at block " +
                                std::to_string(tx.block_number);
            return check;
        }
        // Internal value movements are only visible through the trace.
        try {
            const TraceRecord trace = source.get_trace(tx.hash);
            for (const auto& itx : trace.internal_txs) {
                if (itx.from == account && itx.value > 0) {
                    check.found = true;
                    check.description = "internal value transfer in " + tx.hash.to_string() +
                                        " at block " + std::to_string(tx.block_number);
                    return check;
                }
            }
        } catch (const Error&) {
            check.complete = false;
        }
    }
    try {
        for (const auto& event : source.list_token_events(account)) {
            if (event.kind == TokenEventKind::transfer && event.from == account &&
                event.block_number > block && event.amount > 0) {
                check.found = true;
                check.description = "token transfer out of " + event.token.to_string() +
                                    " at block " + std::to_string(event.block_number);
                return check;
            }
        }
    } catch (const CapabilityError&) {
        check.complete = false;
    }
    return check;
}

bool has_prior_approval(const ChainSource& source, const Address& account, uint64_t block) {
    try {
        for (const auto& event : source.list_token_events(account)) {
            if (event.kind == TokenEventKind::approval && event.from == account &&
                event.block_number <= block)
                return true;
        }
    } catch (const CapabilityError&) {
    }
    return false;
}

uint64_t count_inbound_value_after(const ChainSource& source, const Address& account,
                                   uint64_t block) {
    uint64_t count = 0;
    try {
        for (const auto& tx : source.list_transactions(account)) {
            if (tx.block_number > block && tx.to && *tx.to == account &&
                tx.status == TxStatus::success && tx.value > 0)
                ++count;
        }
    } catch (const CapabilityError&) {
    }
    return count;
}

}  // namespace clue
