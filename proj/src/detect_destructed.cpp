// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#include <clue/detect_destructed.hpp>
#include <clue/parallel.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace clue {

DestructedScan scan_traces_for_selfdestruct(const ChainSource& source,
                                            const std::vector<Hash32>& tx_hashes) {
    DestructedScan scan;
    std::set<std::pair<Address, Hash32>> seen;
    for (const Hash32& hash : tx_hashes) {
        TraceRecord trace;
        try {
            trace = source.get_trace(hash);
        } catch (const Error& e) {
            scan.warnings.push_back("trace unavailable for " + hash.to_string() + ": " + e.what());
            continue;
        }
        uint64_t block = 0;
        if (const auto tx = source.get_transaction(hash)) block = tx->block_number;
        for (const auto& itx : trace.internal_txs) {
            if (itx.type != InternalTxType::suicide) continue;
            if (!seen.insert({itx.from, hash}).second) continue;
            DestructionEvent event;
            event.contract = itx.from;
            event.destroying_tx = hash;
            event.block_number = block;
            event.refund_to = itx.to.value_or(Address{});
            scan.events.push_back(event);
        }
    }
    return scan;
}

std::optional<Finding> confirm_locked_destructed(const ChainSource& source,
                                                 const DestructionEvent& event,
                                                 std::span<const Address> token_universe) {
    try {
        // (a) still code-less: a redeployed contract is no longer locked.
        if (!source.get_code(event.contract).empty()) return std::nullopt;

        // (b) holds value.
        const Wei eth = source.get_balance(event.contract);
        std::vector<std::string> warnings;
        auto holdings = collect_holdings(source, event.contract, token_universe, &warnings);
        if (eth == 0 && holdings.empty()) return std::nullopt;

        // (c) nothing moved out after the destruction.
        if (find_value_outflow_after(source, event.contract, event.block_number).found)
            return std::nullopt;

        Finding finding;
        finding.category = Category::destructed;
        finding.account = event.contract;
        finding.eth_locked = eth;
        finding.cbc_locked = std::move(holdings);
        finding.first_lock_block = event.block_number;
        finding.destruction = event;
        if (has_prior_approval(source, event.contract, event.block_number))
            finding.annotations.push_back("prior_approval_detected");
        for (auto& w : warnings) finding.annotations.push_back(std::move(w));
        return finding;
    } catch (const Error& e) {
        throw Error("account " + event.contract.to_string() + ": " + e.what());
    }
}

PipelineResult run_destructed_pipeline(const ChainSource& source, const DetectorOptions& options) {
    PipelineResult result;
    result.category = Category::destructed;

    std::vector<Hash32> hashes;
    if (options.tx_scope) {
        hashes = *options.tx_scope;
    } else {
        try {
            hashes = source.list_all_tx_hashes();
        } catch (const CapabilityError&) {
            throw ConfigError(
                "destructed detector needs a transaction list on this backend (--tx-list)");
        }
    }

    DestructedScan scan = scan_traces_for_selfdestruct(source, hashes);
    result.warnings = std::move(scan.warnings);

    // One event per contract; when a contract is destructed repeatedly the
    // latest destruction is the lock boundary.
    std::map<Address, DestructionEvent> latest;
    for (const auto& event : scan.events) {
        const auto it = latest.find(event.contract);
        if (it == latest.end() || event.block_number > it->second.block_number)
            latest.insert_or_assign(event.contract, event);
    }
    std::vector<DestructionEvent> events;
    events.reserve(latest.size());
    for (const auto& [address, event] : latest) {
        result.candidates.push_back(address);
        events.push_back(event);
    }

    struct Confirmed {
        std::optional<Finding> finding;
        std::string warning;
    };
    const auto confirmed =
        parallel_map(events, options.parallelism, [&](const DestructionEvent& event) {
            Confirmed c;
            try {
                c.finding = confirm_locked_destructed(source, event, options.token_universe);
            } catch (const Error& e) {
                c.warning = e.what();
            }
            return c;
        });
    for (auto& c : confirmed) {
        if (c.finding) result.findings.push_back(std::move(*c.finding));
        if (!c.warning.empty()) result.warnings.push_back(std::move(c.warning));
    }
    std::sort(result.findings.begin(), result.findings.end(),
              [](const Finding& a, const Finding& b) { return a.account < b.account; });
    result.counters["candidates"] = result.candidates.size();
    result.counters["findings"] = result.findings.size();
    return result;
}

}  // namespace clue
