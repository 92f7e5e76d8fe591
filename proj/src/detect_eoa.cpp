// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#include <clue/detect_eoa.hpp>
#include <clue/parallel.hpp>

#include <algorithm>

namespace clue {

std::vector<SensitiveEoa> filter_sensitive_eoas(std::span<const AccountState> accounts) {
    std::vector<SensitiveEoa> out;
    for (const auto& account : accounts) {
        if (account.nonce == 0 && !account.has_code())
            out.push_back(SensitiveEoa{account.address, account});
    }
    return out;
}

std::optional<Transaction> check_creation_failure(const ChainSource& source,
                                                  const SensitiveEoa& eoa) {
    const auto txs = source.list_transactions(eoa.address);
    if (txs.empty()) return std::nullopt;  // exists only via balance-touching mechanisms
    const Transaction& oldest = txs.front();
    if (!oldest.is_creation()) return std::nullopt;
    if (oldest.status != TxStatus::failed) return std::nullopt;
    if (!oldest.created_contract || *oldest.created_contract != eoa.address) return std::nullopt;
    return oldest;
}

PipelineResult run_eoa_pipeline(const ChainSource& source, const DetectorOptions& options) {
    PipelineResult result;
    result.category = Category::creation_failure;

    std::vector<AccountState> accounts;
    if (options.account_scope) {
        accounts.reserve(options.account_scope->size());
        for (const auto& address : *options.account_scope)
            accounts.push_back(source.get_account_state(address));
    } else {
        try {
            source.list_all_accounts(
                [&accounts](const AccountState& a) { accounts.push_back(a); });
        } catch (const CapabilityError&) {
            throw ConfigError(
                "eoa detector needs a candidate address list on this backend (--candidates)");
        }
    }

    const auto sensitive = filter_sensitive_eoas(accounts);

    struct Checked {
        std::optional<Finding> finding;
        bool candidate = false;
        bool unexplained = false;
        std::string warning;
        Address address;
    };
    const auto checked =
        parallel_map(sensitive, options.parallelism, [&](const SensitiveEoa& eoa) {
            Checked c;
            c.address = eoa.address;
            try {
                const auto creation = check_creation_failure(source, eoa);
                if (!creation) {
                    // Funded but with no history at all: cannot be a
                    // creation-failure account, worth surfacing.
                    if (eoa.state.balance > 0 && source.list_transactions(eoa.address).empty())
                        c.unexplained = true;
                    return c;
                }
                c.candidate = true;

                const Wei eth = source.get_balance(eoa.address);
                std::vector<std::string> warnings;
                auto holdings =
                    collect_holdings(source, eoa.address, options.token_universe, &warnings);
                if (eth == 0 && holdings.empty()) return c;

                // Nonce zero makes outflow structurally impossible; scan
                // anyway so inconsistent data cannot produce a finding.
                if (source.get_nonce(eoa.address) != 0) {
                    c.warning = eoa.address.to_string() + ": nonce changed since filtering";
                    return c;
                }
                if (const auto outflow = find_value_outflow_after(source, eoa.address, 0);
                    outflow.found) {
                    c.warning = eoa.address.to_string() +
                                ": inconsistent fixture, sensitive EOA with outflow (" +
                                outflow.description + ")";
                    return c;
                }

                Finding finding;
                finding.category = Category::creation_failure;
                finding.account = eoa.address;
                finding.eth_locked = eth;
                finding.cbc_locked = std::move(holdings);
                finding.first_lock_block = creation->block_number;
                finding.creation = CreationFailureEvidence{
                    creation->hash, creation->block_number, creation->error.value_or(""),
                    count_inbound_value_after(source, eoa.address, creation->block_number)};
                for (auto& w : warnings) finding.annotations.push_back(std::move(w));
                c.finding = std::move(finding);
            } catch (const Error& e) {
                c.warning = eoa.address.to_string() + ": " + std::string(e.what());
            }
            return c;
        });

    uint64_t unexplained = 0;
    for (auto& c : checked) {
        if (c.candidate) result.candidates.push_back(c.address);
        if (c.unexplained) ++unexplained;
        if (c.finding) result.findings.push_back(std::move(*c.finding));
        if (!c.warning.empty()) result.warnings.push_back(std::move(c.warning));
    }
    std::sort(result.candidates.begin(), result.candidates.end());
    std::sort(result.findings.begin(), result.findings.end(),
              [](const Finding& a, const Finding& b) { return a.account < b.account; });
    result.counters["candidates"] = result.candidates.size();
    result.counters["findings"] = result.findings.size();
    result.counters["unexplained_sensitive"] = unexplained;
    return result;
}

}  // namespace clue
