// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#include <clue/detect_parity.hpp>
#include <clue/disasm.hpp>
#include <clue/parallel.hpp>

#include <algorithm>

namespace clue {

std::vector<Address> screen_parity_candidates(std::span<const AccountState> accounts,
                                              const ParityConfig& config) {
    std::vector<Address> candidates;
    for (const auto& account : accounts) {
        if (!account.has_code()) continue;
        const Program program = disassemble(account.code);
        if (screen_hardcoded(program, config.library_address))
            candidates.push_back(account.address);
    }
    return candidates;
}

std::optional<Finding> confirm_parity(const ChainSource& source, const Address& account,
                                      const ParityConfig& config,
                                      std::span<const Address> token_universe,
                                      std::string* diagnostic) {
    try {
        const Program program = disassemble(source.get_code(account));
        const ExecutionReport report = execute(program, config.exec);
        const Verdict verdict = resolve_delegate_target(report, config.library_address);
        if (verdict != Verdict::confirmed) {
            if (diagnostic)
                *diagnostic = account.to_string() + ": verdict=" + to_string(verdict) +
                              " sites=" + std::to_string(report.call_sites.size()) +
                              (report.truncated ? " truncated" : "");
            return std::nullopt;
        }

        const Wei eth = source.get_balance(account);
        std::vector<std::string> warnings;
        auto holdings = collect_holdings(source, account, token_universe, &warnings);
        if (eth == 0 && holdings.empty()) {
            if (diagnostic) *diagnostic = account.to_string() + ": confirmed but holds no value";
            return std::nullopt;
        }
        if (const auto outflow = find_value_outflow_after(source, account, config.attack_block);
            outflow.found) {
            if (diagnostic)
                *diagnostic = account.to_string() + ": value moved after attack block (" +
                              outflow.description + ")";
            return std::nullopt;
        }

        Finding finding;
        finding.category = Category::attacked_parity;
        finding.account = account;
        finding.eth_locked = eth;
        finding.cbc_locked = std::move(holdings);
        finding.first_lock_block = config.attack_block;
        finding.parity = ParityEvidence{to_string(verdict),
                                        cbc_lock_check(report, config.library_address),
                                        report.truncated, report.call_sites.size()};
        for (auto& w : warnings) finding.annotations.push_back(std::move(w));
        return finding;
    } catch (const Error& e) {
        throw Error("account " + account.to_string() + ": " + e.what());
    }
}

PipelineResult run_parity_pipeline(const ChainSource& source, const ParityConfig& config,
                                   const DetectorOptions& options) {
    if (config.library_address.is_zero())
        throw ConfigError("parity detector requires a nonzero library address");

    PipelineResult result;
    result.category = Category::attacked_parity;

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
                "parity detector needs a candidate address list on this backend (--candidates)");
        }
    }

    result.candidates = screen_parity_candidates(accounts, config);
    std::sort(result.candidates.begin(), result.candidates.end());

    // The lock argument depends on the library being gone; a live library
    // downgrades every would-be finding to a warning.
    const bool library_destructed = source.get_code(config.library_address).empty();
    result.counters["library_destructed"] = library_destructed ? 1 : 0;
    if (!library_destructed)
        result.warnings.push_back("library " + config.library_address.to_string() +
                                  " still has code; findings downgraded to warnings");

    struct Confirmed {
        std::optional<Finding> finding;
        std::string diagnostic;
        std::string warning;
    };
    const auto confirmed =
        parallel_map(result.candidates, options.parallelism, [&](const Address& account) {
            Confirmed c;
            try {
                c.finding = confirm_parity(source, account, config, options.token_universe,
                                           &c.diagnostic);
            } catch (const Error& e) {
                c.warning = e.what();
            }
            return c;
        });
    for (auto& c : confirmed) {
        if (c.finding) {
            if (library_destructed)
                result.findings.push_back(std::move(*c.finding));
            else
                result.warnings.push_back("downgraded finding (library alive): " +
                                          c.finding->account.to_string());
        }
        if (!c.diagnostic.empty()) result.notes.push_back(std::move(c.diagnostic));
        if (!c.warning.empty()) result.warnings.push_back(std::move(c.warning));
    }
    std::sort(result.findings.begin(), result.findings.end(),
              [](const Finding& a, const Finding& b) { return a.account < b.account; });
    result.counters["candidates"] = result.candidates.size();
    result.counters["findings"] = result.findings.size();
    return result;
}

}  // namespace clue
