// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <clue/findings.hpp>

#include <map>

namespace clue {

struct TokenPrice {
    std::string symbol;
    uint32_t decimals = 0;
    Decimal usd;  // per whole token
};

/// Static price snapshot. Prices are run configuration, never fetched live,
/// so reports are reproducible.
struct PriceTable {
    Decimal eth_usd;
    std::string as_of;
    std::map<Address, TokenPrice> tokens;

    static PriceTable load(const std::string& path);  // throws ConfigError
    static PriceTable from_json(const Json& j);
    Json to_json() const;

    std::vector<Address> token_universe() const;
};

/// usd amount of `wei` at the table's ETH price, exact.
Decimal eth_usd_value(const Wei& wei, const PriceTable& prices);

struct AccountValue {
    Wei eth = 0;
    std::vector<TokenBalance> tokens;  // positive balances, usd filled
    Decimal usd_total;
};

/// ETH balance plus a balance query for every token in the table (and any
/// token the source reports holdings for). Per-token query failures are
/// reported through `warnings` and skipped.
AccountValue value_account(const ChainSource& source, const Address& account,
                           const PriceTable& prices,
                           std::vector<std::string>* warnings = nullptr);

struct CategoryReport {
    uint64_t candidates = 0;
    std::vector<Finding> findings;
    Decimal eth_usd;
    Decimal cbc_usd;
};

/// The aggregate valued report. grand_total_usd is the exact-decimal sum of
/// the per-category totals, which in turn sum the per-finding values.
struct LockedReport {
    std::string version = "1.0";
    std::string generated_at;
    std::string prices_as_of;
    Decimal eth_usd_price;
    std::map<Category, CategoryReport> categories;
    Decimal grand_total_usd;
    std::vector<std::string> warnings;
    std::vector<std::string> notes;
    std::map<std::string, uint64_t> counters;
};

/// Values every finding against the table and aggregates totals per
/// category. Tokens held but absent from the table are valued at zero with
/// a warning. Ordering is deterministic: category, then account address.
LockedReport build_report(const std::vector<PipelineResult>& results, const PriceTable& prices);

/// Fixed key order and pinned decimal formatting; USD amounts round
/// half-even to 2 digits at serialization only.
Json report_to_json(const LockedReport& report);

/// One row per finding.
std::string report_to_csv(const LockedReport& report);

std::string render_report_summary(const LockedReport& report);

}  // namespace clue
