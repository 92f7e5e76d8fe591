// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#include <clue/valuation.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace clue {

namespace {

Decimal token_usd_value(const BigInt& raw, const TokenPrice& price) {
    return (Decimal::from_int(raw) * price.usd).div_pow10(price.decimals);
}

/// Fills usd_value (and symbol/decimals, when the table knows the token) on
/// each balance; unpriced tokens are valued at zero with a warning.
void price_holdings(std::vector<TokenBalance>& holdings, const PriceTable& prices,
                    std::vector<std::string>* warnings) {
    for (auto& holding : holdings) {
        const auto it = prices.tokens.find(holding.token);
        if (it == prices.tokens.end()) {
            holding.usd_value = Decimal();
            if (warnings)
                warnings->push_back("no price for token " + holding.token.to_string() +
                                    (holding.symbol.empty() ? "" : " (" + holding.symbol + ")") +
                                    "; valued at 0");
            continue;
        }
        holding.symbol = it->second.symbol;
        holding.decimals = it->second.decimals;
        holding.usd_value = token_usd_value(holding.raw_amount, it->second);
    }
}

}  // namespace

PriceTable PriceTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open price file " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed price file " + path + ": " + e.what());
    }
    try {
        return from_json(j);
    } catch (const Error& e) {
        throw ConfigError("malformed price file " + path + ": " + e.what());
    }
}

PriceTable PriceTable::from_json(const Json& j) {
    PriceTable table;
    if (!j.contains("eth_usd") || !j["eth_usd"].is_string())
        throw ConfigError("price table requires a string \"eth_usd\"");
    table.eth_usd = Decimal::parse(j["eth_usd"].get<std::string>());
    if (table.eth_usd.is_negative()) throw ConfigError("negative eth_usd price");
    table.as_of = j.value("as_of", "");
    if (j.contains("tokens")) {
        for (const auto& [key, value] : j["tokens"].items()) {
            TokenPrice price;
            price.symbol = value.value("symbol", "");
            price.decimals = value.contains("decimals") && value["decimals"].is_string()
                                 ? static_cast<uint32_t>(parse_dec_u64(value["decimals"].get<std::string>()))
                                 : value.value("decimals", 0u);
            if (price.decimals > 36) throw ConfigError("token decimals out of range for " + key);
            if (!value.contains("usd") || !value["usd"].is_string())
                throw ConfigError("token " + key + " requires a string \"usd\" price");
            price.usd = Decimal::parse(value["usd"].get<std::string>());
            if (price.usd.is_negative()) throw ConfigError("negative price for token " + key);
            table.tokens.emplace(Address::parse(key), std::move(price));
        }
    }
    return table;
}

Json PriceTable::to_json() const {
    Json j;
    j["eth_usd"] = eth_usd.to_string();
    j["as_of"] = as_of;
    Json tokens_json = Json::object();
    for (const auto& [address, price] : tokens) {
        Json t;
        t["symbol"] = price.symbol;
        t["decimals"] = price.decimals;
        t["usd"] = price.usd.to_string();
        tokens_json[address.to_string()] = std::move(t);
    }
    j["tokens"] = std::move(tokens_json);
    return j;
}

std::vector<Address> PriceTable::token_universe() const {
    std::vector<Address> out;
    out.reserve(tokens.size());
    for (const auto& [address, price] : tokens) out.push_back(address);
    return out;
}

Decimal eth_usd_value(const Wei& wei, const PriceTable& prices) {
    return (Decimal::from_int(wei) * prices.eth_usd).div_pow10(18);
}

AccountValue value_account(const ChainSource& source, const Address& account,
                           const PriceTable& prices, std::vector<std::string>* warnings) {
    AccountValue value;
    value.eth = source.get_balance(account);
    value.tokens = collect_holdings(source, account, prices.token_universe(), warnings);
    price_holdings(value.tokens, prices, warnings);
    value.usd_total = eth_usd_value(value.eth, prices);
    for (const auto& token : value.tokens) value.usd_total += token.usd_value;
    return value;
}

LockedReport build_report(const std::vector<PipelineResult>& results, const PriceTable& prices) {
    LockedReport report;
    report.prices_as_of = prices.as_of;
    report.eth_usd_price = prices.eth_usd;
    for (const auto& result : results) {
        CategoryReport& category = report.categories[result.category];
        category.candidates = result.counters.count("candidates")
                                  ? result.counters.at("candidates")
                                  : result.candidates.size();
        for (const Finding& finding : result.findings) {
            Finding valued = finding;
            price_holdings(valued.cbc_locked, prices, &report.warnings);
            category.eth_usd += eth_usd_value(valued.eth_locked, prices);
            for (const auto& token : valued.cbc_locked) category.cbc_usd += token.usd_value;
            category.findings.push_back(std::move(valued));
        }
        std::sort(category.findings.begin(), category.findings.end(),
                  [](const Finding& a, const Finding& b) { return a.account < b.account; });
        for (const auto& w : result.warnings) report.warnings.push_back(w);
        for (const auto& n : result.notes) report.notes.push_back(n);
        for (const auto& [key, count] : result.counters)
            report.counters[to_string(result.category) + "." + key] = count;
    }
    for (const auto& [category, body] : report.categories)
        report.grand_total_usd += body.eth_usd + body.cbc_usd;
    return report;
}

namespace {

Json finding_to_json(const Finding& finding, const Decimal& eth_price) {
    Json j;
    j["account"] = finding.account.to_string();
    j["eth_locked_wei"] = finding.eth_locked.convert_to<std::string>();
    j["eth_locked"] = wei_to_eth(finding.eth_locked).to_string();
    const Decimal eth_usd = (Decimal::from_int(finding.eth_locked) * eth_price).div_pow10(18);
    j["eth_usd"] = eth_usd.to_fixed(2);
    Json cbc = Json::array();
    Decimal cbc_total;
    for (const auto& token : finding.cbc_locked) {
        Json t;
        t["token"] = token.token.to_string();
        t["symbol"] = token.symbol;
        t["raw_amount"] = token.raw_amount.convert_to<std::string>();
        t["usd"] = token.usd_value.to_fixed(2);
        cbc_total += token.usd_value;
        cbc.push_back(std::move(t));
    }
    j["cbc"] = std::move(cbc);
    j["cbc_usd"] = cbc_total.to_fixed(2);
    j["first_lock_block"] = finding.first_lock_block;
    Json evidence;
    if (finding.destruction) {
        evidence["destroying_tx"] = finding.destruction->destroying_tx.to_string();
        evidence["destruction_block"] = finding.destruction->block_number;
        evidence["refund_to"] = finding.destruction->refund_to.to_string();
    }
    if (finding.parity) {
        evidence["verdict"] = finding.parity->verdict;
        evidence["cbc_locked_by_analysis"] = finding.parity->cbc_locked;
        evidence["truncated"] = finding.parity->truncated;
        evidence["call_sites"] = finding.parity->call_sites;
    }
    if (finding.creation) {
        evidence["creation_tx"] = finding.creation->creation_tx.to_string();
        evidence["failure_block"] = finding.creation->block_number;
        evidence["error"] = finding.creation->error;
        evidence["post_failure_inbound"] = finding.creation->post_failure_inbound;
    }
    j["evidence"] = std::move(evidence);
    if (!finding.annotations.empty()) j["annotations"] = finding.annotations;
    return j;
}

}  // namespace

Json report_to_json(const LockedReport& report) {
    Json j;
    j["version"] = report.version;
    j["generated_at"] = report.generated_at;
    j["prices_as_of"] = report.prices_as_of;
    Json categories = Json::object();
    for (const auto& [category, body] : report.categories) {
        Json c;
        c["candidates"] = body.candidates;
        Json findings = Json::array();
        for (const auto& finding : body.findings)
            findings.push_back(finding_to_json(finding, report.eth_usd_price));
        c["findings"] = std::move(findings);
        c["eth_usd"] = body.eth_usd.to_fixed(2);
        c["cbc_usd"] = body.cbc_usd.to_fixed(2);
        categories[to_string(category)] = std::move(c);
    }
    j["categories"] = std::move(categories);
    j["grand_total_usd"] = report.grand_total_usd.to_fixed(2);
    Json diagnostics;
    diagnostics["warnings"] = report.warnings;
    diagnostics["notes"] = report.notes;
    Json counters = Json::object();
    for (const auto& [key, count] : report.counters) counters[key] = count;
    diagnostics["counters"] = std::move(counters);
    j["diagnostics"] = std::move(diagnostics);
    return j;
}

std::string report_to_csv(const LockedReport& report) {
    std::ostringstream out;
    out << "category,account,eth_locked_wei,eth_locked_eth,cbc_usd,first_lock_block\n";
    for (const auto& [category, body] : report.categories) {
        for (const auto& finding : body.findings) {
            Decimal cbc_total;
            for (const auto& token : finding.cbc_locked) cbc_total += token.usd_value;
            out << to_string(category) << ',' << finding.account.to_string() << ','
                << finding.eth_locked.convert_to<std::string>() << ','
                << wei_to_eth(finding.eth_locked).to_string() << ',' << cbc_total.to_fixed(2)
                << ',' << finding.first_lock_block << '\n';
        }
    }
    return out.str();
}

std::string render_report_summary(const LockedReport& report) {
    std::ostringstream out;
    for (const auto& [category, body] : report.categories) {
        out << to_string(category) << ": " << body.candidates << " candidates, "
            << body.findings.size() << " findings, ETH " << body.eth_usd.to_fixed(2)
            << "$, CBC " << body.cbc_usd.to_fixed(2) << "$\n";
    }
    out << "total locked value: " << report.grand_total_usd.to_fixed(2) << "$\n";
    return out.str();
}

}  // namespace clue
