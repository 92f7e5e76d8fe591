// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#include <clue/detect_destructed.hpp>
#include <clue/detect_eoa.hpp>
#include <clue/detect_parity.hpp>
#include <clue/synthchain.hpp>

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

using namespace clue;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("clue_detect_" + tag);
    fs::remove_all(dir);
    return dir;
}

struct Fixture {
    FixtureManifest manifest;
    std::unique_ptr<ChainSource> source;
};

Fixture make(Scenario::Kind kind, uint64_t seed = 11, uint32_t n = 0, bool funded = true) {
    const auto dir = scratch_dir(to_string(kind) + "_" + std::to_string(seed) + "_" +
                                 std::to_string(n) + (funded ? "" : "_unfunded"));
    Scenario scenario;
    scenario.kind = kind;
    scenario.seed = seed;
    scenario.n = n;
    scenario.funded = funded;
    Fixture fixture;
    fixture.manifest = generate(scenario, dir.string());
    fixture.source = open_fixture_source(dir.string());
    return fixture;
}

std::vector<Address> finding_addresses(const PipelineResult& result) {
    std::vector<Address> out;
    for (const auto& finding : result.findings) out.push_back(finding.account);
    return out;
}

ParityConfig parity_config(const FixtureManifest& manifest) {
    ParityConfig config;
    config.library_address = manifest.library_address.value();
    config.attack_block = manifest.attack_block.value();
    return config;
}

}  // namespace

TEST_CASE("destructed_basic: candidates and findings match the manifest") {
    const auto fixture = make(Scenario::Kind::destructed_basic);
    const auto result = run_destructed_pipeline(*fixture.source);
    const auto& expected = fixture.manifest.expected.at(Category::destructed);
    CHECK(result.candidates.size() == expected.candidates);
    CHECK(finding_addresses(result) == expected.findings);
    CHECK(result.counters.at("findings") <= result.counters.at("candidates"));
}

TEST_CASE("destructed showcase account carries the 208 ETH evidence") {
    const auto fixture = make(Scenario::Kind::destructed_basic);
    const auto result = run_destructed_pipeline(*fixture.source);
    const Address showcase = Address::parse("0x97ec9bfb0f6672c358620615a1e4de0348aea05c");
    const auto it = std::find_if(result.findings.begin(), result.findings.end(),
                                 [&](const Finding& f) { return f.account == showcase; });
    REQUIRE(it != result.findings.end());
    CHECK(wei_to_eth(it->eth_locked).to_string() == "208");
    REQUIRE(it->destruction.has_value());
    CHECK(it->destruction->contract == showcase);
    // The pre-destruction approval is annotated, not excluded.
    CHECK(std::find(it->annotations.begin(), it->annotations.end(), "prior_approval_detected") !=
          it->annotations.end());
}

TEST_CASE("scan_traces_for_selfdestruct counts mass destructions") {
    const auto fixture = make(Scenario::Kind::destructed_mass, 7, 50);
    const auto scan =
        scan_traces_for_selfdestruct(*fixture.source, fixture.source->list_all_tx_hashes());
    CHECK(scan.events.size() == 50);
    CHECK(scan.warnings.empty());
}

TEST_CASE("scan tolerates missing traces with a warning") {
    const auto fixture = make(Scenario::Kind::destructed_basic, 12);
    std::vector<Hash32> hashes = fixture.source->list_all_tx_hashes();
    hashes.push_back(Hash32::parse("0x" + std::string(64, 'e')));  // unknown
    const auto scan = scan_traces_for_selfdestruct(*fixture.source, hashes);
    REQUIRE(scan.warnings.size() == 1);
    CHECK(scan.warnings[0].find(std::string(64, 'e')) != std::string::npos);
}

TEST_CASE("redeployed contract is a candidate but never a finding") {
    const auto fixture = make(Scenario::Kind::destructed_redeploy);
    const auto result = run_destructed_pipeline(*fixture.source);
    const auto& expected = fixture.manifest.expected.at(Category::destructed);
    CHECK(result.candidates.size() == 3);
    CHECK(finding_addresses(result) == expected.findings);
    CHECK(result.findings.size() == 1);
}

TEST_CASE("zero-value destructed contract is filtered") {
    const auto fixture = make(Scenario::Kind::destructed_mass, 9, 10);
    const auto scan =
        scan_traces_for_selfdestruct(*fixture.source, fixture.source->list_all_tx_hashes());
    size_t findings = 0;
    for (const auto& event : scan.events)
        if (confirm_locked_destructed(*fixture.source, event)) ++findings;
    CHECK(findings == fixture.manifest.expected.at(Category::destructed).findings.size());
}

TEST_CASE("empty scope yields an empty result") {
    const auto fixture = make(Scenario::Kind::destructed_basic, 21);
    DetectorOptions options;
    options.tx_scope = std::vector<Hash32>{};
    const auto result = run_destructed_pipeline(*fixture.source, options);
    CHECK(result.candidates.empty());
    CHECK(result.findings.empty());
}

TEST_CASE("parity wallet scenario confirms the showcase wallet") {
    const auto fixture = make(Scenario::Kind::parity_wallet);
    const auto result = run_parity_pipeline(*fixture.source, parity_config(fixture.manifest));
    REQUIRE(result.findings.size() == 1);
    const Finding& finding = result.findings[0];
    CHECK(finding.account == Address::parse("0x0da3cb3046f72fcbb49edf01b04ab6efc6c0d8dc"));
    CHECK(wei_to_eth(finding.eth_locked).to_string() == "2576.35");
    REQUIRE(finding.parity.has_value());
    CHECK(finding.parity->verdict == "confirmed");
    CHECK(finding.parity->cbc_locked);
    REQUIRE(finding.cbc_locked.size() == 1);
    CHECK(finding.cbc_locked[0].raw_amount == 209);
}

TEST_CASE("unfunded parity wallet is a candidate only") {
    const auto fixture = make(Scenario::Kind::parity_wallet, 11, 0, /*funded=*/false);
    const auto result = run_parity_pipeline(*fixture.source, parity_config(fixture.manifest));
    CHECK(result.candidates.size() == 1);
    CHECK(result.findings.empty());
}

TEST_CASE("decoys screen positive but never confirm") {
    const auto fixture = make(Scenario::Kind::parity_decoy);
    const auto result = run_parity_pipeline(*fixture.source, parity_config(fixture.manifest));
    CHECK(result.candidates.size() == 3);
    CHECK(result.findings.empty());
    // Verdicts land in the notes, not silently dropped.
    size_t verdict_notes = 0;
    for (const auto& note : result.notes)
        if (note.find("verdict=") != std::string::npos) ++verdict_notes;
    CHECK(verdict_notes == 3);
}

TEST_CASE("a live library downgrades findings to warnings") {
    const auto dir = scratch_dir("parity_live_lib");
    Scenario scenario;
    scenario.kind = Scenario::Kind::parity_wallet;
    scenario.seed = 11;
    const auto manifest = generate(scenario, dir.string());

    // Give the library live code again by editing the fixture.
    {
        Json accounts;
        {
            std::ifstream in(dir / "accounts.json");
            in >> accounts;
        }
        Json entry;
        entry["address"] = manifest.library_address->to_string();
        entry["nonce"] = "1";
        entry["balance"] = "0";
        entry["code"] = "0x6001600101";
        accounts.push_back(entry);
        std::ofstream out(dir / "accounts.json");
        out << accounts.dump(2) << '\n';
    }
    const auto source = open_fixture_source(dir.string());
    const auto result = run_parity_pipeline(*source, parity_config(manifest));
    CHECK(result.findings.empty());
    CHECK(result.counters.at("library_destructed") == 0);
    bool downgraded = false;
    for (const auto& warning : result.warnings)
        if (warning.find("downgraded") != std::string::npos) downgraded = true;
    CHECK(downgraded);
}

TEST_CASE("parity findings re-derive their verdict from stored bytecode") {
    const auto fixture = make(Scenario::Kind::mixed, 29);
    const auto config = parity_config(fixture.manifest);
    const auto result = run_parity_pipeline(*fixture.source, config);
    REQUIRE_FALSE(result.findings.empty());
    for (const auto& finding : result.findings) {
        const Program program = disassemble(fixture.source->get_code(finding.account));
        CHECK(screen_hardcoded(program, config.library_address));  // screen completeness
        const ExecutionReport report = execute(program, config.exec);
        CHECK(resolve_delegate_target(report, config.library_address) == Verdict::confirmed);
    }
}

TEST_CASE("parity findings are invariant under account stream permutation") {
    const auto fixture = make(Scenario::Kind::mixed, 5);
    std::vector<AccountState> accounts;
    fixture.source->list_all_accounts([&](const AccountState& a) { accounts.push_back(a); });

    DetectorOptions forward;
    std::vector<Address> reversed_scope;
    for (auto it = accounts.rbegin(); it != accounts.rend(); ++it)
        reversed_scope.push_back(it->address);
    DetectorOptions reversed;
    reversed.account_scope = reversed_scope;

    const auto config = parity_config(fixture.manifest);
    const auto result1 = run_parity_pipeline(*fixture.source, config, forward);
    const auto result2 = run_parity_pipeline(*fixture.source, config, reversed);
    CHECK(finding_addresses(result1) == finding_addresses(result2));
    CHECK(result1.candidates == result2.candidates);
}

TEST_CASE("a zero library address is a configuration error") {
    const auto fixture = make(Scenario::Kind::parity_wallet, 13);
    ParityConfig config;  // library left zero
    CHECK_THROWS_AS(run_parity_pipeline(*fixture.source, config), ConfigError);
}

TEST_CASE("successful creation later destructed stays out of the eoa detector") {
    const auto fixture = make(Scenario::Kind::destructed_basic, 37);
    // The scenario's second contract was deployed successfully before its
    // destruction; despite being funded, nonce 0 and code-less now, its
    // oldest transaction is a healthy creation.
    const auto eoa = run_eoa_pipeline(*fixture.source);
    CHECK(eoa.candidates.empty());
    CHECK(eoa.findings.empty());
    // It still belongs to the destructed detector.
    const auto destructed = run_destructed_pipeline(*fixture.source);
    CHECK(destructed.findings.size() ==
          fixture.manifest.expected.at(Category::destructed).findings.size());
}

TEST_CASE("filter_sensitive_eoas is a pure state predicate") {
    const Address a = Address::parse("0x" + std::string(40, '1'));
    const Address b = Address::parse("0x" + std::string(40, '2'));
    const Address c = Address::parse("0x" + std::string(40, '3'));
    std::vector<AccountState> accounts{
        {a, 0, 5, {}},            // sensitive
        {b, 3, 5, {}},            // sent transactions
        {c, 0, 5, {0x60, 0x01}},  // holds code
    };
    const auto sensitive = filter_sensitive_eoas(accounts);
    REQUIRE(sensitive.size() == 1);
    CHECK(sensitive[0].address == a);
}

TEST_CASE("creation_failure scenario finds the 19 ETH account") {
    const auto fixture = make(Scenario::Kind::creation_failure);
    const auto result = run_eoa_pipeline(*fixture.source);
    const auto& expected = fixture.manifest.expected.at(Category::creation_failure);
    CHECK(result.candidates.size() == expected.candidates);
    CHECK(finding_addresses(result) == expected.findings);
    REQUIRE(result.findings.size() == 1);
    const Finding& finding = result.findings[0];
    CHECK(finding.account == Address::parse("0x5488b0a000843dc54b0e541dfb75c2927f92adc8"));
    CHECK(wei_to_eth(finding.eth_locked).to_string() == "19");
    REQUIRE(finding.creation.has_value());
    CHECK(finding.creation->error == "out of gas");
    CHECK(finding.creation->post_failure_inbound == 3);
    CHECK(result.counters.at("unexplained_sensitive") == 1);
}

TEST_CASE("check_creation_failure rejects ordinary transfers and successes") {
    const auto fixture = make(Scenario::Kind::mixed, 31);
    std::vector<AccountState> accounts;
    fixture.source->list_all_accounts([&](const AccountState& a) { accounts.push_back(a); });
    // Pick a destructed-finding account: its oldest tx is the destruct call,
    // not a failed creation, and it must not cross into the EOA detector.
    const auto destructed = fixture.manifest.expected.at(Category::destructed).findings;
    REQUIRE_FALSE(destructed.empty());
    const SensitiveEoa eoa{destructed[0], fixture.source->get_account_state(destructed[0])};
    CHECK_FALSE(check_creation_failure(*fixture.source, eoa).has_value());
}

TEST_CASE("pipelines partition findings across categories") {
    const auto fixture = make(Scenario::Kind::mixed, 17);
    const auto destructed = run_destructed_pipeline(*fixture.source);
    const auto parity =
        run_parity_pipeline(*fixture.source, parity_config(fixture.manifest));
    const auto eoa = run_eoa_pipeline(*fixture.source);

    std::set<Address> seen;
    size_t total = 0;
    for (const auto* result : {&destructed, &parity, &eoa}) {
        for (const auto& finding : result->findings) {
            seen.insert(finding.account);
            ++total;
        }
    }
    CHECK(seen.size() == total);  // no account in more than one category
}

TEST_CASE("mixed scenario matches per-category manifest expectations") {
    const auto fixture = make(Scenario::Kind::mixed, 17);
    const auto destructed = run_destructed_pipeline(*fixture.source);
    const auto parity = run_parity_pipeline(*fixture.source, parity_config(fixture.manifest));
    const auto eoa = run_eoa_pipeline(*fixture.source);
    CHECK(destructed.candidates.size() ==
          fixture.manifest.expected.at(Category::destructed).candidates);
    CHECK(finding_addresses(destructed) ==
          fixture.manifest.expected.at(Category::destructed).findings);
    CHECK(parity.candidates.size() ==
          fixture.manifest.expected.at(Category::attacked_parity).candidates);
    CHECK(finding_addresses(parity) ==
          fixture.manifest.expected.at(Category::attacked_parity).findings);
    CHECK(eoa.candidates.size() ==
          fixture.manifest.expected.at(Category::creation_failure).candidates);
    CHECK(finding_addresses(eoa) ==
          fixture.manifest.expected.at(Category::creation_failure).findings);
}

TEST_CASE("parallel execution produces identical findings") {
    const auto fixture = make(Scenario::Kind::mixed, 23);
    DetectorOptions serial;
    DetectorOptions parallel;
    parallel.parallelism = 8;
    const auto config = parity_config(fixture.manifest);
    CHECK(finding_addresses(run_destructed_pipeline(*fixture.source, serial)) ==
          finding_addresses(run_destructed_pipeline(*fixture.source, parallel)));
    CHECK(finding_addresses(run_parity_pipeline(*fixture.source, config, serial)) ==
          finding_addresses(run_parity_pipeline(*fixture.source, config, parallel)));
    CHECK(finding_addresses(run_eoa_pipeline(*fixture.source, serial)) ==
          finding_addresses(run_eoa_pipeline(*fixture.source, parallel)));
}
