// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <clue/findings.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace clue {

/// Deterministic fixture scenarios. Same (kind, seed) yields byte-identical
/// output directories.
struct Scenario {
    enum class Kind {
        destructed_basic,    // n contracts destructed, a funded subset
        destructed_mass,     // one transaction destructing n child contracts
        destructed_redeploy, // a destructed-then-redeployed contract
        parity_wallet,       // one wallet delegating to a destructed library
        parity_decoy,        // pattern-matching accounts that do not confirm
        creation_failure,    // failed creation followed by post_calls deposits
        mixed,               // all three categories in one fixture
        paper_shaped,        // category counts and USD totals at report scale
    };

    Kind kind = Kind::destructed_basic;
    uint64_t seed = 1;
    uint32_t n = 0;          // destructed_basic / destructed_mass size (0 = default)
    bool funded = true;      // parity_wallet
    uint32_t post_calls = 3; // creation_failure deposits
};

std::string to_string(Scenario::Kind kind);
std::optional<Scenario::Kind> scenario_kind_from_string(std::string_view text);

struct CategoryExpectation {
    uint64_t candidates = 0;
    std::vector<Address> findings;  // sorted by address
    std::optional<std::string> eth_usd;
    std::optional<std::string> cbc_usd;
};

/// Ground truth for a generated fixture, written to manifest.json.
struct FixtureManifest {
    std::string scenario;
    uint64_t seed = 0;
    std::optional<Address> library_address;
    std::optional<uint64_t> attack_block;
    std::map<Category, CategoryExpectation> expected;
    std::map<std::string, uint64_t> counters;
    std::optional<std::string> expected_grand_total_usd;
};

/// Writes a complete fixture directory (accounts, transactions, traces,
/// token data) plus prices.json and manifest.json sidecars.
FixtureManifest generate(const Scenario& scenario, const std::string& out_dir);

FixtureManifest load_manifest(const std::string& fixture_dir);

/// Cross-file consistency diagnostics; empty means the fixture is valid.
std::vector<std::string> validate_fixture(const std::string& fixture_dir);

}  // namespace clue
