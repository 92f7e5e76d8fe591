// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#include <clue/run.hpp>
#include <clue/synthchain.hpp>

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace clue;
namespace fs = std::filesystem;

namespace {

struct Generated {
    fs::path dir;
    FixtureManifest manifest;
};

Generated make_fixture(Scenario::Kind kind, uint64_t seed = 41) {
    Generated g;
    g.dir = fs::temp_directory_path() / ("clue_run_" + to_string(kind) + std::to_string(seed));
    fs::remove_all(g.dir);
    Scenario scenario;
    scenario.kind = kind;
    scenario.seed = seed;
    g.manifest = generate(scenario, g.dir.string());
    return g;
}

RunConfig base_config(const Generated& g) {
    RunConfig config;
    config.fixture_dir = g.dir.string();
    config.prices_path = (g.dir / "prices.json").string();
    config.detectors = {Category::destructed, Category::attacked_parity,
                        Category::creation_failure};
    config.parity_library = g.manifest.library_address;
    config.parity_attack_block = g.manifest.attack_block;
    config.timestamp = "2020-09-15T00:00:00Z";
    return config;
}

}  // namespace

TEST_CASE("run over the mixed fixture matches the manifest") {
    const auto g = make_fixture(Scenario::Kind::mixed);
    const LockedReport report = run(base_config(g));
    for (const auto& [category, expectation] : g.manifest.expected) {
        REQUIRE(report.categories.count(category) == 1);
        const auto& body = report.categories.at(category);
        CHECK(body.candidates == expectation.candidates);
        REQUIRE(body.findings.size() == expectation.findings.size());
        for (size_t i = 0; i < body.findings.size(); ++i)
            CHECK(body.findings[i].account == expectation.findings[i]);
    }
    CHECK(report.generated_at == "2020-09-15T00:00:00Z");
}

TEST_CASE("selecting detectors separately merges to the combined run") {
    const auto g = make_fixture(Scenario::Kind::mixed, 43);
    const LockedReport combined = run(base_config(g));

    Decimal merged_total;
    for (const Category category :
         {Category::destructed, Category::attacked_parity, Category::creation_failure}) {
        RunConfig config = base_config(g);
        config.detectors = {category};
        const LockedReport single = run(config);
        REQUIRE(single.categories.count(category) == 1);
        const auto& single_body = single.categories.at(category);
        const auto& combined_body = combined.categories.at(category);
        CHECK(single_body.candidates == combined_body.candidates);
        CHECK(single_body.findings.size() == combined_body.findings.size());
        merged_total += single_body.eth_usd + single_body.cbc_usd;
    }
    CHECK(merged_total == combined.grand_total_usd);
}

TEST_CASE("config validation errors") {
    RunConfig config;
    CHECK_THROWS_AS(run(config), ConfigError);  // no detector

    config.detectors = {Category::destructed};
    CHECK_THROWS_AS(run(config), ConfigError);  // no source

    const auto g = make_fixture(Scenario::Kind::destructed_basic, 44);
    config.fixture_dir = g.dir.string();
    CHECK_THROWS_AS(run(config), ConfigError);  // no prices

    config.prices_path = (g.dir / "prices.json").string();
    config.rpc_url = "http://localhost:1";  // both sources set
    CHECK_THROWS_AS(run(config), ConfigError);

    config.rpc_url.reset();
    config.detectors = {Category::attacked_parity};
    config.parity_library.reset();
    CHECK_THROWS_AS(run(config), ConfigError);  // parity without library
}

TEST_CASE("malformed price file raises ConfigError naming the file") {
    const auto g = make_fixture(Scenario::Kind::destructed_basic, 45);
    const fs::path bad = g.dir / "bad_prices.json";
    {
        std::ofstream out(bad);
        out << "{ not json";
    }
    RunConfig config = base_config(g);
    config.detectors = {Category::destructed};
    config.prices_path = bad.string();
    try {
        run(config);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("bad_prices.json") != std::string::npos);
    }
}

TEST_CASE("report json is byte-identical across parallelism levels") {
    const auto g = make_fixture(Scenario::Kind::mixed, 46);
    RunConfig serial = base_config(g);
    serial.parallelism = 1;
    RunConfig parallel = base_config(g);
    parallel.parallelism = 8;
    const std::string a = report_to_json(run(serial)).dump(2);
    const std::string b = report_to_json(run(parallel)).dump(2);
    CHECK(a == b);
}

TEST_CASE("config file parsing and precedence") {
    const fs::path path = fs::temp_directory_path() / "clue_settings.conf";
    {
        std::ofstream out(path);
        out << "# comment line\n";
        out << "parity.library_address = 0x1111111111111111111111111111111111111111\n";
        out << "prices = /from/config.json\n";
        out << "\n";
    }
    const auto file_settings = parse_config_file(path.string());
    CHECK(file_settings.at("prices") == "/from/config.json");

    const Settings settings({{"prices", "/from/flag.json"}}, file_settings,
                            {{"source.rpc_url", "http://from-env"}});
    CHECK(settings.get("prices") == "/from/flag.json");             // flag beats config
    CHECK(settings.get("parity.library_address") ==
          "0x1111111111111111111111111111111111111111");            // config visible
    CHECK(settings.get("source.rpc_url") == "http://from-env");     // env as fallback
    CHECK_FALSE(settings.get("unknown.key").has_value());

    const RunConfig config =
        resolve_run_config(settings, {Category::destructed});
    CHECK(config.prices_path == "/from/flag.json");
    CHECK(config.rpc_url == "http://from-env");
    CHECK(config.parity_library ==
          Address::parse("0x1111111111111111111111111111111111111111"));

    const fs::path missing = fs::temp_directory_path() / "clue_missing.conf";
    CHECK_THROWS_AS(parse_config_file(missing.string()), ConfigError);
    {
        std::ofstream out(path);
        out << "no equals sign here\n";
    }
    CHECK_THROWS_AS(parse_config_file(path.string()), ConfigError);
}

TEST_CASE("write_report_outputs produces files and a summary") {
    const auto g = make_fixture(Scenario::Kind::destructed_basic, 47);
    RunConfig config = base_config(g);
    config.detectors = {Category::destructed};
    config.out_json = (g.dir / "report.json").string();
    config.out_csv = (g.dir / "report.csv").string();
    const LockedReport report = run(config);
    const std::string summary = write_report_outputs(report, config);
    CHECK(summary.find("destructed:") != std::string::npos);
    CHECK(fs::exists(g.dir / "report.json"));
    CHECK(fs::exists(g.dir / "report.csv"));
    std::ifstream in(g.dir / "report.json");
    Json parsed;
    in >> parsed;
    CHECK(parsed["categories"]["destructed"]["findings"].size() == report.categories.at(Category::destructed).findings.size());
}
