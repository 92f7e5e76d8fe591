// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <clue/detect_parity.hpp>
#include <clue/rpc_source.hpp>
#include <clue/valuation.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>

namespace clue {

struct RunConfig {
    std::optional<std::string> fixture_dir;
    std::optional<std::string> rpc_url;
    RpcOptions rpc_options;
    std::set<Category> detectors;
    std::optional<Address> parity_library;
    std::optional<uint64_t> parity_attack_block;
    ExecConfig exec;
    std::string prices_path;
    std::optional<std::string> out_json;  // "-" = stdout
    std::optional<std::string> out_csv;
    unsigned parallelism = 1;
    std::optional<std::string> timestamp;             // injectable generated_at
    std::optional<std::string> candidates_path;       // rpc: address per line
    std::optional<std::string> tx_list_path;          // rpc: tx hash per line
};

/// Executes the selected pipelines against the configured source, values
/// the findings, and returns the aggregated report. Throws ConfigError on
/// invalid configuration and Error subclasses on source failures.
LockedReport run(const RunConfig& config);

/// Writes --out / --csv files and returns the human summary for stdout
/// (empty when the report itself went to stdout).
std::string write_report_outputs(const LockedReport& report, const RunConfig& config);

/// Key-value configuration file: one `key = value` per line, '#' comments.
std::map<std::string, std::string> parse_config_file(const std::string& path);

/// Layered lookup honoring precedence: flags over config file over
/// environment.
class Settings {
public:
    Settings(std::map<std::string, std::string> flags, std::map<std::string, std::string> file,
             std::map<std::string, std::string> env);

    std::optional<std::string> get(const std::string& key) const;

private:
    std::map<std::string, std::string> flags_, file_, env_;
};

/// Builds a RunConfig from layered settings; `detectors` comes from the CLI
/// subcommand argument.
RunConfig resolve_run_config(const Settings& settings, const std::set<Category>& detectors);

std::string current_utc_timestamp();

}  // namespace clue
