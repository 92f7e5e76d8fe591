// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#include <clue/detect_destructed.hpp>
#include <clue/detect_eoa.hpp>
#include <clue/run.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace clue {

namespace {

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        size_t start = line.find_first_not_of(' ');
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        lines.push_back(line.substr(start));
    }
    return lines;
}

}  // namespace

LockedReport run(const RunConfig& config) {
    if (config.detectors.empty()) throw ConfigError("no detector selected");
    if (config.fixture_dir.has_value() == config.rpc_url.has_value())
        throw ConfigError("exactly one of --fixture and --rpc must be given");
    if (config.prices_path.empty()) throw ConfigError("a price table is required (--prices)");

    const PriceTable prices = PriceTable::load(config.prices_path);

    std::unique_ptr<ChainSource> source;
    if (config.fixture_dir)
        source = open_fixture_source(*config.fixture_dir);
    else
        source = open_rpc_source(*config.rpc_url, config.rpc_options);

    DetectorOptions options;
    options.parallelism = std::max(1u, config.parallelism);
    options.token_universe = prices.token_universe();
    if (config.candidates_path) {
        std::vector<Address> candidates;
        for (const auto& line : read_lines(*config.candidates_path))
            candidates.push_back(Address::parse(line));
        options.account_scope = std::move(candidates);
    }
    if (config.tx_list_path) {
        std::vector<Hash32> hashes;
        for (const auto& line : read_lines(*config.tx_list_path))
            hashes.push_back(Hash32::parse(line));
        options.tx_scope = std::move(hashes);
    }

    std::vector<PipelineResult> results;
    if (config.detectors.count(Category::destructed))
        results.push_back(run_destructed_pipeline(*source, options));
    if (config.detectors.count(Category::attacked_parity)) {
        if (!config.parity_library)
            throw ConfigError("parity detector requires --library (or parity.library_address)");
        ParityConfig parity;
        parity.library_address = *config.parity_library;
        parity.attack_block = config.parity_attack_block.value_or(0);
        parity.exec = config.exec;
        results.push_back(run_parity_pipeline(*source, parity, options));
    }
    if (config.detectors.count(Category::creation_failure))
        results.push_back(run_eoa_pipeline(*source, options));

    LockedReport report = build_report(results, prices);
    report.generated_at = config.timestamp.value_or(current_utc_timestamp());
    return report;
}

std::string write_report_outputs(const LockedReport& report, const RunConfig& config) {
    const std::string json_text = report_to_json(report).dump(2) + "\n";
    bool json_to_stdout = false;
    if (config.out_json) {
        if (*config.out_json == "-") {
            std::cout << json_text;
            json_to_stdout = true;
        } else {
            std::ofstream out(*config.out_json);
            if (!out) throw Error("cannot write " + *config.out_json);
            out << json_text;
        }
    }
    if (config.out_csv) {
        std::ofstream out(*config.out_csv);
        if (!out) throw Error("cannot write " + *config.out_csv);
        out << report_to_csv(report);
    }
    return json_to_stdout ? std::string() : render_report_summary(report);
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::map<std::string, std::string> out;
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::string line;
    size_t line_no = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty())
            throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key");
        out[key] = value;
    }
    return out;
}

Settings::Settings(std::map<std::string, std::string> flags,
                   std::map<std::string, std::string> file,
                   std::map<std::string, std::string> env)
    : flags_(std::move(flags)), file_(std::move(file)), env_(std::move(env)) {}

std::optional<std::string> Settings::get(const std::string& key) const {
    for (const auto* layer : {&flags_, &file_, &env_}) {
        const auto it = layer->find(key);
        if (it != layer->end()) return it->second;
    }
    return std::nullopt;
}

RunConfig resolve_run_config(const Settings& settings, const std::set<Category>& detectors) {
    RunConfig config;
    config.detectors = detectors;
    config.fixture_dir = settings.get("source.fixture");
    config.rpc_url = settings.get("source.rpc_url");
    if (const auto v = settings.get("rpc.timeout_seconds"))
        config.rpc_options.timeout_seconds = std::stod(*v);
    if (const auto v = settings.get("rpc.retry_count"))
        config.rpc_options.retry_count = static_cast<unsigned>(parse_dec_u64(*v));
    if (const auto v = settings.get("rpc.rate_limit_per_second"))
        config.rpc_options.rate_limit_per_second = std::stod(*v);
    if (const auto v = settings.get("parity.library_address"))
        config.parity_library = Address::parse(*v);
    if (const auto v = settings.get("parity.attack_block"))
        config.parity_attack_block = parse_dec_u64(*v);
    if (const auto v = settings.get("exec.max_paths"))
        config.exec.max_paths = static_cast<uint32_t>(parse_dec_u64(*v));
    if (const auto v = settings.get("exec.max_steps_per_path"))
        config.exec.max_steps_per_path = static_cast<uint32_t>(parse_dec_u64(*v));
    if (const auto v = settings.get("exec.max_loop_iterations"))
        config.exec.max_loop_iterations = static_cast<uint32_t>(parse_dec_u64(*v));
    if (const auto v = settings.get("prices")) config.prices_path = *v;
    config.out_json = settings.get("output.json");
    config.out_csv = settings.get("output.csv");
    if (const auto v = settings.get("parallelism"))
        config.parallelism = static_cast<unsigned>(parse_dec_u64(*v));
    config.timestamp = settings.get("timestamp");
    config.candidates_path = settings.get("candidates");
    config.tx_list_path = settings.get("tx_list");
    return config;
}

std::string current_utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace clue
