// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#include <clue/disasm.hpp>
#include <clue/run.hpp>
#include <clue/symexec.hpp>
#include <clue/synthchain.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace clue;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfra = 3;

std::vector<uint8_t> read_bytecode_arg(const std::string& input) {
    if (input.rfind("0x", 0) == 0 || input.rfind("0X", 0) == 0) return from_hex(input);
    std::ifstream in(input);
    if (!in) throw ConfigError("cannot open bytecode file " + input);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
        text.pop_back();
    return from_hex(text);
}

int cmd_disasm(const std::string& input) {
    const Program program = disassemble(read_bytecode_arg(input));
    for (const auto& ins : program.instructions) std::cout << format_instruction(ins) << "\n";
    return kExitOk;
}

int cmd_symexec(const std::string& input, const std::string& library_text,
                const ExecConfig& exec) {
    const Program program = disassemble(read_bytecode_arg(input));
    const ExecutionReport report = execute(program, exec);
    for (const auto& site : report.call_sites) std::cout << format_call_site(site) << "\n";
    std::cout << "paths_explored=" << report.paths_explored
              << " truncated=" << (report.truncated ? "true" : "false") << "\n";
    if (!library_text.empty()) {
        const Address library = Address::parse(library_text);
        const Verdict verdict = resolve_delegate_target(report, library);
        std::cout << "verdict=" << to_string(verdict);
        if (verdict == Verdict::confirmed)
            std::cout << " cbc_locked=" << (cbc_lock_check(report, library) ? "true" : "false");
        std::cout << "\n";
    }
    return kExitOk;
}

int cmd_fixture_generate(const Scenario& scenario, const std::string& out_dir) {
    const FixtureManifest manifest = generate(scenario, out_dir);
    std::cerr << "generated " << manifest.scenario << " fixture (seed " << manifest.seed
              << ") in " << out_dir << "\n";
    return kExitOk;
}

int cmd_fixture_validate(const std::string& dir) {
    const auto diagnostics = validate_fixture(dir);
    for (const auto& d : diagnostics) std::cout << d << "\n";
    if (diagnostics.empty()) {
        std::cerr << "fixture valid\n";
        return kExitOk;
    }
    std::cerr << diagnostics.size() << " problem(s) found\n";
    return 1;
}

std::map<std::string, std::string> environment_settings() {
    std::map<std::string, std::string> env;
    if (const char* url = std::getenv("CLUE_RPC_URL")) env["source.rpc_url"] = url;
    return env;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"clue - locked cryptocurrency detector"};
    app.require_subcommand(1);

    // disasm
    std::string disasm_input;
    auto* disasm_cmd = app.add_subcommand("disasm", "disassemble EVM bytecode");
    disasm_cmd->add_option("input", disasm_input, "hex file or 0x-prefixed literal")->required();

    // symexec
    std::string symexec_input;
    std::string symexec_library;
    ExecConfig symexec_exec;
    auto* symexec_cmd = app.add_subcommand("symexec", "resolve external-call targets");
    symexec_cmd->add_option("input", symexec_input, "hex file or 0x-prefixed literal")->required();
    symexec_cmd->add_option("--library", symexec_library, "library address to classify against");
    symexec_cmd->add_option("--max-paths", symexec_exec.max_paths);
    symexec_cmd->add_option("--max-steps", symexec_exec.max_steps_per_path);
    symexec_cmd->add_option("--max-loops", symexec_exec.max_loop_iterations);

    // fixture generate/validate
    auto* fixture_cmd = app.add_subcommand("fixture", "fixture tooling");
    fixture_cmd->require_subcommand(1);
    std::string kind_text = "destructed_basic";
    Scenario scenario;
    std::string fixture_out;
    bool unfunded = false;
    auto* generate_cmd = fixture_cmd->add_subcommand("generate", "write a scenario fixture");
    generate_cmd->add_option("--kind", kind_text, "scenario kind")->required();
    generate_cmd->add_option("--seed", scenario.seed, "deterministic seed");
    generate_cmd->add_option("--n", scenario.n, "scenario size parameter");
    generate_cmd->add_flag("--unfunded", unfunded, "parity_wallet: leave the wallet empty");
    generate_cmd->add_option("--post-calls", scenario.post_calls,
                             "creation_failure: deposits after the failure");
    generate_cmd->add_option("--out", fixture_out, "output directory")->required();
    std::string validate_dir;
    auto* validate_cmd = fixture_cmd->add_subcommand("validate", "check fixture consistency");
    validate_cmd->add_option("dir", validate_dir, "fixture directory")->required();

    // detect
    auto* detect_cmd = app.add_subcommand("detect", "run detection pipelines");
    std::string which;
    detect_cmd->add_option("detector", which, "destructed|parity|eoa|all")->required();
    std::map<std::string, std::string> flags;
    std::string config_path;
    auto flag_opt = [&](const char* name, const char* key, const char* help) {
        detect_cmd->add_option_function<std::string>(
            name, [&flags, key](const std::string& v) { flags[key] = v; }, help);
    };
    flag_opt("--fixture", "source.fixture", "fixture directory");
    flag_opt("--rpc", "source.rpc_url", "JSON-RPC endpoint URL");
    flag_opt("--prices", "prices", "price table JSON file");
    flag_opt("--library", "parity.library_address", "destroyed library address");
    flag_opt("--attack-block", "parity.attack_block", "library destruction block");
    flag_opt("--out", "output.json", "report JSON path ('-' for stdout)");
    flag_opt("--csv", "output.csv", "per-finding CSV path");
    flag_opt("--parallelism", "parallelism", "worker count");
    flag_opt("--timestamp", "timestamp", "fixed generated_at value");
    flag_opt("--candidates", "candidates", "file with one candidate address per line (rpc)");
    flag_opt("--tx-list", "tx_list", "file with one transaction hash per line (rpc)");
    detect_cmd->add_option("--config", config_path, "key=value configuration file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (disasm_cmd->parsed()) return cmd_disasm(disasm_input);
        if (symexec_cmd->parsed()) return cmd_symexec(symexec_input, symexec_library, symexec_exec);
        if (fixture_cmd->parsed()) {
            if (generate_cmd->parsed()) {
                const auto kind = scenario_kind_from_string(kind_text);
                if (!kind) throw ConfigError("unknown scenario kind: " + kind_text);
                scenario.kind = *kind;
                scenario.funded = !unfunded;
                return cmd_fixture_generate(scenario, fixture_out);
            }
            return cmd_fixture_validate(validate_dir);
        }
        if (detect_cmd->parsed()) {
            std::set<Category> detectors;
            if (which == "destructed") detectors = {Category::destructed};
            else if (which == "parity") detectors = {Category::attacked_parity};
            else if (which == "eoa") detectors = {Category::creation_failure};
            else if (which == "all")
                detectors = {Category::destructed, Category::attacked_parity,
                             Category::creation_failure};
            else
                throw ConfigError("unknown detector \"" + which + "\"");

            std::map<std::string, std::string> file_settings;
            if (!config_path.empty()) file_settings = parse_config_file(config_path);
            const Settings settings(flags, file_settings, environment_settings());
            const RunConfig config = resolve_run_config(settings, detectors);
            const LockedReport report = run(config);
            const std::string summary = write_report_outputs(report, config);
            if (!summary.empty()) std::cout << summary;
            return kExitOk;
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ParseError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfra;
    }
    return kExitConfig;
}
