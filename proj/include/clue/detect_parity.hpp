// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <clue/findings.hpp>
#include <clue/symexec.hpp>

namespace clue {

/// Run configuration for the wallet detector. The incident library address
/// and attack block are deployment facts, not code constants.
struct ParityConfig {
    Address library_address;
    uint64_t attack_block = 0;
    ExecConfig exec;
};

/// Cheap bytecode screen: accounts whose code embeds the library address in
/// a push payload. EOAs (empty code) are skipped.
std::vector<Address> screen_parity_candidates(std::span<const AccountState> accounts,
                                              const ParityConfig& config);

/// Symbolic confirmation plus the balance / no-outflow filters. When the
/// account does not become a finding, `diagnostic` (if given) receives the
/// reason, including inconclusive symexec verdicts.
std::optional<Finding> confirm_parity(const ChainSource& source, const Address& account,
                                      const ParityConfig& config,
                                      std::span<const Address> token_universe = {},
                                      std::string* diagnostic = nullptr);

PipelineResult run_parity_pipeline(const ChainSource& source, const ParityConfig& config,
                                   const DetectorOptions& options = {});

}  // namespace clue
