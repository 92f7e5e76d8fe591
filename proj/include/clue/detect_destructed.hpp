// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <clue/findings.hpp>

namespace clue {

struct DestructedScan {
    std::vector<DestructionEvent> events;
    std::vector<std::string> warnings;  // e.g. unresolvable traces
};

/// Walks the traces of the given transactions and emits one DestructionEvent
/// per suicide internal transaction; duplicates within a transaction are
/// collapsed. A missing trace yields a warning, not a failure.
DestructedScan scan_traces_for_selfdestruct(const ChainSource& source,
                                            const std::vector<Hash32>& tx_hashes);

/// Confirms a destruction as a locked-value finding: the account must still
/// be code-less, hold ETH or tokens, and show no outgoing value movement
/// after the destruction block.
std::optional<Finding> confirm_locked_destructed(const ChainSource& source,
                                                 const DestructionEvent& event,
                                                 std::span<const Address> token_universe = {});

PipelineResult run_destructed_pipeline(const ChainSource& source,
                                       const DetectorOptions& options = {});

}  // namespace clue
