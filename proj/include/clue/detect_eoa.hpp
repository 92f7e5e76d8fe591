// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <clue/findings.hpp>

namespace clue {

/// An account that has never sent a transaction and holds no code.
struct SensitiveEoa {
    Address address;
    AccountState state;
};

/// Pure predicate on account state: nonce zero and empty code.
std::vector<SensitiveEoa> filter_sensitive_eoas(std::span<const AccountState> accounts);

/// Returns the account's oldest transaction iff it is a failed contract
/// creation that returned this very address; nullopt otherwise (including
/// accounts with no transaction history at all).
std::optional<Transaction> check_creation_failure(const ChainSource& source,
                                                  const SensitiveEoa& eoa);

PipelineResult run_eoa_pipeline(const ChainSource& source, const DetectorOptions& options = {});

}  // namespace clue
