// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <clue/chain_source.hpp>

#include <memory>
#include <string>

namespace clue {

struct RpcOptions {
    double timeout_seconds = 15.0;
    unsigned retry_count = 2;
    double rate_limit_per_second = 0;  // 0 = unlimited
};

/// Read-only JSON-RPC 2.0 backend (eth_getBalance, eth_getCode,
/// eth_getTransactionCount, eth_getTransactionByHash/Receipt, eth_call,
/// debug_traceTransaction with the call tracer). Account or transaction
/// enumeration is not possible over vanilla RPC, so the corresponding
/// capabilities throw CapabilityError. Responses are memoized for the
/// lifetime of the source.
std::unique_ptr<ChainSource> open_rpc_source(const std::string& endpoint_url,
                                             const RpcOptions& options = {});

}  // namespace clue
