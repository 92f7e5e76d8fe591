// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace clue {

/// Applies `fn` to every element, using up to `workers` threads. Results
/// keep input order, so downstream merges are schedule-independent. `fn`
/// must not throw; encode failures in the result type.
template <typename In, typename Fn>
auto parallel_map(const std::vector<In>& items, unsigned workers, Fn&& fn)
    -> std::vector<decltype(fn(items.front()))> {
    using Out = decltype(fn(items.front()));
    std::vector<Out> results(items.size());
    if (items.empty()) return results;
    if (workers <= 1 || items.size() == 1) {
        for (size_t i = 0; i < items.size(); ++i) results[i] = fn(items[i]);
        return results;
    }
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= items.size()) return;
            results[i] = fn(items[i]);
        }
    };
    std::vector<std::thread> threads;
    const unsigned count = std::min<unsigned>(workers, static_cast<unsigned>(items.size()));
    threads.reserve(count);
    for (unsigned t = 0; t < count; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    return results;
}

}  // namespace clue
