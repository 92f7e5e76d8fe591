// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#include <clue/rpc_source.hpp>

#include <httplib.h>

#include <chrono>
#include <mutex>
#include <thread>
#include <unordered_map>

namespace clue {

namespace {

constexpr char kBalanceOfSelector[] = "70a08231";

std::string balance_of_calldata(const Address& holder) {
    // selector + 32-byte left-padded holder address, per the ERC20 ABI.
    std::string data = "0x";
    data += kBalanceOfSelector;
    data += std::string(24, '0');
    const std::string hex = holder.to_string();
    data += hex.substr(2);
    return data;
}

class RpcSource final : public ChainSource {
public:
    RpcSource(const std::string& endpoint_url, const RpcOptions& options)
        : endpoint_(endpoint_url), options_(options) {}

    AccountState get_account_state(const Address& address) const override {
        AccountState state;
        state.address = address;
        state.balance = get_balance(address);
        state.nonce = get_nonce(address);
        state.code = get_code(address);
        return state;
    }

    std::vector<uint8_t> get_code(const Address& address) const override {
        const Json result =
            cached_call("eth_getCode", address.to_string(), {address.to_string(), "latest"});
        return from_hex(result.get<std::string>());
    }

    Wei get_balance(const Address& address) const override {
        const Json result =
            cached_call("eth_getBalance", address.to_string(), {address.to_string(), "latest"});
        return from_quantity(result.get<std::string>());
    }

    uint64_t get_nonce(const Address& address) const override {
        const Json result = cached_call("eth_getTransactionCount", address.to_string(),
                                        {address.to_string(), "latest"});
        return from_quantity(result.get<std::string>()).convert_to<uint64_t>();
    }

    std::vector<Transaction> list_transactions(const Address&) const override {
        throw CapabilityError(
            "list_transactions: capability unavailable on this backend (rpc); "
            "supply an explicit transaction list");
    }

    std::optional<Transaction> get_transaction(const Hash32& tx_hash) const override {
        const Json tx =
            cached_call("eth_getTransactionByHash", tx_hash.to_string(), {tx_hash.to_string()});
        if (tx.is_null()) return std::nullopt;
        const Json receipt = cached_call("eth_getTransactionReceipt", tx_hash.to_string(),
                                         {tx_hash.to_string()});
        Transaction out;
        out.hash = tx_hash;
        out.from = Address::parse(tx.at("from").get<std::string>());
        if (tx.contains("to") && !tx["to"].is_null())
            out.to = Address::parse(tx["to"].get<std::string>());
        out.value = tx.contains("value") ? from_quantity(tx["value"].get<std::string>()) : 0;
        if (!receipt.is_null()) {
            if (receipt.contains("blockNumber"))
                out.block_number =
                    from_quantity(receipt["blockNumber"].get<std::string>()).convert_to<uint64_t>();
            if (receipt.contains("status") && !receipt["status"].is_null() &&
                from_quantity(receipt["status"].get<std::string>()) == 0) {
                out.status = TxStatus::failed;
                out.error = "failed";  // receipts carry no error detail
            }
            if (receipt.contains("contractAddress") && !receipt["contractAddress"].is_null())
                out.created_contract =
                    Address::parse(receipt["contractAddress"].get<std::string>());
        }
        if (!out.to && !out.created_contract) out.created_contract = Address{};
        return out;
    }

    TraceRecord get_trace(const Hash32& tx_hash) const override {
        Json params = Json::array();
        params.push_back(tx_hash.to_string());
        params.push_back(Json{{"tracer", "callTracer"}});
        const Json root = cached_call("debug_traceTransaction", tx_hash.to_string(), params);
        TraceRecord trace;
        trace.tx_hash = tx_hash;
        if (root.is_null()) return trace;
        // The root frame is the external transaction; descendants become
        // internal transactions with depth = tree depth - 1.
        if (root.contains("calls"))
            for (const auto& frame : root["calls"]) flatten_frame(frame, 0, tx_hash, trace);
        return trace;
    }

    std::vector<TokenEvent> list_token_events(const Address&) const override {
        throw CapabilityError("list_token_events: capability unavailable on this backend (rpc)");
    }

    BigInt call_balance_of(const Address& token, const Address& holder) const override {
        Json call;
        call["to"] = token.to_string();
        call["data"] = balance_of_calldata(holder);
        Json params = Json::array();
        params.push_back(std::move(call));
        params.push_back("latest");
        const Json result =
            cached_call("eth_call", token.to_string() + holder.to_string(), params);
        const std::string word = result.get<std::string>();
        if (word == "0x" || word.empty()) return 0;
        return from_quantity(word);
    }

    void list_all_accounts(const std::function<void(const AccountState&)>&) const override {
        throw CapabilityError(
            "list_all_accounts: capability unavailable on this backend (rpc); "
            "supply an explicit candidate address list");
    }

    std::vector<Hash32> list_all_tx_hashes() const override {
        throw CapabilityError("list_all_tx_hashes: capability unavailable on this backend (rpc)");
    }

    std::vector<TokenInfo> list_tokens() const override {
        throw CapabilityError("list_tokens: capability unavailable on this backend (rpc)");
    }

private:
    static void flatten_frame(const Json& frame, uint32_t depth, const Hash32& parent,
                              TraceRecord& trace) {
        InternalTransaction itx;
        itx.parent_hash = parent;
        itx.type = internal_tx_type_from_string(frame.value("type", "call"));
        itx.from = Address::parse(frame.at("from").get<std::string>());
        if (frame.contains("to") && !frame["to"].is_null())
            itx.to = Address::parse(frame["to"].get<std::string>());
        if (frame.contains("value") && !frame["value"].is_null())
            itx.value = from_quantity(frame["value"].get<std::string>());
        itx.depth = depth;
        if (itx.type == InternalTxType::suicide) {
            // The call tracer yields no program counters; synthesize the
            // step so the suicide/SELFDESTRUCT alignment invariant holds.
            trace.steps.push_back(TraceStep{0, "SELFDESTRUCT", depth});
        }
        trace.internal_txs.push_back(std::move(itx));
        if (frame.contains("calls"))
            for (const auto& child : frame["calls"]) flatten_frame(child, depth + 1, parent, trace);
    }

    Json cached_call(const std::string& method, const std::string& cache_key,
                     Json params) const {
        const std::string key = method + "|" + cache_key;
        {
            std::lock_guard lock(mutex_);
            const auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
        }
        Json result = rpc_call(method, std::move(params));
        std::lock_guard lock(mutex_);
        return cache_.emplace(key, std::move(result)).first->second;
    }

    Json rpc_call(const std::string& method, Json params) const {
        Json request;
        request["jsonrpc"] = "2.0";
        request["id"] = next_id_.fetch_add(1);
        request["method"] = method;
        request["params"] = std::move(params);
        const std::string body = request.dump();

        std::string last_error;
        for (unsigned attempt = 0; attempt <= options_.retry_count; ++attempt) {
            throttle();
            httplib::Client client(endpoint_);
            client.set_connection_timeout(std::chrono::duration<double>(options_.timeout_seconds));
            client.set_read_timeout(std::chrono::duration<double>(options_.timeout_seconds));
            const auto response = client.Post("/", body, "application/json");
            if (!response) {
                last_error = "transport failure (" + httplib::to_string(response.error()) + ")";
                continue;
            }
            if (response->status != 200) {
                last_error = "http status " + std::to_string(response->status);
                continue;
            }
            Json reply;
            try {
                reply = Json::parse(response->body);
            } catch (const nlohmann::json::exception& e) {
                last_error = std::string("malformed response: ") + e.what();
                continue;
            }
            if (reply.contains("error") && !reply["error"].is_null())
                throw TransportError(method + ": rpc error " + reply["error"].dump());
            if (!reply.contains("result"))
                throw TransportError(method + ": response carries no result");
            return reply["result"];
        }
        throw TransportError(method + ": " + last_error);
    }

    void throttle() const {
        if (options_.rate_limit_per_second <= 0) return;
        const auto interval = std::chrono::duration<double>(1.0 / options_.rate_limit_per_second);
        std::unique_lock lock(rate_mutex_);
        const auto now = std::chrono::steady_clock::now();
        const auto earliest = last_request_ + std::chrono::duration_cast<std::chrono::steady_clock::duration>(interval);
        if (now < earliest) {
            lock.unlock();
            std::this_thread::sleep_until(earliest);
            lock.lock();
        }
        last_request_ = std::chrono::steady_clock::now();
    }

    std::string endpoint_;
    RpcOptions options_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<std::string, Json> cache_;
    mutable std::atomic<uint64_t> next_id_{1};
    mutable std::mutex rate_mutex_;
    mutable std::chrono::steady_clock::time_point last_request_{};
};

}  // namespace

std::unique_ptr<ChainSource> open_rpc_source(const std::string& endpoint_url,
                                             const RpcOptions& options) {
    return std::make_unique<RpcSource>(endpoint_url, options);
}

}  // namespace clue
