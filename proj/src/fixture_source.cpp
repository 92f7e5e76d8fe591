// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#include <clue/chain_source.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace clue {

namespace fs = std::filesystem;

namespace {

Json load_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in)
        throw LoadError("cannot open fixture file " + path.string());
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw LoadError("malformed JSON in " + path.string() + ": " + e.what());
    }
    return j;
}

class FixtureSource final : public ChainSource {
public:
    explicit FixtureSource(const std::string& directory) {
        const fs::path dir(directory);
        if (!fs::is_directory(dir))
            throw LoadError("fixture directory not found: " + directory);
        load_accounts(dir / "accounts.json");
        load_transactions(dir / "transactions.json");
        load_traces(dir);
        load_token_events(dir / "token_events.json");
        load_tokens(dir / "tokens.json");
        load_balance_overrides(dir / "token_balances.json");
        build_indexes();
    }

    AccountState get_account_state(const Address& address) const override {
        const auto it = accounts_.find(address);
        if (it != accounts_.end()) return it->second;
        // Absent accounts read as empty, mirroring state-database semantics.
        return AccountState{address, 0, 0, {}};
    }

    std::vector<uint8_t> get_code(const Address& address) const override {
        return get_account_state(address).code;
    }

    Wei get_balance(const Address& address) const override {
        return get_account_state(address).balance;
    }

    uint64_t get_nonce(const Address& address) const override {
        return get_account_state(address).nonce;
    }

    std::vector<Transaction> list_transactions(const Address& address) const override {
        std::vector<Transaction> out;
        const auto it = txs_by_address_.find(address);
        if (it == txs_by_address_.end()) return out;
        out.reserve(it->second.size());
        for (size_t index : it->second) out.push_back(transactions_[index]);
        return out;
    }

    std::optional<Transaction> get_transaction(const Hash32& tx_hash) const override {
        const auto it = tx_by_hash_.find(tx_hash);
        if (it == tx_by_hash_.end()) return std::nullopt;
        return transactions_[it->second];
    }

    TraceRecord get_trace(const Hash32& tx_hash) const override {
        const auto it = traces_.find(tx_hash);
        if (it == traces_.end())
            throw LoadError("no trace for transaction " + tx_hash.to_string());
        return it->second;
    }

    std::vector<TokenEvent> list_token_events(const Address& address) const override {
        std::vector<TokenEvent> out;
        const auto it = events_by_address_.find(address);
        if (it == events_by_address_.end()) return out;
        out.reserve(it->second.size());
        for (size_t index : it->second) out.push_back(token_events_[index]);
        return out;
    }

    BigInt call_balance_of(const Address& token, const Address& holder) const override {
        if (!tokens_.count(token))
            throw Error("unknown token contract " + token.to_string());
        if (!balance_overrides_.empty()) {
            const auto it = balance_overrides_.find({token, holder});
            if (it != balance_overrides_.end()) return it->second;
        }
        const auto it = replayed_balances_.find({token, holder});
        return it != replayed_balances_.end() ? it->second : BigInt(0);
    }

    void list_all_accounts(const std::function<void(const AccountState&)>& sink) const override {
        for (const auto& [address, account] : accounts_) sink(account);
    }

    std::vector<Hash32> list_all_tx_hashes() const override {
        std::vector<Hash32> out;
        out.reserve(transactions_.size());
        for (const auto& tx : transactions_) out.push_back(tx.hash);
        return out;
    }

    std::vector<TokenInfo> list_tokens() const override {
        std::vector<TokenInfo> out;
        out.reserve(tokens_.size());
        for (const auto& [address, info] : tokens_) out.push_back(info);
        return out;
    }

private:
    void load_accounts(const fs::path& path) {
        const Json root = load_json_file(path);
        if (!root.is_array()) throw LoadError(path.string() + ": expected a JSON array");
        for (size_t i = 0; i < root.size(); ++i) {
            AccountState account;
            try {
                account = account_from_json(root[i]);
            } catch (const Error& e) {
                throw LoadError(path.string() + " [" + std::to_string(i) + "]: " + e.what());
            }
            if (!accounts_.emplace(account.address, account).second)
                throw LoadError(path.string() + ": duplicate account " +
                                account.address.to_string());
        }
    }

    void load_transactions(const fs::path& path) {
        const Json root = load_json_file(path);
        if (!root.is_array()) throw LoadError(path.string() + ": expected a JSON array");
        for (size_t i = 0; i < root.size(); ++i) {
            Transaction tx;
            try {
                tx = transaction_from_json(root[i]);
            } catch (const Error& e) {
                throw LoadError(path.string() + " [" + std::to_string(i) + "]: " + e.what());
            }
            transactions_.push_back(std::move(tx));
        }
        // Ascending block order; file order breaks ties within a block.
        std::stable_sort(transactions_.begin(), transactions_.end(),
                         [](const Transaction& a, const Transaction& b) {
                             return a.block_number < b.block_number;
                         });
        for (size_t i = 0; i < transactions_.size(); ++i) {
            if (!tx_by_hash_.emplace(transactions_[i].hash, i).second)
                throw LoadError(path.string() + ": duplicate transaction " +
                                transactions_[i].hash.to_string());
        }
    }

    void load_traces(const fs::path& dir) {
        const fs::path traces_dir = dir / "traces";
        for (const auto& tx : transactions_) {
            const fs::path path = traces_dir / (tx.hash.to_string() + ".json");
            if (!fs::exists(path))
                throw LoadError("transactions.json references transaction " +
                                tx.hash.to_string() + " but " + path.string() + " is missing");
            TraceRecord trace;
            try {
                trace = trace_from_json(load_json_file(path));
            } catch (const Error& e) {
                throw LoadError(path.string() + ": " + e.what());
            }
            if (trace.tx_hash != tx.hash)
                throw LoadError(path.string() + ": tx_hash does not match file name");
            traces_.emplace(tx.hash, std::move(trace));
        }
    }

    void load_token_events(const fs::path& path) {
        const Json root = load_json_file(path);
        if (!root.is_array()) throw LoadError(path.string() + ": expected a JSON array");
        for (size_t i = 0; i < root.size(); ++i) {
            try {
                token_events_.push_back(token_event_from_json(root[i]));
            } catch (const Error& e) {
                throw LoadError(path.string() + " [" + std::to_string(i) + "]: " + e.what());
            }
        }
        std::stable_sort(token_events_.begin(), token_events_.end(),
                         [](const TokenEvent& a, const TokenEvent& b) {
                             return a.block_number < b.block_number;
                         });
    }

    void load_tokens(const fs::path& path) {
        const Json root = load_json_file(path);
        if (!root.is_array()) throw LoadError(path.string() + ": expected a JSON array");
        for (size_t i = 0; i < root.size(); ++i) {
            TokenInfo info;
            try {
                info = token_info_from_json(root[i]);
            } catch (const Error& e) {
                throw LoadError(path.string() + " [" + std::to_string(i) + "]: " + e.what());
            }
            tokens_.emplace(info.address, std::move(info));
        }
    }

    void load_balance_overrides(const fs::path& path) {
        if (!fs::exists(path)) return;  // optional file
        const Json root = load_json_file(path);
        if (!root.is_array()) throw LoadError(path.string() + ": expected a JSON array");
        for (const auto& entry : root) {
            const Address token = Address::parse(entry.at("token").get<std::string>());
            const Address holder = Address::parse(entry.at("holder").get<std::string>());
            const BigInt amount = parse_dec(entry.at("amount").get<std::string>());
            balance_overrides_[{token, holder}] = amount;
        }
    }

    void build_indexes() {
        auto touch = [this](const Address& address, size_t tx_index) {
            auto& list = txs_by_address_[address];
            if (list.empty() || list.back() != tx_index) list.push_back(tx_index);
        };
        for (size_t i = 0; i < transactions_.size(); ++i) {
            const Transaction& tx = transactions_[i];
            touch(tx.from, i);
            if (tx.to) touch(*tx.to, i);
            if (tx.created_contract) touch(*tx.created_contract, i);
            const auto trace = traces_.find(tx.hash);
            if (trace != traces_.end()) {
                for (const auto& itx : trace->second.internal_txs) {
                    touch(itx.from, i);
                    if (itx.to) touch(*itx.to, i);
                }
            }
        }
        for (size_t i = 0; i < token_events_.size(); ++i) {
            const TokenEvent& event = token_events_[i];
            auto add = [this, i](const Address& address) {
                auto& list = events_by_address_[address];
                if (list.empty() || list.back() != i) list.push_back(i);
            };
            add(event.from);
            add(event.to_or_spender);
            if (event.kind == TokenEventKind::transfer) {
                auto& net = replayed_balances_;
                net[{event.token, event.to_or_spender}] += event.amount;
                net[{event.token, event.from}] -= event.amount;
            }
        }
    }

    struct PairHash {
        size_t operator()(const std::pair<Address, Address>& p) const noexcept {
            return std::hash<Address>()(p.first) * 31 ^ std::hash<Address>()(p.second);
        }
    };

    std::map<Address, AccountState> accounts_;  // ordered: enumeration is by address
    std::vector<Transaction> transactions_;
    std::unordered_map<Hash32, size_t> tx_by_hash_;
    std::unordered_map<Hash32, TraceRecord> traces_;
    std::vector<TokenEvent> token_events_;
    std::map<Address, TokenInfo> tokens_;
    std::unordered_map<Address, std::vector<size_t>> txs_by_address_;
    std::unordered_map<Address, std::vector<size_t>> events_by_address_;
    std::unordered_map<std::pair<Address, Address>, BigInt, PairHash> replayed_balances_;
    std::unordered_map<std::pair<Address, Address>, BigInt, PairHash> balance_overrides_;
};

}  // namespace

std::unique_ptr<ChainSource> open_fixture_source(const std::string& directory_path) {
    return std::make_unique<FixtureSource>(directory_path);
}

}  // namespace clue
