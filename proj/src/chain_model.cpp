// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#include <clue/chain_model.hpp>

namespace clue {

namespace {

std::string get_string(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        throw LoadError(std::string("missing or non-string field \"") + key + "\"");
    return j[key].get<std::string>();
}

BigInt get_big(const Json& j, const char* key) {
    if (!j.contains(key))
        throw LoadError(std::string("missing field \"") + key + "\"");
    const auto& v = j[key];
    if (v.is_string()) return parse_dec(v.get<std::string>());
    if (v.is_number_unsigned()) return BigInt(v.get<uint64_t>());
    throw LoadError(std::string("field \"") + key + "\" must be a decimal string");
}

uint64_t get_u64(const Json& j, const char* key) {
    const BigInt v = get_big(j, key);
    if (v > std::numeric_limits<uint64_t>::max())
        throw LoadError(std::string("field \"") + key + "\" out of range");
    return v.convert_to<uint64_t>();
}

std::optional<Address> get_opt_address(const Json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return Address::parse(j[key].get<std::string>());
}

}  // namespace

Decimal wei_to_eth(const Wei& amount) {
    return Decimal(amount, 18);
}

std::string to_string(TxStatus status) {
    return status == TxStatus::success ? "success" : "failed";
}

TxStatus tx_status_from_string(std::string_view text) {
    if (text == "success") return TxStatus::success;
    if (text == "failed") return TxStatus::failed;
    throw LoadError("unknown transaction status \"" + std::string(text) + "\"");
}

std::string to_string(InternalTxType type) {
    switch (type) {
        case InternalTxType::call: return "call";
        case InternalTxType::callcode: return "callcode";
        case InternalTxType::delegatecall: return "delegatecall";
        case InternalTxType::staticcall: return "staticcall";
        case InternalTxType::create: return "create";
        case InternalTxType::suicide: return "suicide";
        case InternalTxType::other: return "other";
    }
    return "other";
}

InternalTxType internal_tx_type_from_string(std::string_view text) {
    std::string lower(text);
    for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "call") return InternalTxType::call;
    if (lower == "callcode") return InternalTxType::callcode;
    if (lower == "delegatecall") return InternalTxType::delegatecall;
    if (lower == "staticcall") return InternalTxType::staticcall;
    if (lower == "create" || lower == "create2") return InternalTxType::create;
    // Both tracer vocabularies appear in the wild; normalize to "suicide".
    if (lower == "suicide" || lower == "selfdestruct") return InternalTxType::suicide;
    return InternalTxType::other;
}

std::string to_string(TokenEventKind kind) {
    return kind == TokenEventKind::transfer ? "transfer" : "approval";
}

TokenEventKind token_event_kind_from_string(std::string_view text) {
    if (text == "transfer") return TokenEventKind::transfer;
    if (text == "approval") return TokenEventKind::approval;
    throw LoadError("unknown token event kind \"" + std::string(text) + "\"");
}

Json account_to_json(const AccountState& account) {
    Json j;
    j["address"] = account.address.to_string();
    j["nonce"] = std::to_string(account.nonce);
    j["balance"] = account.balance.convert_to<std::string>();
    j["code"] = to_hex(account.code);
    return j;
}

AccountState account_from_json(const Json& j) {
    AccountState account;
    account.address = Address::parse(get_string(j, "address"));
    account.nonce = get_u64(j, "nonce");
    account.balance = get_big(j, "balance");
    if (account.balance < 0) throw LoadError("negative balance");
    account.code = from_hex(get_string(j, "code"));
    return account;
}

Json transaction_to_json(const Transaction& tx) {
    Json j;
    j["hash"] = tx.hash.to_string();
    j["from"] = tx.from.to_string();
    j["to"] = tx.to ? Json(tx.to->to_string()) : Json(nullptr);
    j["value"] = tx.value.convert_to<std::string>();
    j["block_number"] = std::to_string(tx.block_number);
    j["status"] = to_string(tx.status);
    if (tx.error) j["error"] = *tx.error;
    if (tx.created_contract) j["created_contract"] = tx.created_contract->to_string();
    return j;
}

Transaction transaction_from_json(const Json& j) {
    Transaction tx;
    tx.hash = Hash32::parse(get_string(j, "hash"));
    tx.from = Address::parse(get_string(j, "from"));
    tx.to = get_opt_address(j, "to");
    tx.value = get_big(j, "value");
    tx.block_number = get_u64(j, "block_number");
    tx.status = tx_status_from_string(get_string(j, "status"));
    if (j.contains("error") && !j["error"].is_null()) tx.error = j["error"].get<std::string>();
    tx.created_contract = get_opt_address(j, "created_contract");
    if (!tx.to && !tx.created_contract)
        throw LoadError("creation transaction " + tx.hash.to_string() +
                        " must carry created_contract");
    if (tx.status == TxStatus::failed && !tx.error)
        throw LoadError("failed transaction " + tx.hash.to_string() + " must carry an error");
    return tx;
}

Json trace_to_json(const TraceRecord& trace) {
    Json j;
    j["tx_hash"] = trace.tx_hash.to_string();
    j["steps"] = Json::array();
    for (const auto& step : trace.steps) {
        Json s;
        s["pc"] = std::to_string(step.pc);
        s["opcode"] = step.opcode;
        s["depth"] = std::to_string(step.depth);
        j["steps"].push_back(std::move(s));
    }
    j["internal_txs"] = Json::array();
    for (const auto& itx : trace.internal_txs) {
        Json t;
        t["type"] = to_string(itx.type);
        t["from"] = itx.from.to_string();
        t["to"] = itx.to ? Json(itx.to->to_string()) : Json(nullptr);
        t["value"] = itx.value.convert_to<std::string>();
        t["depth"] = std::to_string(itx.depth);
        j["internal_txs"].push_back(std::move(t));
    }
    return j;
}

TraceRecord trace_from_json(const Json& j) {
    TraceRecord trace;
    trace.tx_hash = Hash32::parse(get_string(j, "tx_hash"));
    if (j.contains("steps")) {
        for (const auto& s : j["steps"]) {
            TraceStep step;
            step.pc = static_cast<uint32_t>(get_u64(s, "pc"));
            step.opcode = get_string(s, "opcode");
            step.depth = static_cast<uint32_t>(get_u64(s, "depth"));
            trace.steps.push_back(std::move(step));
        }
    }
    if (j.contains("internal_txs")) {
        for (const auto& t : j["internal_txs"]) {
            InternalTransaction itx;
            itx.parent_hash = trace.tx_hash;
            itx.type = internal_tx_type_from_string(get_string(t, "type"));
            itx.from = Address::parse(get_string(t, "from"));
            itx.to = get_opt_address(t, "to");
            itx.value = get_big(t, "value");
            itx.depth = t.contains("depth") ? static_cast<uint32_t>(get_u64(t, "depth")) : 0;
            trace.internal_txs.push_back(std::move(itx));
        }
    }
    return trace;
}

Json token_event_to_json(const TokenEvent& event) {
    Json j;
    j["token"] = event.token.to_string();
    j["kind"] = to_string(event.kind);
    j["from"] = event.from.to_string();
    j["to_or_spender"] = event.to_or_spender.to_string();
    j["amount"] = event.amount.convert_to<std::string>();
    j["block_number"] = std::to_string(event.block_number);
    return j;
}

TokenEvent token_event_from_json(const Json& j) {
    TokenEvent event;
    event.token = Address::parse(get_string(j, "token"));
    event.kind = token_event_kind_from_string(get_string(j, "kind"));
    event.from = Address::parse(get_string(j, "from"));
    event.to_or_spender = Address::parse(get_string(j, "to_or_spender"));
    event.amount = get_big(j, "amount");
    if (event.amount < 0) throw LoadError("negative token amount");
    event.block_number = get_u64(j, "block_number");
    return event;
}

Json token_info_to_json(const TokenInfo& info) {
    Json j;
    j["address"] = info.address.to_string();
    j["symbol"] = info.symbol;
    j["decimals"] = std::to_string(info.decimals);
    return j;
}

TokenInfo token_info_from_json(const Json& j) {
    TokenInfo info;
    info.address = Address::parse(get_string(j, "address"));
    info.symbol = get_string(j, "symbol");
    info.decimals = static_cast<uint32_t>(get_u64(j, "decimals"));
    if (info.decimals > 36) throw LoadError("token decimals out of range for " + info.symbol);
    return info;
}

}  // namespace clue
