// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#include <clue/chain_model.hpp>

#include <doctest.h>

#include <random>

using namespace clue;

TEST_CASE("address parsing normalizes mixed case") {
    const auto addr = Address::parse("0x97eC9BFb0F6672C358620615a1E4dE0348Aea05c");
    CHECK(addr.to_string() == "0x97ec9bfb0f6672c358620615a1e4de0348aea05c");
}

TEST_CASE("zero address round-trips") {
    const std::string zero = "0x" + std::string(40, '0');
    const auto addr = Address::parse(zero);
    CHECK(addr.is_zero());
    CHECK(addr.to_string() == zero);
}

TEST_CASE("malformed addresses are rejected") {
    CHECK_THROWS_AS(Address::parse("0xZZ00000000000000000000000000000000000000"), ParseError);
    CHECK_THROWS_AS(Address::parse("0x1234"), ParseError);
    CHECK_THROWS_AS(Address::parse("97ec9bfb0f6672c358620615a1e4de0348aea05c"), ParseError);
    CHECK_THROWS_AS(Address::parse(""), ParseError);
}

TEST_CASE("address parse/format identity on random inputs") {
    std::mt19937_64 rng(42);
    const char* hex = "0123456789abcdef";
    const char* hex_upper = "0123456789ABCDEF";
    for (int trial = 0; trial < 200; ++trial) {
        std::string lower = "0x";
        std::string mixed = "0x";
        for (int i = 0; i < 40; ++i) {
            const int d = static_cast<int>(rng() % 16);
            lower += hex[d];
            mixed += (rng() % 2) ? hex_upper[d] : hex[d];
        }
        CHECK(Address::parse(lower).to_string() == lower);
        CHECK(Address::parse(mixed).to_string() == lower);
    }
}

TEST_CASE("wei_to_eth unit cases") {
    CHECK(wei_to_eth(0).to_string() == "0");
    CHECK(wei_to_eth(BigInt("1000000000000000000")).to_string() == "1");
    CHECK(wei_to_eth(BigInt("2576350000000000000000")).to_string() == "2576.35");
}

TEST_CASE("wei_to_eth is exactly linear") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const Wei a = BigInt(rng()) * BigInt(rng());
        const Wei b = BigInt(rng()) * BigInt(rng());
        CHECK(wei_to_eth(a + b) == wei_to_eth(a) + wei_to_eth(b));
    }
}

TEST_CASE("transaction json enforces creation and failure invariants") {
    Json j;
    j["hash"] = "0x" + std::string(64, '1');
    j["from"] = "0x" + std::string(40, '2');
    j["to"] = nullptr;
    j["value"] = "0";
    j["block_number"] = "5";
    j["status"] = "success";
    CHECK_THROWS_AS(transaction_from_json(j), LoadError);  // creation without created_contract

    j["created_contract"] = "0x" + std::string(40, '3');
    const Transaction tx = transaction_from_json(j);
    CHECK(tx.is_creation());
    CHECK(tx.created_contract.has_value());

    j["status"] = "failed";
    CHECK_THROWS_AS(transaction_from_json(j), LoadError);  // failed without error
    j["error"] = "out of gas";
    CHECK(transaction_from_json(j).status == TxStatus::failed);
}

TEST_CASE("internal tx type normalizes selfdestruct to suicide") {
    CHECK(internal_tx_type_from_string("suicide") == InternalTxType::suicide);
    CHECK(internal_tx_type_from_string("SELFDESTRUCT") == InternalTxType::suicide);
    CHECK(internal_tx_type_from_string("selfdestruct") == InternalTxType::suicide);
    CHECK(internal_tx_type_from_string("CALL") == InternalTxType::call);
    CHECK(internal_tx_type_from_string("weird") == InternalTxType::other);
}

TEST_CASE("account json round-trip") {
    AccountState account;
    account.address = Address::parse("0x" + std::string(40, 'a'));
    account.nonce = 3;
    account.balance = BigInt("123456789012345678901234567890");
    account.code = {0x60, 0x01};
    const AccountState back = account_from_json(account_to_json(account));
    CHECK(back.address == account.address);
    CHECK(back.nonce == account.nonce);
    CHECK(back.balance == account.balance);
    CHECK(back.code == account.code);
}
