// clue: locked-cryptocurrency detection for Ethereum-style chains
// Copyright 2026 The clue Authors.
// SPDX-License-Identifier: Apache-2.0

#include <clue/chain_source.hpp>
#include <clue/opcodes.hpp>
#include <clue/synthchain.hpp>
#include <clue/valuation.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

namespace clue {

namespace fs = std::filesystem;

namespace {

// --- deterministic identifier derivation -----------------------------------

uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

template <size_t N>
std::array<uint8_t, N> derive_bytes(uint64_t seed, uint64_t domain, uint64_t counter) {
    std::array<uint8_t, N> out{};
    uint64_t state = seed ^ (domain * 0xD1B54A32D192ED03ull) ^ (counter * 0x2545F4914F6CDD1Dull);
    size_t filled = 0;
    while (filled < N) {
        uint64_t word = splitmix64(state);
        for (int i = 0; i < 8 && filled < N; ++i, ++filled) {
            out[filled] = static_cast<uint8_t>(word & 0xff);
            word >>= 8;
        }
    }
    return out;
}

// --- bytecode templates -----------------------------------------------------

std::vector<uint8_t> emit_push(unsigned width, const std::vector<uint8_t>& payload) {
    std::vector<uint8_t> out;
    out.push_back(static_cast<uint8_t>(OP_PUSH1 + width - 1));
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

void append(std::vector<uint8_t>& code, std::initializer_list<uint8_t> bytes) {
    code.insert(code.end(), bytes);
}

void append_push1(std::vector<uint8_t>& code, uint8_t value) {
    append(code, {OP_PUSH1, value});
}

void append_push20(std::vector<uint8_t>& code, const Address& address) {
    code.push_back(OP_PUSH20);
    code.insert(code.end(), address.bytes.begin(), address.bytes.end());
}

/// Forwarding wallet: copies calldata and delegates everything to `library`.
std::vector<uint8_t> wallet_stub_code(const Address& library) {
    std::vector<uint8_t> code;
    append(code, {OP_CALLDATASIZE});
    append_push1(code, 0);
    append_push1(code, 0);
    append(code, {OP_CALLDATACOPY});
    append_push1(code, 0);  // outLen
    append_push1(code, 0);  // outOff
    append(code, {OP_CALLDATASIZE});
    append_push1(code, 0);  // inOff
    append_push20(code, library);
    append(code, {OP_GAS, OP_DELEGATECALL});
    append(code, {OP_RETURNDATASIZE});
    append_push1(code, 0);
    append_push1(code, 0);
    append(code, {OP_RETURNDATACOPY, OP_RETURNDATASIZE});
    append_push1(code, 0);
    append(code, {OP_RETURN});
    return code;
}

/// Embeds the library address but routes calls to a calldata-chosen target.
std::vector<uint8_t> decoy_calldata_code(const Address& library) {
    std::vector<uint8_t> code;
    append_push20(code, library);
    append(code, {OP_POP});
    for (int i = 0; i < 4; ++i) append_push1(code, 0);  // outLen outOff inLen inOff
    append_push1(code, 0);                              // value
    append_push1(code, 0);
    append(code, {OP_CALLDATALOAD, OP_GAS, OP_CALL, OP_POP, OP_STOP});
    return code;
}

/// Embeds the library address but delegates to a different fixed target.
std::vector<uint8_t> decoy_other_target_code(const Address& library, const Address& other) {
    std::vector<uint8_t> code;
    append_push20(code, library);
    append(code, {OP_POP});
    for (int i = 0; i < 4; ++i) append_push1(code, 0);
    append_push20(code, other);
    append(code, {OP_GAS, OP_DELEGATECALL, OP_POP, OP_STOP});
    return code;
}

/// Carries the library address only in the low bytes of a PUSH32; makes no
/// external call at all.
std::vector<uint8_t> decoy_push32_code(const Address& library) {
    std::vector<uint8_t> payload(12, 0xee);
    payload.insert(payload.end(), library.bytes.begin(), library.bytes.end());
    std::vector<uint8_t> code = emit_push(32, payload);
    append(code, {OP_POP, OP_STOP});
    return code;
}

std::vector<uint8_t> trivial_runtime_code() {
    return {OP_PUSH1, 0x00, OP_PUSH1, 0x00, OP_RETURN};
}

// --- fixture assembly -------------------------------------------------------

class FixtureBuilder {
public:
    explicit FixtureBuilder(uint64_t seed) : seed_(seed) {}

    Address make_address() { return Address{derive_bytes<20>(seed_, 1, addr_counter_++)}; }
    Hash32 make_hash() { return Hash32{derive_bytes<32>(seed_, 2, hash_counter_++)}; }

    void set_account(const Address& address, uint64_t nonce, Wei balance,
                     std::vector<uint8_t> code = {}) {
        accounts_[address] = AccountState{address, nonce, std::move(balance), std::move(code)};
    }

    Hash32 add_plain_transfer(const Address& from, const Address& to, Wei value, uint64_t block) {
        Transaction tx;
        tx.hash = make_hash();
        tx.from = from;
        tx.to = to;
        tx.value = std::move(value);
        tx.block_number = block;
        push_tx(tx, TraceRecord{tx.hash, {}, {}});
        return tx.hash;
    }

    Hash32 add_failed_creation(const Address& creator, const Address& created, uint64_t block,
                               const std::string& error, Wei value = 0) {
        Transaction tx;
        tx.hash = make_hash();
        tx.from = creator;
        tx.to = std::nullopt;
        tx.value = std::move(value);
        tx.block_number = block;
        tx.status = TxStatus::failed;
        tx.error = error;
        tx.created_contract = created;
        push_tx(tx, TraceRecord{tx.hash, {}, {}});
        return tx.hash;
    }

    Hash32 add_successful_creation(const Address& creator, const Address& created,
                                   uint64_t block) {
        Transaction tx;
        tx.hash = make_hash();
        tx.from = creator;
        tx.to = std::nullopt;
        tx.value = 0;
        tx.block_number = block;
        tx.created_contract = created;
        TraceRecord trace{tx.hash,
                          {},
                          {InternalTransaction{tx.hash, InternalTxType::create, creator, created,
                                               0, 0}}};
        push_tx(tx, std::move(trace));
        return tx.hash;
    }

    /// caller -> contract; the contract self-destructs, refunding `value`.
    Hash32 add_destruct_call(const Address& caller, const Address& contract,
                             const Address& refund, Wei value, uint64_t block) {
        Transaction tx;
        tx.hash = make_hash();
        tx.from = caller;
        tx.to = contract;
        tx.value = 0;
        tx.block_number = block;
        TraceRecord trace{tx.hash,
                          {TraceStep{7, "SELFDESTRUCT", 0}},
                          {InternalTransaction{tx.hash, InternalTxType::suicide, contract, refund,
                                               std::move(value), 0}}};
        push_tx(tx, std::move(trace));
        return tx.hash;
    }

    /// One transaction whose callee destructs every child contract.
    Hash32 add_mass_destruct(const Address& caller, const Address& dispatcher,
                             const std::vector<Address>& children, const Address& refund,
                             uint64_t block) {
        Transaction tx;
        tx.hash = make_hash();
        tx.from = caller;
        tx.to = dispatcher;
        tx.value = 0;
        tx.block_number = block;
        TraceRecord trace;
        trace.tx_hash = tx.hash;
        for (size_t i = 0; i < children.size(); ++i) {
            trace.internal_txs.push_back(InternalTransaction{
                tx.hash, InternalTxType::call, dispatcher, children[i], 0, 0});
            trace.steps.push_back(TraceStep{static_cast<uint32_t>(3 + i), "SELFDESTRUCT", 1});
            trace.internal_txs.push_back(InternalTransaction{tx.hash, InternalTxType::suicide,
                                                             children[i], refund, 0, 1});
        }
        push_tx(tx, std::move(trace));
        return tx.hash;
    }

    void add_token_transfer(const Address& token, const Address& from, const Address& to,
                            BigInt amount, uint64_t block) {
        token_events_.push_back(
            TokenEvent{token, TokenEventKind::transfer, from, to, std::move(amount), block});
    }

    void add_token_approval(const Address& token, const Address& owner, const Address& spender,
                            BigInt amount, uint64_t block) {
        token_events_.push_back(
            TokenEvent{token, TokenEventKind::approval, owner, spender, std::move(amount), block});
    }

    void add_token(const TokenInfo& info) { tokens_[info.address] = info; }

    void enable_balance_overrides() { write_overrides_ = true; }

    void write(const fs::path& dir, const Json& prices, const Json& manifest) {
        // Senders must exist with a sent-transaction nonce; recipients may
        // legitimately be absent from the state snapshot.
        std::map<Address, uint64_t> sent;
        for (const auto& tx : transactions_) ++sent[tx.from];
        for (const auto& [address, count] : sent) {
            if (!accounts_.count(address))
                set_account(address, count, Wei(BigInt("1000000000000000000000000")));
        }

        fs::create_directories(dir / "traces");
        Json accounts = Json::array();
        for (const auto& [address, account] : accounts_)
            accounts.push_back(account_to_json(account));
        write_json(dir / "accounts.json", accounts);

        Json txs = Json::array();
        for (const auto& tx : transactions_) txs.push_back(transaction_to_json(tx));
        write_json(dir / "transactions.json", txs);

        for (const auto& trace : traces_)
            write_json(dir / "traces" / (trace.tx_hash.to_string() + ".json"),
                       trace_to_json(trace));

        Json events = Json::array();
        for (const auto& event : token_events_) events.push_back(token_event_to_json(event));
        write_json(dir / "token_events.json", events);

        Json tokens = Json::array();
        for (const auto& [address, info] : tokens_) tokens.push_back(token_info_to_json(info));
        write_json(dir / "tokens.json", tokens);

        if (write_overrides_) {
            std::map<std::pair<Address, Address>, BigInt> net;
            for (const auto& event : token_events_) {
                if (event.kind != TokenEventKind::transfer) continue;
                net[{event.token, event.to_or_spender}] += event.amount;
                net[{event.token, event.from}] -= event.amount;
            }
            Json overrides = Json::array();
            for (const auto& [key, amount] : net) {
                if (amount <= 0) continue;
                Json o;
                o["token"] = key.first.to_string();
                o["holder"] = key.second.to_string();
                o["amount"] = amount.convert_to<std::string>();
                overrides.push_back(std::move(o));
            }
            write_json(dir / "token_balances.json", overrides);
        }

        write_json(dir / "prices.json", prices);
        write_json(dir / "manifest.json", manifest);
    }

private:
    void push_tx(const Transaction& tx, TraceRecord trace) {
        transactions_.push_back(tx);
        traces_.push_back(std::move(trace));
    }

    static void write_json(const fs::path& path, const Json& j) {
        std::ofstream out(path);
        if (!out) throw Error("cannot write " + path.string());
        out << j.dump(2) << '\n';
    }

    uint64_t seed_;
    uint64_t addr_counter_ = 0;
    uint64_t hash_counter_ = 0;
    std::map<Address, AccountState> accounts_;
    std::vector<Transaction> transactions_;
    std::vector<TraceRecord> traces_;
    std::vector<TokenEvent> token_events_;
    std::map<Address, TokenInfo> tokens_;
    bool write_overrides_ = false;
};

Wei from_eth_str(const std::string& text) {
    // Exact: parse as decimal, scale to wei.
    const Decimal d = Decimal::parse(text);
    Decimal scaled = d * Decimal(BigInt(1), -18);
    if (scaled.scale() != 0) throw Error("sub-wei amount: " + text);
    return scaled.mantissa();
}

BigInt split_share(const BigInt& total, size_t n, size_t index) {
    const BigInt base = total / n;
    return index == 0 ? base + total % n : base;
}

std::vector<Address> sorted(std::vector<Address> addresses) {
    std::sort(addresses.begin(), addresses.end());
    return addresses;
}

Json manifest_to_json(const FixtureManifest& manifest) {
    Json j;
    j["scenario"] = manifest.scenario;
    j["seed"] = std::to_string(manifest.seed);
    j["library_address"] =
        manifest.library_address ? Json(manifest.library_address->to_string()) : Json(nullptr);
    j["attack_block"] =
        manifest.attack_block ? Json(std::to_string(*manifest.attack_block)) : Json(nullptr);
    Json expected = Json::object();
    for (const auto& [category, expectation] : manifest.expected) {
        Json e;
        e["candidates"] = expectation.candidates;
        Json findings = Json::array();
        for (const auto& address : expectation.findings) findings.push_back(address.to_string());
        e["findings"] = std::move(findings);
        if (expectation.eth_usd) e["eth_usd"] = *expectation.eth_usd;
        if (expectation.cbc_usd) e["cbc_usd"] = *expectation.cbc_usd;
        expected[to_string(category)] = std::move(e);
    }
    j["expected"] = std::move(expected);
    Json counters = Json::object();
    for (const auto& [key, count] : manifest.counters) counters[key] = count;
    j["counters"] = std::move(counters);
    if (manifest.expected_grand_total_usd)
        j["expected_grand_total_usd"] = *manifest.expected_grand_total_usd;
    return j;
}

Json standard_prices(const std::string& eth_usd, const std::vector<std::pair<TokenInfo, std::string>>& tokens,
                     const std::string& as_of) {
    PriceTable table;
    table.eth_usd = Decimal::parse(eth_usd);
    table.as_of = as_of;
    for (const auto& [info, usd] : tokens)
        table.tokens[info.address] = TokenPrice{info.symbol, info.decimals, Decimal::parse(usd)};
    return table.to_json();
}

const char* kShowcaseDestructed = "0x97ec9bfb0f6672c358620615a1e4de0348aea05c";
const char* kShowcaseWallet = "0x0da3cb3046f72fcbb49edf01b04ab6efc6c0d8dc";
const char* kShowcaseEoa = "0x5488b0a000843dc54b0e541dfb75c2927f92adc8";

// --- scenario bodies --------------------------------------------------------

struct ScenarioContext {
    FixtureBuilder builder;
    FixtureManifest manifest;
    Address funder;
    Address refund;

    explicit ScenarioContext(const Scenario& scenario)
        : builder(scenario.seed) {
        manifest.scenario = to_string(scenario.kind);
        manifest.seed = scenario.seed;
        funder = builder.make_address();
        refund = builder.make_address();
        for (const Category c :
             {Category::destructed, Category::attacked_parity, Category::creation_failure})
            manifest.expected[c] = CategoryExpectation{};
    }
};

/// Library account destroyed by the attack transaction; every parity
/// scenario shares this preamble. Registers the library as a destructed
/// candidate (its suicide is in the fixture's traces).
void add_attacked_library(ScenarioContext& ctx, const Address& library, uint64_t attack_block) {
    ctx.builder.add_destruct_call(ctx.funder, library, ctx.refund, 0, attack_block);
    ctx.manifest.library_address = library;
    ctx.manifest.attack_block = attack_block;
    ctx.manifest.expected[Category::destructed].candidates += 1;
}

FixtureManifest generate_destructed_basic(const Scenario& scenario, const fs::path& dir) {
    ScenarioContext ctx(scenario);
    const uint32_t n = scenario.n ? scenario.n : 10;
    const TokenInfo synd{ctx.builder.make_address(), "SYND", 18};
    const TokenInfo unpriced{ctx.builder.make_address(), "UNP", 6};
    ctx.builder.add_token(synd);
    ctx.builder.add_token(unpriced);
    const Address whale = ctx.builder.make_address();

    std::vector<Address> contracts;
    contracts.push_back(Address::parse(kShowcaseDestructed));
    for (uint32_t i = 1; i < n; ++i) contracts.push_back(ctx.builder.make_address());

    // The second contract carries a full life cycle: deployed successfully,
    // destructed later. Its oldest transaction is a healthy creation, so it
    // must never surface in the creation-failure detector.
    if (n >= 2) ctx.builder.add_successful_creation(ctx.funder, contracts[1], 50);

    for (uint32_t i = 0; i < n; ++i)
        ctx.builder.add_destruct_call(ctx.funder, contracts[i], ctx.refund, 0, 100 + i);

    std::vector<Address> funded;
    if (n >= 1) {
        // Showcase: 208 ETH deposited after destruction, plus a pre-destruction
        // approval that must annotate (not exclude) the finding.
        ctx.builder.add_token_approval(synd.address, contracts[0], whale, BigInt(1000), 90);
        ctx.builder.add_plain_transfer(ctx.funder, contracts[0], from_eth_str("208"), 150);
        ctx.builder.set_account(contracts[0], 0, from_eth_str("208"));
        funded.push_back(contracts[0]);
    }
    if (n >= 2) {
        ctx.builder.add_plain_transfer(ctx.funder, contracts[1], from_eth_str("1.5"), 151);
        ctx.builder.add_token_transfer(unpriced.address, whale, contracts[1], BigInt(42), 152);
        ctx.builder.set_account(contracts[1], 0, from_eth_str("1.5"));
        funded.push_back(contracts[1]);
    }
    if (n >= 3) {
        // CBC-only lock: zero ETH, positive token balance.
        ctx.builder.add_token_transfer(synd.address, whale, contracts[2],
                                       BigInt("500000000000000000000"), 153);
        ctx.builder.set_account(contracts[2], 0, 0);
        funded.push_back(contracts[2]);
    }

    auto& expected = ctx.manifest.expected[Category::destructed];
    expected.candidates += n;
    expected.findings = sorted(funded);

    const Json prices = standard_prices("369.02", {{synd, "1.00"}}, "September 2020");
    ctx.builder.write(dir, prices, manifest_to_json(ctx.manifest));
    return ctx.manifest;
}

FixtureManifest generate_destructed_mass(const Scenario& scenario, const fs::path& dir) {
    ScenarioContext ctx(scenario);
    const uint32_t n = scenario.n ? scenario.n : 50;
    const Address dispatcher = ctx.builder.make_address();
    std::vector<Address> children;
    for (uint32_t i = 0; i < n; ++i) children.push_back(ctx.builder.make_address());
    ctx.builder.add_mass_destruct(ctx.funder, dispatcher, children, ctx.refund, 200);

    std::vector<Address> funded;
    for (uint32_t i = 0; i < n; i += 5) {
        ctx.builder.add_plain_transfer(ctx.funder, children[i], from_eth_str("0.1"), 210 + i);
        ctx.builder.set_account(children[i], 0, from_eth_str("0.1"));
        funded.push_back(children[i]);
    }

    auto& expected = ctx.manifest.expected[Category::destructed];
    expected.candidates += n;
    expected.findings = sorted(funded);

    const Json prices = standard_prices("369.02", {}, "September 2020");
    ctx.builder.write(dir, prices, manifest_to_json(ctx.manifest));
    return ctx.manifest;
}

FixtureManifest generate_destructed_redeploy(const Scenario& scenario, const fs::path& dir) {
    ScenarioContext ctx(scenario);
    const Address locked = ctx.builder.make_address();
    const Address redeployed = ctx.builder.make_address();
    const Address empty = ctx.builder.make_address();

    ctx.builder.add_destruct_call(ctx.funder, locked, ctx.refund, 0, 100);
    ctx.builder.add_destruct_call(ctx.funder, redeployed, ctx.refund, 0, 101);
    ctx.builder.add_destruct_call(ctx.funder, empty, ctx.refund, 0, 102);

    ctx.builder.add_plain_transfer(ctx.funder, locked, from_eth_str("2"), 110);
    ctx.builder.set_account(locked, 0, from_eth_str("2"));

    // Funded, but live code again: a contract occupies the address now.
    ctx.builder.add_plain_transfer(ctx.funder, redeployed, from_eth_str("1"), 111);
    ctx.builder.set_account(redeployed, 1, from_eth_str("1"), trivial_runtime_code());

    auto& expected = ctx.manifest.expected[Category::destructed];
    expected.candidates += 3;
    expected.findings = {locked};

    const Json prices = standard_prices("369.02", {}, "September 2020");
    ctx.builder.write(dir, prices, manifest_to_json(ctx.manifest));
    return ctx.manifest;
}

FixtureManifest generate_parity_wallet(const Scenario& scenario, const fs::path& dir) {
    ScenarioContext ctx(scenario);
    const Address library = ctx.builder.make_address();
    const uint64_t attack_block = 400;
    add_attacked_library(ctx, library, attack_block);

    const TokenInfo synp{ctx.builder.make_address(), "SYNP", 2};
    ctx.builder.add_token(synp);
    const Address whale = ctx.builder.make_address();

    const Address wallet = Address::parse(kShowcaseWallet);
    auto& expected = ctx.manifest.expected[Category::attacked_parity];
    expected.candidates = 1;
    if (scenario.funded) {
        // 2,576.35 ETH total, of which 17.88 arrived after the attack, plus
        // 2.09$ of CBC. Deposits after the lock do not disqualify.
        ctx.builder.add_plain_transfer(ctx.funder, wallet, from_eth_str("2558.47"), 300);
        ctx.builder.add_token_transfer(synp.address, whale, wallet, BigInt(209), 350);
        ctx.builder.add_plain_transfer(ctx.funder, wallet, from_eth_str("17.88"), 450);
        ctx.builder.set_account(wallet, 1, from_eth_str("2576.35"), wallet_stub_code(library));
        expected.findings = {wallet};
    } else {
        ctx.builder.set_account(wallet, 1, 0, wallet_stub_code(library));
    }

    const Json prices = standard_prices("369.02", {{synp, "1.00"}}, "September 2020");
    ctx.builder.write(dir, prices, manifest_to_json(ctx.manifest));
    return ctx.manifest;
}

FixtureManifest generate_parity_decoy(const Scenario& scenario, const fs::path& dir) {
    ScenarioContext ctx(scenario);
    const Address library = ctx.builder.make_address();
    add_attacked_library(ctx, library, 400);

    const Address other_target = ctx.builder.make_address();
    const Address decoy1 = ctx.builder.make_address();
    const Address decoy2 = ctx.builder.make_address();
    const Address decoy3 = ctx.builder.make_address();

    // Funded decoy: screens positive, but the call target is calldata-bound.
    ctx.builder.add_plain_transfer(ctx.funder, decoy1, from_eth_str("1"), 420);
    ctx.builder.set_account(decoy1, 1, from_eth_str("1"), decoy_calldata_code(library));
    ctx.builder.set_account(decoy2, 1, 0, decoy_other_target_code(library, other_target));
    ctx.builder.set_account(decoy3, 1, 0, decoy_push32_code(library));

    auto& expected = ctx.manifest.expected[Category::attacked_parity];
    expected.candidates = 3;

    const Json prices = standard_prices("369.02", {}, "September 2020");
    ctx.builder.write(dir, prices, manifest_to_json(ctx.manifest));
    return ctx.manifest;
}

FixtureManifest generate_creation_failure(const Scenario& scenario, const fs::path& dir) {
    ScenarioContext ctx(scenario);
    const TokenInfo syne{ctx.builder.make_address(), "SYNE", 2};
    ctx.builder.add_token(syne);
    const Address whale = ctx.builder.make_address();
    const Address creator = ctx.builder.make_address();

    // 19 ETH across post_calls deposits after an out-of-gas creation.
    const Address account = Address::parse(kShowcaseEoa);
    ctx.builder.add_failed_creation(creator, account, 500, "out of gas");
    const uint32_t calls = std::max<uint32_t>(scenario.post_calls, 1);
    const Wei total = from_eth_str("19");
    for (uint32_t i = 0; i < calls; ++i)
        ctx.builder.add_plain_transfer(ctx.funder, account, split_share(total, calls, i),
                                       510 + i);
    ctx.builder.add_token_transfer(syne.address, whale, account, BigInt(700), 515);
    ctx.builder.set_account(account, 0, total);

    // Failed creation but nothing ever deposited: candidate only.
    const Address unfunded = ctx.builder.make_address();
    ctx.builder.add_failed_creation(creator, unfunded, 501, "out of gas");
    ctx.builder.set_account(unfunded, 0, 0);

    // Funded sensitive account with no history (e.g. a mining reward):
    // surfaces in diagnostics, never as a creation-failure candidate.
    const Address unexplained = ctx.builder.make_address();
    ctx.builder.set_account(unexplained, 0, from_eth_str("0.5"));

    auto& expected = ctx.manifest.expected[Category::creation_failure];
    expected.candidates = 2;
    expected.findings = {account};
    ctx.manifest.counters["unexplained_sensitive"] = 1;

    const Json prices = standard_prices("369.02", {{syne, "1.00"}}, "September 2020");
    ctx.builder.write(dir, prices, manifest_to_json(ctx.manifest));
    return ctx.manifest;
}

FixtureManifest generate_mixed(const Scenario& scenario, const fs::path& dir) {
    ScenarioContext ctx(scenario);
    const Address library = ctx.builder.make_address();
    add_attacked_library(ctx, library, 400);

    const TokenInfo synp{ctx.builder.make_address(), "SYNP", 18};
    ctx.builder.add_token(synp);
    const Address whale = ctx.builder.make_address();

    // Parity: 5 wallets (3 funded) + 2 decoys.
    std::vector<Address> wallets;
    std::vector<Address> parity_funded;
    for (int i = 0; i < 5; ++i) {
        const Address wallet = ctx.builder.make_address();
        wallets.push_back(wallet);
        if (i < 3) {
            if (i == 2) {
                ctx.builder.add_token_transfer(synp.address, whale, wallet,
                                               BigInt("300000000000000000000"), 350);
                ctx.builder.set_account(wallet, 1, 0, wallet_stub_code(library));
            } else {
                const Wei value = from_eth_str(i == 0 ? "2" : "1");
                ctx.builder.add_plain_transfer(ctx.funder, wallet, value, 300 + i);
                ctx.builder.set_account(wallet, 1, value, wallet_stub_code(library));
            }
            parity_funded.push_back(wallet);
        } else {
            ctx.builder.set_account(wallet, 1, 0, wallet_stub_code(library));
        }
    }
    const Address decoy1 = ctx.builder.make_address();
    const Address decoy2 = ctx.builder.make_address();
    ctx.builder.set_account(decoy1, 1, 0, decoy_calldata_code(library));
    ctx.builder.set_account(decoy2, 1, 0,
                            decoy_other_target_code(library, ctx.builder.make_address()));
    auto& parity = ctx.manifest.expected[Category::attacked_parity];
    parity.candidates = 7;
    parity.findings = sorted(parity_funded);

    // Destructed: 10 contracts, 3 funded after destruction.
    std::vector<Address> contracts;
    std::vector<Address> destructed_funded;
    for (int i = 0; i < 10; ++i) {
        const Address contract = ctx.builder.make_address();
        contracts.push_back(contract);
        ctx.builder.add_destruct_call(ctx.funder, contract, ctx.refund, 0, 100 + i);
        if (i < 3) {
            const Wei value = from_eth_str("0.5");
            ctx.builder.add_plain_transfer(ctx.funder, contract, value, 150 + i);
            ctx.builder.set_account(contract, 0, value);
            destructed_funded.push_back(contract);
        }
    }
    auto& destructed = ctx.manifest.expected[Category::destructed];
    destructed.candidates += 10;
    destructed.findings = sorted(destructed_funded);

    // Creation failures: 6 accounts, 2 funded.
    const Address creator = ctx.builder.make_address();
    std::vector<Address> eoa_funded;
    for (int i = 0; i < 6; ++i) {
        const Address account = ctx.builder.make_address();
        ctx.builder.add_failed_creation(creator, account, 500 + i, "out of gas");
        if (i < 2) {
            const Wei value = from_eth_str("0.25");
            ctx.builder.add_plain_transfer(ctx.funder, account, value, 520 + i);
            ctx.builder.set_account(account, 0, value);
            eoa_funded.push_back(account);
        } else {
            ctx.builder.set_account(account, 0, 0);
        }
    }
    auto& eoa = ctx.manifest.expected[Category::creation_failure];
    eoa.candidates = 6;
    eoa.findings = sorted(eoa_funded);

    const Json prices = standard_prices("369.02", {{synp, "1.00"}}, "September 2020");
    ctx.builder.write(dir, prices, manifest_to_json(ctx.manifest));
    return ctx.manifest;
}

/// Category counts and USD totals shaped like a full-scale report:
/// 173 / 203 / 191 findings and a 216,186,551.12$ grand total.
FixtureManifest generate_paper_shaped(const Scenario& scenario, const fs::path& dir) {
    ScenarioContext ctx(scenario);

    // Targets in cents; the ETH price (400.00$) divides them exactly:
    // wei_total = cents * 25e12.
    const BigInt wei_per_cent = BigInt(25) * BigInt("1000000000000");
    struct CategorySpec {
        Category category;
        uint32_t candidates;
        uint32_t funded;
        BigInt eth_cents;
        BigInt cbc_cents;  // raw token total = cbc_cents * 1e16 at 18 decimals
        const char* eth_usd;
        const char* cbc_usd;
    };
    const BigInt raw_per_cent = BigInt("10000000000000000");
    const CategorySpec destructed_spec{Category::destructed, 300, 173, BigInt("12384102"),
                                       BigInt("2503630509"), "123841.02", "25036305.09"};
    const CategorySpec parity_spec{Category::attacked_parity, 658, 203, BigInt("19006032819"),
                                   BigInt("95038079"), "190060328.19", "950380.79"};
    const CategorySpec eoa_spec{Category::creation_failure, 3720, 191, BigInt("1564076"),
                                BigInt("5527"), "15640.76", "55.27"};

    const Address library = ctx.builder.make_address();
    add_attacked_library(ctx, library, 400);

    const TokenInfo synd{ctx.builder.make_address(), "SYND", 18};
    const TokenInfo synp{ctx.builder.make_address(), "SYNP", 18};
    const TokenInfo syne{ctx.builder.make_address(), "SYNE", 18};
    for (const auto& token : {synd, synp, syne}) ctx.builder.add_token(token);
    const Address whale = ctx.builder.make_address();

    // Destructed contracts.
    {
        const BigInt wei_total = destructed_spec.eth_cents * wei_per_cent;
        const BigInt raw_total = destructed_spec.cbc_cents * raw_per_cent;
        std::vector<Address> funded;
        for (uint32_t i = 0; i < destructed_spec.candidates; ++i) {
            const Address contract = ctx.builder.make_address();
            ctx.builder.add_destruct_call(ctx.funder, contract, ctx.refund, 0, 100 + i);
            if (i < destructed_spec.funded) {
                const Wei value = split_share(wei_total, destructed_spec.funded, i);
                ctx.builder.add_plain_transfer(ctx.funder, contract, value, 600 + i);
                ctx.builder.set_account(contract, 0, value);
                ctx.builder.add_token_transfer(
                    synd.address, whale, contract,
                    split_share(raw_total, destructed_spec.funded, i), 90);
                funded.push_back(contract);
            }
        }
        auto& expected = ctx.manifest.expected[Category::destructed];
        expected.candidates += destructed_spec.candidates;
        expected.findings = sorted(funded);
        expected.eth_usd = destructed_spec.eth_usd;
        expected.cbc_usd = destructed_spec.cbc_usd;
    }

    // Attacked wallets: funded, empty, and decoy candidates sum to 658.
    {
        const BigInt wei_total = parity_spec.eth_cents * wei_per_cent;
        const BigInt raw_total = parity_spec.cbc_cents * raw_per_cent;
        const uint32_t empty_wallets = 305;
        const uint32_t decoys = parity_spec.candidates - parity_spec.funded - empty_wallets;
        std::vector<Address> funded;
        for (uint32_t i = 0; i < parity_spec.funded; ++i) {
            const Address wallet = ctx.builder.make_address();
            const Wei value = split_share(wei_total, parity_spec.funded, i);
            ctx.builder.add_plain_transfer(ctx.funder, wallet, value, 300);
            ctx.builder.add_token_transfer(synp.address, whale, wallet,
                                           split_share(raw_total, parity_spec.funded, i), 350);
            ctx.builder.set_account(wallet, 1, value, wallet_stub_code(library));
            funded.push_back(wallet);
        }
        for (uint32_t i = 0; i < empty_wallets; ++i)
            ctx.builder.set_account(ctx.builder.make_address(), 1, 0, wallet_stub_code(library));
        for (uint32_t i = 0; i < decoys; ++i)
            ctx.builder.set_account(ctx.builder.make_address(), 1, 0,
                                    decoy_calldata_code(library));
        auto& expected = ctx.manifest.expected[Category::attacked_parity];
        expected.candidates = parity_spec.candidates;
        expected.findings = sorted(funded);
        expected.eth_usd = parity_spec.eth_usd;
        expected.cbc_usd = parity_spec.cbc_usd;
    }

    // Creation-failure accounts.
    {
        const BigInt wei_total = eoa_spec.eth_cents * wei_per_cent;
        const BigInt raw_total = eoa_spec.cbc_cents * raw_per_cent;
        const Address creator = ctx.builder.make_address();
        std::vector<Address> funded;
        for (uint32_t i = 0; i < eoa_spec.candidates; ++i) {
            const Address account = ctx.builder.make_address();
            ctx.builder.add_failed_creation(creator, account, 1000 + i, "out of gas");
            if (i < eoa_spec.funded) {
                const Wei value = split_share(wei_total, eoa_spec.funded, i);
                ctx.builder.add_plain_transfer(ctx.funder, account, value, 6000 + i);
                ctx.builder.add_token_transfer(syne.address, whale, account,
                                               split_share(raw_total, eoa_spec.funded, i), 7000);
                ctx.builder.set_account(account, 0, value);
                funded.push_back(account);
            } else {
                ctx.builder.set_account(account, 0, 0);
            }
        }
        auto& expected = ctx.manifest.expected[Category::creation_failure];
        expected.candidates = eoa_spec.candidates;
        expected.findings = sorted(funded);
        expected.eth_usd = eoa_spec.eth_usd;
        expected.cbc_usd = eoa_spec.cbc_usd;
    }

    ctx.manifest.expected_grand_total_usd = "216186551.12";
    ctx.builder.enable_balance_overrides();

    const Json prices = standard_prices(
        "400.00", {{synd, "1.00"}, {synp, "1.00"}, {syne, "1.00"}}, "September 2020");
    ctx.builder.write(dir, prices, manifest_to_json(ctx.manifest));
    return ctx.manifest;
}

}  // namespace

std::string to_string(Scenario::Kind kind) {
    switch (kind) {
        case Scenario::Kind::destructed_basic: return "destructed_basic";
        case Scenario::Kind::destructed_mass: return "destructed_mass";
        case Scenario::Kind::destructed_redeploy: return "destructed_redeploy";
        case Scenario::Kind::parity_wallet: return "parity_wallet";
        case Scenario::Kind::parity_decoy: return "parity_decoy";
        case Scenario::Kind::creation_failure: return "creation_failure";
        case Scenario::Kind::mixed: return "mixed";
        case Scenario::Kind::paper_shaped: return "paper_shaped";
    }
    return "unknown";
}

std::optional<Scenario::Kind> scenario_kind_from_string(std::string_view text) {
    for (const auto kind :
         {Scenario::Kind::destructed_basic, Scenario::Kind::destructed_mass,
          Scenario::Kind::destructed_redeploy, Scenario::Kind::parity_wallet,
          Scenario::Kind::parity_decoy, Scenario::Kind::creation_failure, Scenario::Kind::mixed,
          Scenario::Kind::paper_shaped}) {
        if (to_string(kind) == text) return kind;
    }
    return std::nullopt;
}

FixtureManifest generate(const Scenario& scenario, const std::string& out_dir) {
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    switch (scenario.kind) {
        case Scenario::Kind::destructed_basic: return generate_destructed_basic(scenario, dir);
        case Scenario::Kind::destructed_mass: return generate_destructed_mass(scenario, dir);
        case Scenario::Kind::destructed_redeploy:
            return generate_destructed_redeploy(scenario, dir);
        case Scenario::Kind::parity_wallet: return generate_parity_wallet(scenario, dir);
        case Scenario::Kind::parity_decoy: return generate_parity_decoy(scenario, dir);
        case Scenario::Kind::creation_failure: return generate_creation_failure(scenario, dir);
        case Scenario::Kind::mixed: return generate_mixed(scenario, dir);
        case Scenario::Kind::paper_shaped: return generate_paper_shaped(scenario, dir);
    }
    throw Error("unknown scenario kind");
}

FixtureManifest load_manifest(const std::string& fixture_dir) {
    const fs::path path = fs::path(fixture_dir) / "manifest.json";
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open " + path.string());
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw LoadError("malformed manifest " + path.string() + ": " + e.what());
    }
    FixtureManifest manifest;
    manifest.scenario = j.value("scenario", "");
    manifest.seed = j.contains("seed") ? parse_dec_u64(j["seed"].get<std::string>()) : 0;
    if (j.contains("library_address") && !j["library_address"].is_null())
        manifest.library_address = Address::parse(j["library_address"].get<std::string>());
    if (j.contains("attack_block") && !j["attack_block"].is_null())
        manifest.attack_block = parse_dec_u64(j["attack_block"].get<std::string>());
    if (j.contains("expected")) {
        for (const auto& [name, e] : j["expected"].items()) {
            Category category;
            if (name == "destructed") category = Category::destructed;
            else if (name == "attacked_parity") category = Category::attacked_parity;
            else if (name == "creation_failure") category = Category::creation_failure;
            else continue;
            CategoryExpectation expectation;
            expectation.candidates = e.value("candidates", 0ull);
            if (e.contains("findings"))
                for (const auto& address : e["findings"])
                    expectation.findings.push_back(Address::parse(address.get<std::string>()));
            if (e.contains("eth_usd")) expectation.eth_usd = e["eth_usd"].get<std::string>();
            if (e.contains("cbc_usd")) expectation.cbc_usd = e["cbc_usd"].get<std::string>();
            manifest.expected[category] = std::move(expectation);
        }
    }
    if (j.contains("counters"))
        for (const auto& [key, count] : j["counters"].items())
            manifest.counters[key] = count.get<uint64_t>();
    if (j.contains("expected_grand_total_usd"))
        manifest.expected_grand_total_usd = j["expected_grand_total_usd"].get<std::string>();
    return manifest;
}

std::vector<std::string> validate_fixture(const std::string& fixture_dir) {
    std::vector<std::string> diagnostics;
    std::unique_ptr<ChainSource> source;
    try {
        source = open_fixture_source(fixture_dir);
    } catch (const Error& e) {
        diagnostics.push_back(e.what());
        return diagnostics;
    }

    // Suicide internal transactions must align with SELFDESTRUCT steps at
    // the same depth.
    for (const Hash32& hash : source->list_all_tx_hashes()) {
        const TraceRecord trace = source->get_trace(hash);
        std::map<uint32_t, int> selfdestruct_steps;
        for (const auto& step : trace.steps)
            if (step.opcode == "SELFDESTRUCT") ++selfdestruct_steps[step.depth];
        std::map<uint32_t, int> suicides;
        for (const auto& itx : trace.internal_txs) {
            if (itx.type != InternalTxType::suicide) continue;
            ++suicides[itx.depth];
            if (!itx.to)
                diagnostics.push_back("trace " + hash.to_string() +
                                      ": suicide internal tx without refund recipient");
        }
        for (const auto& [depth, count] : suicides) {
            const auto it = selfdestruct_steps.find(depth);
            if (it == selfdestruct_steps.end() || it->second < count)
                diagnostics.push_back("trace " + hash.to_string() + ": " + std::to_string(count) +
                                      " suicide internal tx(s) at depth " + std::to_string(depth) +
                                      " without matching SELFDESTRUCT steps");
        }
    }

    // When explicit token balances are present they must agree with the
    // event replay.
    const fs::path overrides_path = fs::path(fixture_dir) / "token_balances.json";
    if (fs::exists(overrides_path)) {
        std::ifstream in(overrides_path);
        Json overrides;
        try {
            in >> overrides;
        } catch (const nlohmann::json::exception& e) {
            diagnostics.push_back("token_balances.json: " + std::string(e.what()));
            return diagnostics;
        }
        for (const auto& entry : overrides) {
            try {
                const Address token = Address::parse(entry.at("token").get<std::string>());
                const Address holder = Address::parse(entry.at("holder").get<std::string>());
                const BigInt stated = parse_dec(entry.at("amount").get<std::string>());
                BigInt replayed = 0;
                for (const auto& event : source->list_token_events(holder)) {
                    if (event.kind != TokenEventKind::transfer || event.token != token) continue;
                    if (event.to_or_spender == holder) replayed += event.amount;
                    if (event.from == holder) replayed -= event.amount;
                }
                if (replayed != stated)
                    diagnostics.push_back("token_balances.json: stated balance " +
                                          stated.convert_to<std::string>() + " for holder " +
                                          holder.to_string() + " disagrees with event replay " +
                                          replayed.convert_to<std::string>());
            } catch (const Error& e) {
                diagnostics.push_back("token_balances.json: " + std::string(e.what()));
            }
        }
    }
    return diagnostics;
}

}  // namespace clue
