// Copyright 2026 The dqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dqc/resources.hpp"

#include "dqc/verification.hpp"
#include "gtest/gtest.h"

using namespace dqc;

namespace {

StabilizerCode toy_code() {
    StabilizerCode c;
    c.name = "toy";
    c.n = 2;
    c.k = 1;
    c.generators = {PauliString::from_str("ZZ")};
    c.logical_z = {PauliString::from_str("ZI")};
    c.logical_x = {PauliString::from_str("XX")};
    return c;
}

// Client 0 joined to hubs 1 and 2; every other server hangs off a hub.
Topology two_level(std::size_t leaves) {
    Topology t;
    t.add_node(0, Role::client);
    t.add_node(1, Role::server);
    t.add_node(2, Role::server);
    t.add_edge(0, 1);
    t.add_edge(0, 2);
    for (NodeId s = 3; s < 3 + leaves; s++) {
        t.add_node(s, Role::server);
        t.add_edge(s % 2 ? 1 : 2, s);
    }
    return t;
}

}  // namespace

TEST(predict, setup_formula) {
    EXPECT_EQ(predict_setup(steane_code()), (Tally{31, 69}));
    EXPECT_EQ(predict_setup(toy_code()), (Tally{3, 8}));
    auto broken = toy_code();
    broken.generators = {PauliString::from_str("XI")};
    EXPECT_THROW(predict_setup(broken), std::invalid_argument);
}

TEST(predict, verify_formula) {
    EXPECT_EQ(predict_verify(40), (Tally{80, 40}));
    EXPECT_EQ(predict_verify(0), (Tally{0, 0}));
    EXPECT_EQ(predict_verify(1), (Tally{2, 1}));
}

TEST(predict, compute_formula) {
    std::vector<LogicalGate> ht{{LogicalOp::H}, {LogicalOp::T}};
    auto c = predict_compute(ht);
    EXPECT_EQ(c.cost, (Tally{3, 4}));
    EXPECT_EQ(c.magic_states, 1u);
    EXPECT_EQ(predict_compute(std::span<const LogicalGate>{}).cost, (Tally{0, 0}));
    std::vector<LogicalGate> two{{LogicalOp::CNOT, 0, 1}, {LogicalOp::CNOT, 0, 1}};
    EXPECT_EQ(predict_compute(two).cost, (Tally{6, 8}));
    EXPECT_EQ(predict_compute(two).magic_states, 0u);
}

TEST(predict, compute_is_additive) {
    Rng rng(3);
    LogicalOp ops[5] = {LogicalOp::H, LogicalOp::S, LogicalOp::T, LogicalOp::CNOT, LogicalOp::CZ};
    for (int trial = 0; trial < 100; trial++) {
        std::vector<LogicalGate> a, b;
        for (std::size_t i = 0, n = rng.below(8); i < n; i++) {
            a.push_back({ops[rng.below(5)], 0, 1});
        }
        for (std::size_t i = 0, n = rng.below(8); i < n; i++) {
            b.push_back({ops[rng.below(5)], 0, 1});
        }
        auto ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        Tally sum = predict_compute(a).cost;
        sum += predict_compute(b).cost;
        EXPECT_EQ(predict_compute(ab).cost, sum);
        EXPECT_EQ(predict_compute(ab).magic_states, predict_compute(a).magic_states + predict_compute(b).magic_states);
    }
}

TEST(predict, link_cost_law) {
    for (std::size_t m = 1; m <= 5; m++) {
        EXPECT_EQ(link_cost(m).classical_bits, 2 + 2 * (m - 1));
        EXPECT_EQ(link_cost(m).bell_pairs, m + (m > 1 ? 1 : 0));
    }
    EXPECT_EQ(link_cost(0), (Tally{0, 0}));
}

TEST(reconcile, worked_example_is_exact) {
    SessionConfig cfg;
    cfg.gates = {{LogicalOp::H}, {LogicalOp::T}};
    cfg.k_trap = 40;
    cfg.seed = 8;
    auto r = run_verified_session(cfg);
    auto p = predict_session(cfg.code, cfg.gates, cfg.k_trap);
    EXPECT_EQ(p.total(), (Tally{114, 113}));
    auto rep = reconcile(p, r.ledger);
    EXPECT_TRUE(rep.exact) << ::testing::PrintToString(rep.discrepancies());
    EXPECT_EQ(rep.observed_total, (Tally{114, 113}));
    EXPECT_EQ(rep.blinding_bits, 160u);
    // Conservation: every logged bit is in the physical book.
    EXPECT_EQ(r.ledger.physical_total().classical_bits, r.log.total_bits());
}

TEST(reconcile, empty_session) {
    ResourceLedger ledger;
    auto rep = reconcile(CostPrediction{}, ledger);
    EXPECT_TRUE(rep.exact);
    EXPECT_EQ(rep.observed_total, (Tally{0, 0}));
}

TEST(reconcile, flags_an_unexplained_pair) {
    SessionConfig cfg;
    cfg.gates = {{LogicalOp::H}};
    cfg.k_trap = 2;
    auto r = run_verified_session(cfg);
    r.ledger.charge_pair(Phase::compute, Tag::model, false);
    auto rep = reconcile(predict_session(cfg.code, cfg.gates, cfg.k_trap), r.ledger);
    EXPECT_FALSE(rep.exact);
    ASSERT_EQ(rep.discrepancies().size(), 1u);
    EXPECT_EQ(rep.discrepancies()[0], "compute: 1 Bell pairs, 0 classical bits");
}

TEST(reconcile, extended_model_on_a_two_level_tree) {
    for (std::uint64_t seed = 0; seed < 5; seed++) {
        SessionConfig cfg;
        cfg.gates = {{LogicalOp::H, 0}, {LogicalOp::T, 0}, {LogicalOp::CNOT, 0, 1}};
        cfg.k_trap = 6;
        cfg.seed = seed;
        cfg.topology = two_level(18);
        auto r = run_verified_session(cfg);
        ASSERT_TRUE(r.accepted);
        std::vector<NodeId> traps;
        for (const auto &t : r.traps) {
            traps.push_back(t.position);
        }
        auto p = predict_session(cfg.code, cfg.gates, *cfg.topology, r.data_positions, traps);
        EXPECT_TRUE(p.extended);
        auto rep = reconcile(p, r.ledger);
        EXPECT_TRUE(rep.exact) << ::testing::PrintToString(rep.discrepancies());
        EXPECT_EQ(r.ledger.physical_total().classical_bits, r.log.total_bits());
    }
}
