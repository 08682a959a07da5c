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

#include "dqc/io.hpp"

#include "dqc/report.hpp"
#include "gtest/gtest.h"

using namespace dqc;

namespace {

std::string data(const std::string &name) {
    return std::string(DQC_TEST_DATA_DIR) + "/" + name;
}

}  // namespace

TEST(code_file, loads_steane_and_round_trips) {
    auto code = io::load_code(data("steane.code"));
    auto builtin = steane_code();
    EXPECT_EQ(code.generators, builtin.generators);
    EXPECT_EQ(code.logical_z, builtin.logical_z);
    EXPECT_EQ(code.logical_x, builtin.logical_x);
    EXPECT_EQ(io::format_code(io::parse_code(io::format_code(code))), io::format_code(code));
    EXPECT_EQ(io::load_code("steane").n, 7u);
}

TEST(code_file, validation_lists_violations) {
    try {
        io::load_code(data("bad.code"));
        FAIL() << "expected rejection";
    } catch (const std::invalid_argument &e) {
        EXPECT_NE(std::string(e.what()).find("anticommute"), std::string::npos) << e.what();
    }
    EXPECT_THROW(io::parse_code("7 1\nXXX\n"), io::ParseError);
    EXPECT_THROW(io::parse_code("2 1\nQI\nZI\nXX\n"), io::ParseError);
    EXPECT_THROW(io::load_code(data("missing.code")), std::invalid_argument);
}

TEST(topology_file, parse_and_format) {
    auto t = io::parse_topology(io::read_file(data("line3.topo")));
    EXPECT_EQ(t.client(), 0u);
    EXPECT_EQ(t.servers().size(), 3u);
    EXPECT_EQ(shortest_path(t, 0, 3).size(), 4u);
    EXPECT_EQ(io::format_topology(t), "client: 0\n0 1\n1 2\n2 3\n");
    EXPECT_EQ(io::format_topology(io::parse_topology(io::format_topology(Topology::star(3)))),
              io::format_topology(Topology::star(3)));
    EXPECT_THROW(io::parse_topology("server: 0\n0 1\n"), io::ParseError);
    EXPECT_THROW(io::parse_topology("client: 0\n0 1 2\n"), io::ParseError);
    EXPECT_THROW(io::parse_topology("client: 0\n1 2\n"), std::invalid_argument);
}

TEST(gate_file, parse_and_format) {
    auto gates = io::parse_gates(io::read_file(data("bell.gates")));
    ASSERT_EQ(gates.size(), 2u);
    EXPECT_EQ(gates[1], (LogicalGate{LogicalOp::CNOT, 0, 1}));
    EXPECT_EQ(io::format_gates(gates), "H 0\nCNOT 0 1\n");
    EXPECT_TRUE(io::parse_gates("# nothing\n\n").empty());
    EXPECT_THROW(io::parse_gates("H 0\nRX 1\n"), io::ParseError);
    EXPECT_THROW(io::parse_gates("CNOT 0\n"), io::ParseError);
    EXPECT_THROW(io::parse_gates("CZ 1 1\n"), io::ParseError);
    EXPECT_THROW(io::parse_gates("H -1\n"), io::ParseError);
}

TEST(state_dump, omits_tiny_amplitudes_and_round_trips) {
    std::vector<cplx> amps{cplx(0.6, 0), cplx(1e-13, 0), cplx(0, -0.8), 0};
    auto text = io::dump_state(amps);
    EXPECT_EQ(text, "0 0.59999999999999998 0\n2 0 -0.80000000000000004\n");
    auto back = io::parse_state(text, 4);
    EXPECT_EQ(back[0], amps[0]);
    EXPECT_EQ(back[2], amps[2]);
    EXPECT_EQ(back[1], cplx(0));
    EXPECT_THROW(io::parse_state("9 1 0\n", 4), io::ParseError);
}

TEST(adversary_spec, forms) {
    EXPECT_EQ(io::parse_adversary("honest").kind, AdversaryStrategy::Kind::honest);
    auto p = io::parse_adversary("pauli:3:Y,5:X");
    EXPECT_EQ(p.kind, AdversaryStrategy::Kind::fixed_pauli);
    EXPECT_EQ(p.attacks, (std::vector<std::pair<NodeId, char>>{{3, 'Y'}, {5, 'X'}}));
    auto r = io::parse_adversary("random:4:Z");
    EXPECT_EQ(r.pathways, 4u);
    EXPECT_EQ(r.only, 'Z');
    EXPECT_FALSE(io::parse_adversary("random:2").only.has_value());
    EXPECT_DOUBLE_EQ(io::parse_adversary("lie:0.25").flip_probability, 0.25);
    for (const char *bad : {"pauli:", "pauli:3:Q", "random:x", "lie:2", "lie:0.5x", "spooky"}) {
        EXPECT_THROW(io::parse_adversary(bad), std::invalid_argument) << bad;
    }
}

TEST(json_report, detection_record_fields) {
    auto rec = detection_experiment(10, 10, 1, 1000, 1);
    auto j = report::detection(rec);
    for (const char *key : {"N", "k_trap", "d", "trials", "undetected_count", "empirical_rate", "bound_placement",
                            "bound_exponential", "verdict"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["verdict"], "vacuous_bound");
    auto none = detection_experiment(10, 0, 1, 1000, 1);
    EXPECT_DOUBLE_EQ(none.empirical_rate, 1.0);
    EXPECT_EQ(report::detection(none)["verdict"], "within_bound");
}

TEST(json_report, session_document_is_deterministic) {
    SessionConfig cfg;
    cfg.gates = io::parse_gates(io::read_file(data("h_t.gates")));
    cfg.k_trap = 40;
    cfg.seed = 12;
    auto dump = [&] {
        auto s = run_verified_session(cfg);
        auto p = predict_session(cfg.code, cfg.gates, cfg.k_trap);
        return report::session(s, p, reconcile(p, s.ledger)).dump(2);
    };
    auto a = dump();
    EXPECT_EQ(a, dump());
    auto j = nlohmann::ordered_json::parse(a);
    EXPECT_EQ(j["verdict"], "accepted");
    EXPECT_EQ(j["cost"]["total"]["observed"]["bell_pairs"], 114);
    EXPECT_EQ(j["cost"]["total"]["observed"]["classical_bits"], 113);
}
