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

// Batch scenario runner. JSON documents go to stdout (or --out), a short
// human-readable summary to stderr.
//
// Exit codes: 0 ok, 1 usage or configuration error, 2 protocol abort,
// 3 invariant breach.

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "dqc/io.hpp"
#include "dqc/localqec.hpp"
#include "dqc/report.hpp"
#include "dqc/resources.hpp"
#include "dqc/verification.hpp"

namespace {

using namespace dqc;
using nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kAbort = 2;
constexpr int kBreach = 3;

struct Options {
    std::string code = "steane";
    std::string topology;
    std::size_t star = 0;
    std::string gates;
    std::size_t traps = 0;
    std::string adversary = "honest";
    std::uint64_t seed = 0;
    std::size_t trials = 1;
    std::string out;
    std::string readout = "eager";
    int method = 1;
    std::size_t n = 47;
    std::size_t d = 1;
    std::string pauli;
};

void emit(const Options &o, const ordered_json &doc) {
    std::string text = doc.dump(2) + "\n";
    if (o.out.empty()) {
        std::cout << text;
    } else {
        io::write_file(o.out, text);
    }
}

std::optional<Topology> scenario_topology(const Options &o) {
    if (!o.topology.empty() && o.star != 0) {
        throw std::invalid_argument("--topology and --star are mutually exclusive");
    }
    if (!o.topology.empty()) {
        return io::parse_topology(io::read_file(o.topology));
    }
    if (o.star != 0) {
        return Topology::star(o.star);
    }
    return std::nullopt;
}

SyndromeReadout readout_mode(const Options &o) {
    return o.readout == "deferred" ? SyndromeReadout::deferred : SyndromeReadout::eager;
}

int cmd_encode(const Options &o) {
    StabilizerCode code = io::load_code(o.code);
    Topology topo = scenario_topology(o).value_or(Topology::star(code.n));
    auto servers = topo.servers();
    if (servers.size() < code.n) {
        throw std::invalid_argument("topology has too few servers for an n = " + std::to_string(code.n) + " code");
    }
    std::vector<NodeId> hosts(servers.begin(), servers.begin() + static_cast<std::ptrdiff_t>(code.n));
    Network net(topo, Rng(o.seed));
    auto res = encode_distributed(net, code, hosts, readout_mode(o));

    ordered_json ops = ordered_json::array();
    for (const auto &op : code.encoding_operators()) {
        ops.push_back({{"operator", op.str()}, {"expectation", net.sim().expectation(op, res.block.qubits)}});
    }
    ordered_json leaves = ordered_json::array();
    double worst = 0;
    for (std::size_t j = 0; j < code.n; j++) {
        double td = trace_distance_to_mixed(net.sim().reduced_density(res.block.qubits[j]));
        worst = std::max(worst, td);
        leaves.push_back({{"node", hosts[j]}, {"trace_distance_to_mixed", td}});
    }
    ordered_json doc;
    doc["command"] = "encode";
    doc["code"] = code.name;
    doc["seed"] = o.seed;
    doc["hosts"] = hosts;
    doc["syndrome"] = res.syndrome;
    doc["correction"] = res.correction.str();
    doc["expectations"] = ops;
    doc["leaves"] = leaves;
    doc["predicted_setup"] = report::tally(predict_setup(code, topo, hosts));
    doc["ledger"] = report::ledger(net.ledger());
    emit(o, doc);
    auto setup = net.ledger().model(Phase::setup);
    std::cerr << "encoded " << code.name << " on " << code.n << " servers: setup " << setup.bell_pairs
              << " Bell pairs, " << setup.classical_bits << " classical bits, max leaf trace distance " << worst
              << "\n";
    return kOk;
}

SessionConfig session_config(const Options &o) {
    SessionConfig cfg;
    cfg.code = io::load_code(o.code);
    if (!o.gates.empty()) {
        cfg.gates = io::parse_gates(io::read_file(o.gates));
    }
    cfg.k_trap = o.traps;
    cfg.adversary = io::parse_adversary(o.adversary);
    cfg.seed = o.seed;
    cfg.topology = scenario_topology(o);
    cfg.readout = readout_mode(o);
    return cfg;
}

CostPrediction prediction_for(const SessionConfig &cfg, const SessionReport &r) {
    if (!cfg.topology || cfg.topology->is_star()) {
        return predict_session(cfg.code, cfg.gates, cfg.k_trap);
    }
    std::vector<NodeId> traps;
    for (const auto &t : r.traps) {
        traps.push_back(t.position);
    }
    return predict_session(cfg.code, cfg.gates, *cfg.topology, r.data_positions, traps);
}

ordered_json session_doc(const SessionConfig &cfg, const SessionReport &r) {
    auto p = prediction_for(cfg, r);
    return report::session(r, p, reconcile(p, r.ledger));
}

/// Runs seeded sessions across worker threads; results land by trial index
/// so the merged document does not depend on scheduling.
std::vector<SessionReport> run_trials(const SessionConfig &base, std::size_t trials) {
    std::vector<SessionReport> out(trials);
    std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), trials));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    Rng root(base.seed);
    for (std::size_t w = 0; w < workers; w++) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < trials; i += workers) {
                    SessionConfig cfg = base;
                    cfg.seed = root.split(i).seed();
                    out[i] = run_verified_session(cfg);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

int cmd_session(const Options &o) {
    SessionConfig cfg = session_config(o);
    if (o.trials <= 1) {
        auto r = run_verified_session(cfg);
        auto doc = session_doc(cfg, r);
        emit(o, doc);
        auto total = r.ledger.model_total();
        std::cerr << "session " << (r.accepted ? "accepted" : "aborted") << ": " << total.bell_pairs
                  << " Bell pairs, " << total.classical_bits << " classical bits";
        if (r.output) {
            std::cerr << ", fidelity " << r.output->fidelity;
        }
        std::cerr << "\n";
        return r.accepted ? kOk : kAbort;
    }
    auto reports = run_trials(cfg, o.trials);
    ordered_json runs = ordered_json::array();
    std::size_t accepted = 0;
    double min_fidelity = 1;
    for (const auto &r : reports) {
        accepted += r.accepted ? 1 : 0;
        ordered_json row = {{"seed", r.seed}, {"verdict", r.accepted ? "accepted" : "aborted"}};
        if (r.output) {
            row["fidelity"] = r.output->fidelity;
            min_fidelity = std::min(min_fidelity, r.output->fidelity);
        }
        runs.push_back(row);
    }
    ordered_json doc;
    doc["command"] = "session";
    doc["seed"] = o.seed;
    doc["trials"] = o.trials;
    doc["accepted"] = accepted;
    doc["aborted"] = o.trials - accepted;
    doc["min_accepted_fidelity"] = accepted ? ordered_json(min_fidelity) : ordered_json(nullptr);
    doc["runs"] = runs;
    emit(o, doc);
    std::cerr << accepted << "/" << o.trials << " sessions accepted\n";
    return accepted == o.trials ? kOk : kAbort;
}

int cmd_cost_report(const Options &o) {
    SessionConfig cfg = session_config(o);
    cfg.adversary = AdversaryStrategy::honest();
    auto r = run_verified_session(cfg);
    auto p = prediction_for(cfg, r);
    auto rec = reconcile(p, r.ledger);
    ordered_json doc = report::cost(p, rec);
    emit(o, doc);
    std::cerr << "predicted " << rec.predicted_total.bell_pairs << "/" << rec.predicted_total.classical_bits
              << ", observed " << rec.observed_total.bell_pairs << "/" << rec.observed_total.classical_bits
              << (rec.exact ? " (exact)" : " (MISMATCH)") << "\n";
    return rec.exact ? kOk : kBreach;
}

int cmd_qec_table(const Options &o) {
    auto [m1, m2] = syndrome_tables();
    const SyndromeTable &table = o.method == 1 ? m1 : m2;
    std::vector<SyndromeCell> simulated;
    for (const auto &c : table.cells) {
        simulated.push_back(simulate_cell(table.method, c.error, c.position));
    }
    auto doc = report::qec_table(table, simulated);
    emit(o, doc);
    std::size_t matched = doc["matched"];
    std::cerr << table.to_text() << matched << "/" << table.cells.size() << " cells match\n";
    return matched == table.cells.size() ? kOk : kBreach;
}

int cmd_detect(const Options &o) {
    if (o.trials < 1000) {
        throw std::invalid_argument("detect needs --trials >= 1000");
    }
    std::optional<char> only;
    if (!o.pauli.empty()) {
        only = o.pauli[0];
    }
    auto rec = detection_experiment(o.n, o.traps, o.d, o.trials, o.seed, only);
    emit(o, report::detection(rec));
    std::cerr << "undetected " << rec.undetected << "/" << rec.trials << " = " << rec.empirical_rate
              << ", bound " << rec.bound_placement << " + 3 sigma " << 3 * rec.sigma << ": "
              << report::detection_verdict(rec) << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Noise-aware delegated quantum computation: scenario runner"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--seed", o.seed, "RNG seed; equal seeds give identical output");
        sub->add_option("--out", o.out, "Write the JSON document here instead of stdout");
    };
    auto add_scenario = [&](CLI::App *sub) {
        add_common(sub);
        sub->add_option("--code", o.code, "Built-in code name (steane) or code file");
        sub->add_option("--topology", o.topology, "Topology file")->check(CLI::ExistingFile);
        sub->add_option("--star", o.star, "Star topology with N servers")->check(CLI::PositiveNumber);
        sub->add_option("--readout", o.readout, "Syndrome readout order")
            ->check(CLI::IsMember({"eager", "deferred"}));
    };

    auto *encode = app.add_subcommand("encode", "Distributed encoding of |0>_L");
    add_scenario(encode);

    auto *session = app.add_subcommand("session", "Verified session with traps and an adversary");
    add_scenario(session);
    session->add_option("--gates", o.gates, "Gate sequence file")->check(CLI::ExistingFile);
    session->add_option("--traps", o.traps, "Number of trap qubits");
    session->add_option("--adversary", o.adversary, "honest | pauli:POS:P[,POS:P] | random:D[:P] | lie:PROB");
    session->add_option("--trials", o.trials, "Independent sessions, seeded from --seed")
        ->check(CLI::PositiveNumber);

    auto *cost = app.add_subcommand("cost-report", "Predicted against observed resource costs");
    add_scenario(cost);
    cost->add_option("--gates", o.gates, "Gate sequence file")->check(CLI::ExistingFile);
    cost->add_option("--traps", o.traps, "Number of trap qubits");

    auto *qec = app.add_subcommand("qec-table", "Simulate and check a local QEC syndrome table");
    add_common(qec);
    qec->add_option("--method", o.method, "1 (four-qubit) or 2 (six-qubit)")->required()->check(CLI::Range(1, 2));

    auto *detect = app.add_subcommand("detect", "Trap detection Monte Carlo");
    add_common(detect);
    detect->add_option("--positions", o.n, "Total positions N");
    detect->add_option("--traps", o.traps, "Trap count k_trap")->required();
    detect->add_option("--pathways", o.d, "Attacked positions d");
    detect->add_option("--trials", o.trials, "Monte Carlo trials (>= 1000)")->required();
    detect->add_option("--pauli", o.pauli, "Restrict attacks to one Pauli")->check(CLI::IsMember({"X", "Y", "Z"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*encode) {
            return cmd_encode(o);
        }
        if (*session) {
            return cmd_session(o);
        }
        if (*cost) {
            return cmd_cost_report(o);
        }
        if (*qec) {
            return cmd_qec_table(o);
        }
        return cmd_detect(o);
    } catch (const InvariantError &e) {
        std::cerr << "invariant breach: " << e.what() << "\n";
        return kBreach;
    } catch (const ResourceExhausted &e) {
        std::cerr << "aborted: " << e.what() << "\n";
        return kAbort;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
