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

// Acceptance suite: one PASS/FAIL line per criterion. Criterion 7 cannot hold
// for the uniform Pauli attack model (see README); it is reported as FAIL and
// does not fail the run, but its supporting checks must hold. Any other
// failure makes the exit status nonzero.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "dqc/localqec.hpp"
#include "dqc/recovery.hpp"
#include "dqc/resources.hpp"
#include "dqc/verification.hpp"

using namespace dqc;

namespace {

// Pinned tolerances and sizes.
constexpr double kFidelityTol = 1e-9;
constexpr double kExpectationTol = 1e-9;
constexpr double kTraceTol = 1e-9;
constexpr double kSigmas = 3.0;
constexpr double kAlpha = 0.001;
constexpr double kWorkedExampleSeconds = 60.0;
constexpr double kDetectionSeconds = 600.0;
constexpr int kEncodeSeeds = 50;
constexpr int kTeleportInputs = 100;
constexpr int kQecInputs = 200;
constexpr int kCompletenessSessions = 1000;
constexpr std::size_t kDetectionTrials = 10000;
constexpr std::size_t kBlindnessSessions = 10000;
constexpr int kRecoveryCases = 100;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char *f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Topology line(std::size_t hops) {
    Topology t;
    t.add_node(0, Role::client);
    for (NodeId i = 1; i <= hops; i++) {
        t.add_node(i, Role::server);
        t.add_edge(i - 1, i);
    }
    return t;
}

Mat2 random_unitary(Rng &rng) {
    Mat2 u = mat::I();
    for (int i = 0; i < 8; i++) {
        u = mat::mul(rng.bit() ? mat::H() : mat::T(), u);
    }
    return u;
}

std::vector<cplx> joint(SimState &sim, const std::vector<QubitRef> &qs) {
    for (std::size_t i = 1; i < qs.size(); i++) {
        sim.apply_controlled(mat::I(), qs[0], qs[i]);
    }
    return sim.amplitudes(qs);
}

double overlap(const std::vector<cplx> &a, const std::vector<cplx> &b) {
    cplx acc = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        acc += std::conj(a[i]) * b[i];
    }
    return std::norm(acc);
}

std::vector<NodeId> range_nodes(NodeId first, std::size_t count) {
    std::vector<NodeId> out;
    for (std::size_t i = 0; i < count; i++) {
        out.push_back(first + static_cast<NodeId>(i));
    }
    return out;
}

// 1. Worked example ledger.
Outcome worked_example() {
    auto t0 = std::chrono::steady_clock::now();
    SessionConfig cfg;
    cfg.gates = {{LogicalOp::H}, {LogicalOp::T}};
    cfg.k_trap = 40;
    cfg.topology = Topology::star(47);
    cfg.seed = 1;
    auto r = run_verified_session(cfg);
    double secs = seconds_since(t0);
    auto s = r.ledger.model(Phase::setup);
    auto v = r.ledger.model(Phase::verify);
    auto c = r.ledger.model(Phase::compute);
    auto t = r.ledger.model_total();
    bool ok = r.accepted && s == Tally{31, 69} && v == Tally{80, 40} && c == Tally{3, 4} && t == Tally{114, 113} &&
              secs < kWorkedExampleSeconds;
    return {ok, fmt("setup %llu/%llu verify %llu/%llu compute %llu/%llu total %llu/%llu in %.2fs",
                    (unsigned long long)s.bell_pairs, (unsigned long long)s.classical_bits,
                    (unsigned long long)v.bell_pairs, (unsigned long long)v.classical_bits,
                    (unsigned long long)c.bell_pairs, (unsigned long long)c.classical_bits,
                    (unsigned long long)t.bell_pairs, (unsigned long long)t.classical_bits, secs)};
}

// 2. Encoding correctness and leaf marginals.
Outcome encoding() {
    auto code = steane_code();
    double worst_exp = 0, worst_td = 0;
    for (int seed = 0; seed < kEncodeSeeds; seed++) {
        Network net(Topology::star(7), Rng(1000 + seed));
        auto res = encode_distributed(net, code, range_nodes(1, 7));
        for (const auto &op : code.encoding_operators()) {
            worst_exp = std::max(worst_exp, std::abs(1 - net.sim().expectation(op, res.block.qubits)));
        }
        for (auto q : res.block.qubits) {
            worst_td = std::max(worst_td, trace_distance_to_mixed(net.sim().reduced_density(q)));
        }
    }
    return {worst_exp <= kExpectationTol && worst_td <= kTraceTol,
            fmt("%d seeds, max |1-<g>| %.2e, max leaf trace distance %.2e", kEncodeSeeds, worst_exp, worst_td)};
}

// 3. Gate teleportation against the direct controlled-U.
Outcome teleportation() {
    double worst = 0;
    int runs = 0;
    auto check = [&](std::size_t hops, std::uint64_t seed) {
        Rng rng(seed);
        Mat2 u = random_unitary(rng);
        Mat2 prep[3] = {random_unitary(rng), random_unitary(rng), random_unitary(rng)};
        auto prepare = [&](SimState &sim, QubitRef c, QubitRef t, QubitRef s) {
            sim.apply(prep[0], c);
            sim.apply(prep[1], t);
            sim.apply(prep[2], s);
            sim.cx(s, c);
        };
        Network net(line(hops), Rng(seed + 77));
        auto c = net.allocate(0);
        auto t = net.allocate(static_cast<NodeId>(hops));
        auto s = net.allocate(0);
        prepare(net.sim(), c, t, s);
        if (hops == 1) {
            scst(net, c, t, u, net.create_bell_pair(0, 1));
        } else {
            distributed_cu(net, c, t, u);
        }
        SimState ref;
        auto rc = ref.allocate(), rt = ref.allocate(), rs = ref.allocate();
        prepare(ref, rc, rt, rs);
        ref.apply_controlled(u, rc, rt);
        worst = std::max(worst, 1 - overlap(joint(net.sim(), {c, t, s}), joint(ref, {rc, rt, rs})));
        runs++;
    };
    for (std::size_t hops = 1; hops <= 3; hops++) {
        for (int i = 0; i < kTeleportInputs; i++) {
            check(hops, 10000 * hops + static_cast<std::uint64_t>(i));
        }
    }
    return {worst <= kFidelityTol, fmt("%d runs over 1-3 hops, max infidelity %.2e", runs, worst)};
}

// 4. Local QEC tables and correction.
Outcome local_qec() {
    auto [m1, m2] = syndrome_tables();
    std::size_t ok1 = 0, ok2 = 0;
    for (const auto &c : m1.cells) {
        auto s = simulate_cell(m1.method, c.error, c.position);
        ok1 += s.syndrome == c.syndrome && s.residual == c.residual;
    }
    for (const auto &c : m2.cells) {
        auto s = simulate_cell(m2.method, c.error, c.position);
        ok2 += s.syndrome == c.syndrome && s.residual == c.residual;
    }
    double worst = 0;
    int flags = 0, z_trials = 0;
    for (int i = 0; i < kQecInputs; i++) {
        Rng rng(i);
        double theta = std::acos(2 * rng.uniform() - 1), phi = 2 * std::numbers::pi * rng.uniform();
        std::vector<cplx> psi{std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)};
        auto round = [&](QecMethod m, InjectedError e, bool &flagged) {
            SimState sim{Rng(i)};
            QubitRef d = sim.allocate();
            QubitRef one[1] = {d};
            sim.overwrite(one, psi);
            auto r = qec_round(sim, m, d, std::span<const InjectedError>(&e, 1));
            flagged = r.flagged && r.syndrome == "00100";
            return sim.fidelity(one, psi);
        };
        bool flagged = false;
        for (char p : {'X', 'Y', 'Z'}) {
            worst = std::max(worst, 1 - round(QecMethod::four_qubit, {p, 1}, flagged));
        }
        for (std::size_t pos = 1; pos <= 6; pos++) {
            for (char p : {'X', 'Y'}) {
                worst = std::max(worst, 1 - round(QecMethod::six_qubit, {p, pos}, flagged));
                if (flagged) {
                    worst = 1;
                }
            }
            round(QecMethod::six_qubit, {'Z', pos}, flagged);
            flags += flagged;
            z_trials++;
        }
    }
    bool ok = ok1 == 12 && ok2 == 18 && worst <= kFidelityTol && flags == z_trials;
    return {ok, fmt("method 1 %zu/12, method 2 %zu/18, max infidelity %.2e, Z flagged %d/%d", ok1, ok2, worst, flags,
                    z_trials)};
}

// 5. Logical gate semantics.
Outcome logical_gates() {
    auto code = steane_code();
    double worst = 0, z_after_hh = 0;
    for (std::uint64_t seed = 0; seed < 10; seed++) {
        SessionConfig cfg;
        cfg.gates = {{LogicalOp::H}, {LogicalOp::T}};
        cfg.seed = seed;
        auto r = run_verified_session(cfg);
        worst = std::max(worst, 1 - (r.output ? r.output->fidelity : 0));
        cfg.gates = {{LogicalOp::H}, {LogicalOp::H}};
        auto hh = run_verified_session(cfg);
        z_after_hh = std::max(z_after_hh, std::abs(1 - (hh.output ? hh.output->bloch[0][2] : 0)));
    }
    return {worst <= kFidelityTol && z_after_hh <= kExpectationTol,
            fmt("T|+>_L max infidelity %.2e; after [H,H] max |1-<Z_L>| %.2e", worst, z_after_hh)};
}

// 6. Completeness.
Outcome completeness() {
    Rng rng(6);
    int accepted = 0;
    double worst = 0;
    LogicalOp one_qubit[3] = {LogicalOp::H, LogicalOp::S, LogicalOp::T};
    for (int i = 0; i < kCompletenessSessions; i++) {
        SessionConfig cfg;
        cfg.seed = rng.next();
        cfg.k_trap = rng.below(41);
        std::size_t len = 1 + rng.below(4);
        for (std::size_t g = 0; g < len; g++) {
            cfg.gates.push_back({one_qubit[rng.below(3)]});
        }
        if (i % 10 == 0) {
            cfg.k_trap = rng.below(5);
            cfg.gates = {{LogicalOp::H, 0}, {LogicalOp::CNOT, 0, 1}, {LogicalOp::T, 1}};
        }
        auto r = run_verified_session(cfg);
        if (r.accepted && r.output) {
            accepted++;
            worst = std::max(worst, 1 - r.output->fidelity);
        }
    }
    return {accepted == kCompletenessSessions && worst <= kFidelityTol,
            fmt("%d/%d honest sessions accepted, max infidelity %.2e", accepted, kCompletenessSessions, worst)};
}

// 7. Verifiability against the placement bound.
struct Verifiability {
    Outcome main;
    Outcome prediction;
    Outcome y_attack;
};

Verifiability verifiability() {
    auto t0 = std::chrono::steady_clock::now();
    struct Point {
        std::size_t n, k, d;
    };
    Point grid[3] = {{47, 40, 1}, {20, 10, 2}, {30, 15, 3}};
    Verifiability v;
    v.main.pass = v.prediction.pass = v.y_attack.pass = true;
    for (const auto &p : grid) {
        auto rec = detection_experiment(p.n, p.k, p.d, kDetectionTrials, 700 + p.n);
        auto y = detection_experiment(p.n, p.k, p.d, kDetectionTrials, 900 + p.n, 'Y');
        v.main.pass = v.main.pass && rec.within_bound;
        v.prediction.pass = v.prediction.pass && rec.matches_prediction;
        v.y_attack.pass = v.y_attack.pass && y.within_bound && y.matches_prediction;
        v.main.detail += fmt("(%zu,%zu,%zu) %.4f vs %.4f+%.4f; ", p.n, p.k, p.d, rec.empirical_rate,
                             rec.bound_placement, kSigmas * rec.sigma);
        v.prediction.detail +=
            fmt("(%zu,%zu,%zu) %.4f vs exact %.4f; ", p.n, p.k, p.d, rec.empirical_rate, rec.predicted_rate);
        v.y_attack.detail +=
            fmt("(%zu,%zu,%zu) %.4f vs %.4f; ", p.n, p.k, p.d, y.empirical_rate, y.bound_placement);
    }
    double secs = seconds_since(t0);
    v.main.pass = v.main.pass && secs < kDetectionSeconds;
    v.main.detail += fmt("%.1fs", secs);
    return v;
}

// 8. Blindness probes.
Outcome blindness() {
    std::vector<LogicalGate> a{{LogicalOp::H}}, b{{LogicalOp::S}};
    auto rep = blindness_probe(steane_code(), a, b, 4, kBlindnessSessions, 8, kAlpha);
    return {rep.passed, fmt("%zu sessions per task, frequency p %.3f, runs p %.3f, equal instruction counts %s",
                            rep.sessions, rep.frequency_p, rep.runs_p, rep.instruction_counts_equal ? "yes" : "no")};
}

// 9. Recovery from tracked stabilizers.
Outcome recovery() {
    auto code = steane_code();
    auto rules = derive_transversal_rules(code);
    Rng rng(9);
    int matched = 0, cost_ok = 0;
    double worst = 0;
    for (int c = 0; c < kRecoveryCases; c++) {
        std::size_t blocks = 1 + rng.below(2);
        std::size_t total = 7 * blocks;
        Network net(Topology::star(2 * total), Rng(rng.next()));
        LogicalMachine m;
        m.code = &code;
        m.rules = rules;
        for (std::size_t b = 0; b < blocks; b++) {
            auto hosts = range_nodes(static_cast<NodeId>(1 + 7 * b), 7);
            m.blocks.push_back(encode_distributed(net, code, hosts).block);
            m.positions.insert(m.positions.end(), hosts.begin(), hosts.end());
        }
        Checkpoint cp = initial_checkpoint(code, blocks, m.positions);
        std::size_t len = rng.below(11);
        for (std::size_t i = 0; i < len; i++) {
            LogicalOp ops[4] = {LogicalOp::H, LogicalOp::S, LogicalOp::CZ, LogicalOp::CNOT};
            LogicalOp op = ops[rng.below(blocks > 1 ? 4 : 2)];
            std::size_t a = rng.below(blocks);
            LogicalGate g{op, a, is_two_qubit(op) ? (a + 1) % blocks : 0};
            execute_logical_gate(net, m, g);
            cp = track(cp, g, rules);
        }
        auto live = block_qubits(m.blocks);
        std::vector<double> reference;
        for (const auto &p : cp.tracked) {
            reference.push_back(net.sim().expectation(p, live));
        }
        auto fresh = recover(net, cp, m.blocks, range_nodes(static_cast<NodeId>(total + 1), total));
        auto qs = block_qubits(fresh);
        bool all = true;
        for (std::size_t i = 0; i < cp.tracked.size(); i++) {
            double e = net.sim().expectation(cp.tracked[i], qs);
            double dev = std::max(std::abs(e - reference[i]), std::abs(1 - e));
            worst = std::max(worst, dev);
            all = all && dev <= kExpectationTol;
        }
        matched += all;
        cost_ok += net.ledger().model(Phase::recovery) == recovery_cost(cp);
    }
    return {matched == kRecoveryCases && cost_ok == kRecoveryCases,
            fmt("%d/%d prefixes match, max deviation %.2e, ledger cost exact in %d/%d", matched, kRecoveryCases, worst,
                cost_ok, kRecoveryCases)};
}

// 10. Swap cost law.
Outcome swap_law() {
    bool ok = true;
    std::string detail;
    for (std::size_t m = 1; m <= 5; m++) {
        Network net(line(m), Rng(m));
        auto path = shortest_path(net.topology(), 0, static_cast<NodeId>(m));
        auto pair = swap_entanglement_along(net, path);
        QubitRef q[2] = {pair.qa, pair.qb};
        auto pairs = net.ledger().physical_total().bell_pairs;
        auto bits = net.ledger().swap_activity().classical_bits;
        ok = ok && pairs == m && bits == 2 * (m - 1) && net.sim().fidelity(q, phi_plus_state()) > 1 - kFidelityTol;
        detail += fmt("m=%zu: %llu pairs %llu bits; ", m, (unsigned long long)pairs, (unsigned long long)bits);
    }
    return {ok, detail};
}

void print(const char *id, const char *name, const Outcome &o, const char *note = nullptr) {
    std::printf("[%s] %s %s: %s%s%s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), note ? " " : "",
                note ? note : "");
    std::fflush(stdout);
}

}  // namespace

int main() {
    int unexpected = 0;
    auto run = [&](const char *id, const char *name, const std::function<Outcome()> &f) {
        Outcome o;
        try {
            o = f();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        print(id, name, o);
        unexpected += o.pass ? 0 : 1;
    };
    run("1", "worked example ledger", worked_example);
    run("2", "encoding correctness", encoding);
    run("3", "gate teleportation", teleportation);
    run("4", "local QEC tables", local_qec);
    run("5", "logical gate semantics", logical_gates);
    run("6", "completeness", completeness);

    Verifiability v = verifiability();
    print("7", "verifiability bound", v.main,
          v.main.pass ? nullptr
                      : "(known: a hit trap still passes a uniform Pauli with probability 1/3, so the "
                        "placement-only bound cannot hold)");
    print("7a", "exact undetected-rate formula", v.prediction);
    print("7b", "bound under Y attacks", v.y_attack);
    unexpected += v.prediction.pass ? 0 : 1;
    unexpected += v.y_attack.pass ? 0 : 1;

    run("8", "blindness probes", blindness);
    run("9", "stabilizer recovery", recovery);
    run("10", "swap cost law", swap_law);
    std::printf("%d unexpected failure(s)\n", unexpected);
    return unexpected == 0 ? 0 : 1;
}
