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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqc/network.hpp"
#include "dqc/pauli.hpp"
#include "dqc/protocols.hpp"
#include "dqc/statesim.hpp"

namespace dqc {

/// A BB84 trap: |value> in the Z basis, or |+>/|-> for value 0/1 in X.
struct Trap {
    NodeId position = 0;
    Basis basis = Basis::Z;
    int value = 0;
};

struct TrapConfig {
    std::vector<Trap> traps;
    std::vector<NodeId> data_positions;

    bool is_trap(NodeId pos) const {
        for (const auto &t : traps) {
            if (t.position == pos) {
                return true;
            }
        }
        return false;
    }
};

/// Picks k_trap secret positions uniformly and a random BB84 state for each.
inline TrapConfig prepare_traps(std::span<const NodeId> positions, std::size_t k_trap, Rng &rng) {
    if (k_trap > positions.size()) {
        throw std::invalid_argument("more traps than positions");
    }
    std::vector<NodeId> shuffled(positions.begin(), positions.end());
    std::shuffle(shuffled.begin(), shuffled.end(), rng.engine());
    TrapConfig cfg;
    for (std::size_t i = 0; i < shuffled.size(); i++) {
        if (i < k_trap) {
            Trap t;
            t.position = shuffled[i];
            t.basis = rng.bit() ? Basis::X : Basis::Z;
            t.value = rng.bit() ? 1 : 0;
            cfg.traps.push_back(t);
        } else {
            cfg.data_positions.push_back(shuffled[i]);
        }
    }
    std::sort(cfg.traps.begin(), cfg.traps.end(), [](const Trap &a, const Trap &b) { return a.position < b.position; });
    std::sort(cfg.data_positions.begin(), cfg.data_positions.end());
    return cfg;
}

/// Prepares a fresh qubit in a trap's BB84 state.
inline void prepare_bb84(SimState &sim, QubitRef q, Basis basis, int value) {
    if (value) {
        sim.x(q);
    }
    if (basis == Basis::X) {
        sim.h(q);
    }
}

/// What a deviating server coalition can touch: qubits held at server nodes
/// and the classical log.
class ServerView {
   public:
    explicit ServerView(Network &net) : net_(net) {
    }

    std::vector<NodeId> servers() const {
        return net_.topology().servers();
    }

    std::vector<QubitRef> qubits_at(NodeId server) const {
        require_server(server);
        return net_.qubits_at(server);
    }

    void apply_pauli(NodeId server, char pauli) {
        require_server(server);
        if (pauli == 'I') {
            return;
        }
        for (auto q : net_.qubits_at(server)) {
            net_.sim().apply(mat::pauli(pauli), q);
        }
    }

    const ClassicalLog &log() const {
        return net_.log();
    }

   private:
    void require_server(NodeId node) const {
        if (net_.topology().role(node) != Role::server) {
            throw std::invalid_argument("adversary may only touch server nodes");
        }
    }
    Network &net_;
};

/// Server deviation model, applied between computation and trap readout.
struct AdversaryStrategy {
    enum class Kind { honest, fixed_pauli, random_pauli, lying_measurement };

    Kind kind = Kind::honest;
    /// fixed_pauli: (position, Pauli) pairs.
    std::vector<std::pair<NodeId, char>> attacks;
    /// random_pauli: number of attacked positions.
    std::size_t pathways = 0;
    /// random_pauli: if set, every attack uses this Pauli.
    std::optional<char> only;
    /// lying_measurement: probability of flipping each reported outcome.
    double flip_probability = 0;

    static AdversaryStrategy honest() {
        return {};
    }
    static AdversaryStrategy fixed_pauli(std::vector<std::pair<NodeId, char>> attacks) {
        AdversaryStrategy a;
        a.kind = Kind::fixed_pauli;
        a.attacks = std::move(attacks);
        return a;
    }
    static AdversaryStrategy random_pauli(std::size_t d, std::optional<char> only = std::nullopt) {
        AdversaryStrategy a;
        a.kind = Kind::random_pauli;
        a.pathways = d;
        a.only = only;
        return a;
    }
    static AdversaryStrategy lying_measurement(double p) {
        AdversaryStrategy a;
        a.kind = Kind::lying_measurement;
        a.flip_probability = p;
        return a;
    }

    /// Chooses the (position, Pauli) pairs for this run.
    std::vector<std::pair<NodeId, char>> plan(std::span<const NodeId> positions, Rng &rng) const {
        switch (kind) {
            case Kind::honest:
            case Kind::lying_measurement:
                return {};
            case Kind::fixed_pauli:
                return attacks;
            case Kind::random_pauli: {
                if (pathways > positions.size()) {
                    throw std::invalid_argument("more attacked pathways than positions");
                }
                std::vector<NodeId> pool(positions.begin(), positions.end());
                std::vector<std::pair<NodeId, char>> out;
                for (std::size_t i = 0; i < pathways; i++) {
                    std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
                    std::swap(pool[i], pool[j]);
                    char p = only.has_value() ? *only : "XYZ"[rng.below(3)];
                    out.emplace_back(pool[i], p);
                }
                return out;
            }
        }
        return {};
    }
};

struct TrapResult {
    NodeId position = 0;
    Basis basis = Basis::Z;
    int expected = 0;
    int reported = 0;
    bool passed = true;
};

struct SessionConfig {
    StabilizerCode code = steane_code();
    std::vector<LogicalGate> gates;
    std::size_t k_trap = 0;
    AdversaryStrategy adversary;
    std::uint64_t seed = 0;
    /// Defaults to a star with exactly n_data + k_trap servers.
    std::optional<Topology> topology;
    SyndromeReadout readout = SyndromeReadout::eager;
};

/// Only produced for accepted sessions.
struct SessionOutput {
    double fidelity = 0;
    std::vector<std::array<double, 3>> bloch;
};

struct SessionReport {
    bool accepted = false;
    std::vector<TrapResult> traps;
    std::vector<NodeId> data_positions;
    std::vector<std::pair<NodeId, char>> attacks;
    std::optional<SessionOutput> output;
    ResourceLedger ledger;
    ClassicalLog log;
    std::uint64_t seed = 0;
    std::size_t peak_block_width = 0;
    std::size_t positions = 0;
    std::size_t logical_qubits = 0;
    /// Instruction records received per position.
    std::map<NodeId, std::size_t> instruction_counts;
};

/// Runs encoding, dummy trap rounds, the logical circuit, the adversary hook
/// and trap verification. Any failed trap aborts the session and no output
/// is released.
inline SessionReport run_verified_session(const SessionConfig &cfg) {
    auto problems = validate_code(cfg.code);
    if (!problems.empty()) {
        throw std::invalid_argument("invalid code: " + problems.front());
    }
    std::size_t width = logical_width(cfg.gates);
    std::size_t n_data = cfg.code.n * width;
    std::size_t n_positions = n_data + cfg.k_trap;
    Topology topo = cfg.topology.has_value() ? *cfg.topology : Topology::star(n_positions);
    auto servers = topo.servers();
    if (servers.size() < n_positions) {
        throw std::invalid_argument("topology has " + std::to_string(servers.size()) + " servers but " +
                                    std::to_string(n_positions) + " positions are needed");
    }
    std::vector<NodeId> positions(servers.begin(), servers.begin() + static_cast<std::ptrdiff_t>(n_positions));

    Rng root(cfg.seed);
    Network net(topo, root.split("network"));
    Rng trap_rng = root.split("traps");
    Rng attack_rng = root.split("adversary");
    SimState &sim = net.sim();
    NodeId client = topo.client();

    SessionReport report;
    report.seed = cfg.seed;
    report.positions = n_positions;
    report.logical_qubits = width;

    TrapConfig traps = prepare_traps(positions, cfg.k_trap, trap_rng);
    report.data_positions = traps.data_positions;
    std::vector<QubitRef> trap_qubits;
    for (const auto &t : traps.traps) {
        trap_qubits.push_back(net.allocate(t.position));
        prepare_bb84(sim, trap_qubits.back(), t.basis, t.value);
    }

    LogicalMachine machine;
    machine.code = &cfg.code;
    machine.rules = derive_transversal_rules(cfg.code);
    machine.positions = positions;
    {
        Network::Context ctx(net, Phase::setup, Tag::model);
        auto ops = cfg.code.encoding_operators();
        CorrectionTable table(ops);
        for (std::size_t b = 0; b < width; b++) {
            std::span<const NodeId> hosts(traps.data_positions.data() + b * cfg.code.n, cfg.code.n);
            machine.blocks.push_back(encode_operators(net, ops, hosts, table, cfg.readout).block);
        }
    }
    {
        // Two identity gate teleportations per trap.
        Network::Context ctx(net, Phase::verify, Tag::blinding);
        for (std::size_t i = 0; i < traps.traps.size(); i++) {
            for (int round = 0; round < 2; round++) {
                QubitRef dummy = net.allocate(client);
                sim.h(dummy);
                auto route = shortest_path(topo, client, traps.traps[i].position);
                BellPair pair = swap_entanglement_along(net, route);
                scst(net, dummy, trap_qubits[i], mat::I(), pair);
                sim.measure(dummy, Basis::X);
                net.retire(dummy);
            }
        }
    }
    {
        Network::Context ctx(net, Phase::compute, Tag::model);
        execute_logical_sequence(net, machine, cfg.gates);
    }

    ServerView view(net);
    report.attacks = cfg.adversary.plan(positions, attack_rng);
    for (const auto &[pos, p] : report.attacks) {
        view.apply_pauli(pos, p);
    }
    if (cfg.adversary.kind == AdversaryStrategy::Kind::lying_measurement) {
        double flip = cfg.adversary.flip_probability;
        net.outcome_filter = [flip, &attack_rng](NodeId, int bit) { return attack_rng.uniform() < flip ? bit ^ 1 : bit; };
    }

    {
        Network::Context ctx(net, Phase::verify, Tag::auxiliary);
        for (NodeId pos : positions) {
            std::vector<std::uint8_t> instr{0, 0};
            for (const auto &t : traps.traps) {
                if (t.position == pos) {
                    instr = {1, static_cast<std::uint8_t>(t.basis == Basis::X)};
                }
            }
            net.send_classical(client, pos, instr, MessageKind::instruction);
        }
    }
    {
        Network::Context ctx(net, Phase::verify, Tag::model);
        for (std::size_t i = 0; i < traps.traps.size(); i++) {
            const Trap &t = traps.traps[i];
            int bit = net.report_outcome(t.position, sim.measure(trap_qubits[i], t.basis));
            net.send_classical(t.position, client, {static_cast<std::uint8_t>(bit)}, MessageKind::readout);
            net.retire(trap_qubits[i]);
            report.traps.push_back(TrapResult{t.position, t.basis, t.value, bit, bit == t.value});
        }
    }
    net.outcome_filter = nullptr;

    report.accepted = std::all_of(report.traps.begin(), report.traps.end(), [](const TrapResult &r) { return r.passed; });
    if (report.accepted) {
        SessionOutput out;
        auto oracle = logical_oracle_state(cfg.gates, width);
        out.fidelity = encoded_fidelity(sim, cfg.code, machine.blocks, oracle);
        for (const auto &b : machine.blocks) {
            out.bloch.push_back(logical_bloch(sim, cfg.code, b));
        }
        report.output = out;
    }
    report.ledger = net.ledger();
    report.log = net.log();
    report.peak_block_width = sim.peak_block_width();
    for (const auto &[node, count] : net.log().received_counts(topo, MessageKind::instruction)) {
        if (std::find(positions.begin(), positions.end(), node) != positions.end()) {
            report.instruction_counts[node] = count;
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Detection statistics.

struct DetectionRecord {
    std::size_t n_positions = 0;
    std::size_t k_trap = 0;
    std::size_t pathways = 0;
    std::size_t trials = 0;
    std::size_t undetected = 0;
    double empirical_rate = 0;
    /// (1 - k/N)^d: counts only whether any trap is hit.
    double bound_placement = 0;
    /// exp(-d k / N).
    double bound_exponential = 0;
    /// Exact rate including the chance that a hit trap still passes.
    double predicted_rate = 0;
    /// Per-hit pass probability of the attack.
    double pass_probability = 0;
    /// Binomial standard deviation at the placement bound.
    double sigma = 0;
    bool within_bound = false;
    bool matches_prediction = false;
};

/// Probability that a Pauli drawn by the attack leaves a random BB84 trap
/// unchanged: X and Z each flip one basis, Y flips both.
inline double trap_pass_probability(const std::optional<char> &only) {
    if (!only.has_value()) {
        return 1.0 / 3.0;
    }
    switch (*only) {
        case 'X':
        case 'Z':
            return 0.5;
        case 'Y':
            return 0.0;
        case 'I':
            return 1.0;
    }
    throw std::invalid_argument("bad attack Pauli");
}

inline double log_binomial(std::size_t n, std::size_t k) {
    return std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
           std::lgamma(static_cast<double>(n - k) + 1);
}

/// Exact undetected probability: sum_j P(j traps among d hits) * q^j.
inline double predicted_undetected_rate(std::size_t n, std::size_t k, std::size_t d, double q) {
    double total = 0;
    for (std::size_t j = 0; j <= std::min(k, d); j++) {
        if (d - j > n - k) {
            continue;
        }
        double lp = log_binomial(k, j) + log_binomial(n - k, d - j) - log_binomial(n, d);
        total += std::exp(lp) * std::pow(q, static_cast<double>(j));
    }
    return total;
}

/// Trap-level Monte Carlo: N positions, k_trap BB84 traps, d attacked
/// positions per trial with independent non-identity Paulis.
inline DetectionRecord detection_experiment(std::size_t n, std::size_t k, std::size_t d, std::size_t trials,
                                            std::uint64_t seed, std::optional<char> only = std::nullopt) {
    if (k > n || d > n || n == 0) {
        throw std::invalid_argument("detection_experiment: need k_trap <= N and d <= N");
    }
    std::vector<NodeId> positions;
    for (NodeId p = 1; p <= n; p++) {
        positions.push_back(p);
    }
    AdversaryStrategy adversary = AdversaryStrategy::random_pauli(d, only);
    Rng root(seed);
    DetectionRecord rec;
    rec.n_positions = n;
    rec.k_trap = k;
    rec.pathways = d;
    rec.trials = trials;
    for (std::size_t trial = 0; trial < trials; trial++) {
        Rng rng = root.split(trial);
        SimState sim(rng.split("sim"));
        Rng trap_rng = rng.split("traps");
        Rng attack_rng = rng.split("adversary");
        TrapConfig cfg = prepare_traps(positions, k, trap_rng);
        std::map<NodeId, QubitRef> qubits;
        for (const auto &t : cfg.traps) {
            qubits[t.position] = sim.allocate();
            prepare_bb84(sim, qubits[t.position], t.basis, t.value);
        }
        for (const auto &[pos, p] : adversary.plan(positions, attack_rng)) {
            auto it = qubits.find(pos);
            if (it != qubits.end()) {
                sim.apply(mat::pauli(p), it->second);
            }
        }
        bool detected = false;
        for (const auto &t : cfg.traps) {
            detected = detected || sim.measure(qubits[t.position], t.basis) != t.value;
        }
        rec.undetected += detected ? 0 : 1;
    }
    rec.empirical_rate = trials == 0 ? 0 : static_cast<double>(rec.undetected) / static_cast<double>(trials);
    double frac = static_cast<double>(k) / static_cast<double>(n);
    rec.bound_placement = std::pow(1 - frac, static_cast<double>(d));
    rec.bound_exponential = std::exp(-static_cast<double>(d) * frac);
    rec.pass_probability = trap_pass_probability(only);
    rec.predicted_rate = predicted_undetected_rate(n, k, d, rec.pass_probability);
    double t = static_cast<double>(std::max<std::size_t>(trials, 1));
    rec.sigma = std::sqrt(rec.bound_placement * (1 - rec.bound_placement) / t);
    rec.within_bound = rec.empirical_rate <= rec.bound_placement + 3 * rec.sigma;
    double sigma_pred = std::sqrt(rec.predicted_rate * (1 - rec.predicted_rate) / t);
    rec.matches_prediction = std::abs(rec.empirical_rate - rec.predicted_rate) <= 3 * sigma_pred + 1e-12;
    return rec;
}

// ---------------------------------------------------------------------------
// Blindness probes.

/// Two-sided p-value of a standard normal statistic.
inline double normal_p_value(double z) {
    return std::erfc(std::abs(z) / std::numbers::sqrt2);
}

/// Two-proportion z-test on the frequency of ones in two bit samples.
inline double two_sample_frequency_p(std::uint64_t ones_a, std::uint64_t n_a, std::uint64_t ones_b, std::uint64_t n_b) {
    if (n_a == 0 || n_b == 0) {
        throw std::invalid_argument("empty sample");
    }
    double pa = static_cast<double>(ones_a) / static_cast<double>(n_a);
    double pb = static_cast<double>(ones_b) / static_cast<double>(n_b);
    double pooled = static_cast<double>(ones_a + ones_b) / static_cast<double>(n_a + n_b);
    double se = std::sqrt(pooled * (1 - pooled) * (1.0 / static_cast<double>(n_a) + 1.0 / static_cast<double>(n_b)));
    if (se == 0) {
        return pa == pb ? 1.0 : 0.0;
    }
    return normal_p_value((pa - pb) / se);
}

/// Number of runs (maximal blocks of equal bits) in a stream.
inline std::size_t count_runs(std::span<const std::uint8_t> bits) {
    if (bits.empty()) {
        return 0;
    }
    std::size_t runs = 1;
    for (std::size_t i = 1; i < bits.size(); i++) {
        runs += bits[i] != bits[i - 1];
    }
    return runs;
}

/// Welch z-test comparing mean run counts of two sets of streams.
inline double two_sample_runs_p(std::span<const std::vector<std::uint8_t>> a, std::span<const std::vector<std::uint8_t>> b) {
    auto stats = [](std::span<const std::vector<std::uint8_t>> s) {
        double mean = 0, sq = 0;
        for (const auto &v : s) {
            double r = static_cast<double>(count_runs(v));
            mean += r;
            sq += r * r;
        }
        double n = static_cast<double>(s.size());
        mean /= n;
        double var = n > 1 ? (sq - n * mean * mean) / (n - 1) : 0;
        return std::pair<double, double>(mean, var / n);
    };
    if (a.size() < 2 || b.size() < 2) {
        throw std::invalid_argument("runs test needs at least two streams per sample");
    }
    auto [ma, va] = stats(a);
    auto [mb, vb] = stats(b);
    double se = std::sqrt(va + vb);
    if (se == 0) {
        return ma == mb ? 1.0 : 0.0;
    }
    return normal_p_value((ma - mb) / se);
}

/// Largest trace distance from I/2 over the data qubits of one encoded block.
inline double max_leaf_trace_distance(const StabilizerCode &code, std::uint64_t seed) {
    Network net(Topology::star(code.n), Rng(seed));
    auto servers = net.topology().servers();
    auto res = encode_distributed(net, code, servers);
    double worst = 0;
    for (auto q : res.block.qubits) {
        worst = std::max(worst, trace_distance_to_mixed(net.sim().reduced_density(q)));
    }
    return worst;
}

/// Trace distance from I/2 of the uniform mixture of the four BB84 states.
inline double bb84_average_trace_distance() {
    Mat2 avg{0, 0, 0, 0};
    for (Basis basis : {Basis::Z, Basis::X}) {
        for (int v = 0; v < 2; v++) {
            SimState sim;
            QubitRef q = sim.allocate();
            prepare_bb84(sim, q, basis, v);
            Mat2 rho = sim.reduced_density(q);
            for (int i = 0; i < 4; i++) {
                avg[i] += rho[i] * 0.25;
            }
        }
    }
    return trace_distance_to_mixed(avg);
}

struct BlindnessReport {
    std::size_t sessions = 0;
    std::uint64_t bits_a = 0;
    std::uint64_t bits_b = 0;
    std::uint64_t ones_a = 0;
    std::uint64_t ones_b = 0;
    double frequency_p = 0;
    double runs_p = 0;
    bool instruction_counts_equal = true;
    bool passed = false;
};

/// Runs honest sessions of two tasks and compares the bit streams servers
/// receive on the teleportation, swap and syndrome channels.
inline BlindnessReport blindness_probe(const StabilizerCode &code, const std::vector<LogicalGate> &task_a,
                                       const std::vector<LogicalGate> &task_b, std::size_t k_trap,
                                       std::size_t sessions, std::uint64_t seed, double alpha = 0.001) {
    BlindnessReport rep;
    rep.sessions = sessions;
    std::vector<std::vector<std::uint8_t>> streams_a, streams_b;
    Rng root(seed);
    for (std::size_t s = 0; s < sessions; s++) {
        for (int task = 0; task < 2; task++) {
            SessionConfig cfg;
            cfg.code = code;
            cfg.gates = task == 0 ? task_a : task_b;
            cfg.k_trap = k_trap;
            cfg.seed = root.split(2 * s + static_cast<std::uint64_t>(task)).next();
            SessionReport r = run_verified_session(cfg);
            Topology topo = Topology::star(r.positions);
            auto stream = r.log.server_received_stream(topo);
            std::uint64_t ones = static_cast<std::uint64_t>(std::count(stream.begin(), stream.end(), 1));
            std::size_t first = r.instruction_counts.empty() ? 0 : r.instruction_counts.begin()->second;
            for (const auto &[pos, c] : r.instruction_counts) {
                rep.instruction_counts_equal = rep.instruction_counts_equal && c == first;
            }
            if (task == 0) {
                rep.bits_a += stream.size();
                rep.ones_a += ones;
                streams_a.push_back(std::move(stream));
            } else {
                rep.bits_b += stream.size();
                rep.ones_b += ones;
                streams_b.push_back(std::move(stream));
            }
        }
    }
    rep.frequency_p = two_sample_frequency_p(rep.ones_a, rep.bits_a, rep.ones_b, rep.bits_b);
    rep.runs_p = two_sample_runs_p(streams_a, streams_b);
    rep.passed = rep.frequency_p > alpha && rep.runs_p > alpha && rep.instruction_counts_equal;
    return rep;
}

}  // namespace dqc
