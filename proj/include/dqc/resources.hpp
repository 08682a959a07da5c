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

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqc/network.hpp"
#include "dqc/pauli.hpp"
#include "dqc/protocols.hpp"

namespace dqc {

/// Predicted model-book cost per phase.
struct CostPrediction {
    Tally setup;
    Tally compute;
    Tally verify;
    /// Magic states consumed by T gates; never folded into Bell pairs.
    std::uint64_t magic_states = 0;
    /// True when hop counts of a non-star layout were priced in.
    bool extended = false;

    Tally total() const {
        Tally t = setup;
        t += compute;
        t += verify;
        return t;
    }
};

/// Pairs and bits of one controlled Pauli teleported over an m-hop route:
/// m elementary pairs, one more charge when a swapped pair is consumed, two
/// teleport bits and 2(m-1) swap bits.
inline Tally link_cost(std::size_t hops) {
    if (hops == 0) {
        return {};
    }
    return Tally{hops + (hops > 1 ? 1 : 0), 2 + 2 * (hops - 1)};
}

inline std::size_t route_hops(const Topology &t, NodeId a, NodeId b) {
    return shortest_path(t, a, b).size() - 1;
}

/// Star setup cost: pairs = total weight of the encoding operators, bits =
/// 2 * pairs + n.
inline Tally predict_setup(const StabilizerCode &code) {
    auto problems = validate_code(code);
    if (!problems.empty()) {
        throw std::invalid_argument("invalid code: " + problems.front());
    }
    std::uint64_t w = 0;
    for (const auto &op : code.encoding_operators()) {
        w += op.weight();
    }
    return Tally{w, 2 * w + code.n};
}

/// Setup cost with each non-identity factor routed from the client to its host.
inline Tally predict_setup(const StabilizerCode &code, const Topology &t, std::span<const NodeId> hosts) {
    predict_setup(code);
    if (hosts.size() != code.n) {
        throw std::invalid_argument("predict_setup: need one host per qubit");
    }
    Tally out;
    for (const auto &op : code.encoding_operators()) {
        for (std::size_t j = 0; j < code.n; j++) {
            if (op.at(j) != 'I') {
                out += link_cost(route_hops(t, t.client(), hosts[j]));
            }
        }
    }
    out.classical_bits += code.n;
    return out;
}

/// Two dummy teleportations per trap; only the trap readouts count as bits.
inline Tally predict_verify(std::size_t k_trap) {
    return Tally{2 * static_cast<std::uint64_t>(k_trap), k_trap};
}

inline Tally predict_verify(const Topology &t, std::span<const NodeId> trap_positions) {
    Tally out;
    for (NodeId p : trap_positions) {
        out.bell_pairs += 2 * link_cost(route_hops(t, t.client(), p)).bell_pairs;
        out.classical_bits += 1;
    }
    return out;
}

struct ComputePrediction {
    Tally cost;
    std::uint64_t magic_states = 0;
};

/// Star compute cost: H and S are free, CNOT, CZ and T each cost one
/// server-to-server link over the client, (3, 4).
inline ComputePrediction predict_compute(std::span<const LogicalGate> gates) {
    ComputePrediction out;
    for (const auto &g : gates) {
        switch (g.op) {
            case LogicalOp::H:
            case LogicalOp::S:
                break;
            case LogicalOp::T:
                out.magic_states++;
                out.cost += link_cost(2);
                break;
            case LogicalOp::CNOT:
            case LogicalOp::CZ:
                out.cost += link_cost(2);
                break;
        }
    }
    return out;
}

/// Compute cost for a concrete layout; blocks[b] lists the hosts of block b.
/// The priced link joins qubit 0 of the two blocks, or for T qubit 0 of the
/// data block and its magic ancilla on the host of data qubit 1.
inline ComputePrediction predict_compute(std::span<const LogicalGate> gates, const Topology &t,
                                         const std::vector<std::vector<NodeId>> &blocks) {
    ComputePrediction out;
    for (const auto &g : gates) {
        switch (g.op) {
            case LogicalOp::H:
            case LogicalOp::S:
                break;
            case LogicalOp::T: {
                out.magic_states++;
                const auto &h = blocks.at(g.a);
                out.cost += link_cost(route_hops(t, h.at(0), h.at(1 % h.size())));
                break;
            }
            case LogicalOp::CNOT:
            case LogicalOp::CZ:
                out.cost += link_cost(route_hops(t, blocks.at(g.a).at(0), blocks.at(g.b).at(0)));
                break;
        }
    }
    return out;
}

/// Whole-session prediction on the default star.
inline CostPrediction predict_session(const StabilizerCode &code, std::span<const LogicalGate> gates,
                                      std::size_t k_trap) {
    CostPrediction p;
    std::size_t width = logical_width(gates);
    Tally one = predict_setup(code);
    for (std::size_t b = 0; b < width; b++) {
        p.setup += one;
    }
    auto c = predict_compute(gates);
    p.compute = c.cost;
    p.magic_states = c.magic_states;
    p.verify = predict_verify(k_trap);
    return p;
}

/// Whole-session prediction for a concrete layout on any topology.
inline CostPrediction predict_session(const StabilizerCode &code, std::span<const LogicalGate> gates,
                                      const Topology &t, std::span<const NodeId> data_positions,
                                      std::span<const NodeId> trap_positions) {
    CostPrediction p;
    p.extended = !t.is_star();
    std::size_t width = logical_width(gates);
    if (data_positions.size() < width * code.n) {
        throw std::invalid_argument("predict_session: not enough data positions");
    }
    std::vector<std::vector<NodeId>> blocks;
    for (std::size_t b = 0; b < width; b++) {
        auto hosts = data_positions.subspan(b * code.n, code.n);
        blocks.emplace_back(hosts.begin(), hosts.end());
        p.setup += predict_setup(code, t, hosts);
    }
    auto c = predict_compute(gates, t, blocks);
    p.compute = c.cost;
    p.magic_states = c.magic_states;
    p.verify = predict_verify(t, trap_positions);
    return p;
}

struct PhaseDelta {
    Phase phase = Phase::setup;
    Tally predicted;
    Tally observed;
    std::int64_t bell_delta = 0;
    std::int64_t classical_delta = 0;
};

struct ReconcileReport {
    std::vector<PhaseDelta> phases;
    Tally predicted_total;
    Tally observed_total;
    /// Dummy-round bits kept out of the model book, reported alongside.
    std::uint64_t blinding_bits = 0;
    Tally physical_total;
    bool exact = true;

    /// Human-readable list of mismatching phases.
    std::vector<std::string> discrepancies() const {
        std::vector<std::string> out;
        for (const auto &d : phases) {
            if (d.bell_delta != 0 || d.classical_delta != 0) {
                out.push_back(std::string(phase_name(d.phase)) + ": " + std::to_string(d.bell_delta) +
                              " Bell pairs, " + std::to_string(d.classical_delta) + " classical bits");
            }
        }
        return out;
    }
};

/// Compares the prediction with the ledger's model book, phase by phase.
inline ReconcileReport reconcile(const CostPrediction &p, const ResourceLedger &ledger) {
    ReconcileReport r;
    auto add = [&](Phase phase, Tally predicted) {
        PhaseDelta d;
        d.phase = phase;
        d.predicted = predicted;
        d.observed = ledger.model(phase);
        d.bell_delta = static_cast<std::int64_t>(d.observed.bell_pairs) - static_cast<std::int64_t>(predicted.bell_pairs);
        d.classical_delta =
            static_cast<std::int64_t>(d.observed.classical_bits) - static_cast<std::int64_t>(predicted.classical_bits);
        r.exact = r.exact && d.bell_delta == 0 && d.classical_delta == 0;
        r.phases.push_back(d);
    };
    add(Phase::setup, p.setup);
    add(Phase::verify, p.verify);
    add(Phase::compute, p.compute);
    add(Phase::recovery, Tally{});
    r.predicted_total = p.total();
    r.observed_total = ledger.model_total();
    r.blinding_bits = ledger.blinding_bits();
    r.physical_total = ledger.physical_total();
    return r;
}

}  // namespace dqc
