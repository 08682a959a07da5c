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
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqc/network.hpp"
#include "dqc/pauli.hpp"
#include "dqc/protocols.hpp"
#include "dqc/statesim.hpp"

namespace dqc {

/// Raised when a gate cannot be tracked classically; recovery past it needs
/// a real checkpoint or a restart.
class NonCliffordGate : public std::runtime_error {
   public:
    explicit NonCliffordGate(const std::string &gate)
        : std::runtime_error("checkpointing required: " + gate + " is not Clifford") {
    }
};

/// Classical description of the encoded state: one signed Pauli per physical
/// qubit across all blocks, whose joint +1 eigenspace is the state.
struct Checkpoint {
    std::size_t block_size = 0;
    std::size_t blocks = 0;
    std::size_t gate_index = 0;
    /// Host of each physical qubit, block-major.
    std::vector<NodeId> nodes;
    /// Stabilizer generators first, then one logical-Z image per block.
    std::vector<PauliString> tracked;

    bool operator==(const Checkpoint &) const = default;

    /// Plain text: a header line, the node list, then one signed Pauli per line.
    std::string to_text() const {
        std::ostringstream out;
        out << "checkpoint " << block_size << ' ' << blocks << ' ' << gate_index << '\n';
        out << "nodes";
        for (NodeId n : nodes) {
            out << ' ' << n;
        }
        out << '\n';
        for (const auto &p : tracked) {
            out << p.str() << '\n';
        }
        return out.str();
    }

    static Checkpoint parse(const std::string &text) {
        std::istringstream in(text);
        std::string word;
        Checkpoint c;
        if (!(in >> word) || word != "checkpoint" || !(in >> c.block_size >> c.blocks >> c.gate_index)) {
            throw std::invalid_argument("checkpoint: bad header");
        }
        std::string line;
        std::getline(in, line);
        if (!std::getline(in, line)) {
            throw std::invalid_argument("checkpoint: missing node list");
        }
        std::istringstream nodes(line);
        if (!(nodes >> word) || word != "nodes") {
            throw std::invalid_argument("checkpoint: bad node list");
        }
        NodeId n = 0;
        while (nodes >> n) {
            c.nodes.push_back(n);
        }
        while (std::getline(in, line)) {
            if (!line.empty()) {
                c.tracked.push_back(PauliString::from_str(line));
            }
        }
        std::size_t total = c.block_size * c.blocks;
        if (c.nodes.size() != total || c.tracked.size() != total) {
            throw std::invalid_argument("checkpoint: expected " + std::to_string(total) + " nodes and operators");
        }
        for (const auto &p : c.tracked) {
            if (p.size() != total) {
                throw std::invalid_argument("checkpoint: operator " + p.str() + " has the wrong length");
            }
        }
        return c;
    }
};

/// Checkpoint of freshly encoded |0...0>_L blocks.
inline Checkpoint initial_checkpoint(const StabilizerCode &code, std::size_t blocks, std::vector<NodeId> nodes) {
    if (code.k != 1) {
        throw std::invalid_argument("tracking supports k = 1 codes only");
    }
    std::size_t n = code.n;
    std::size_t total = n * blocks;
    if (nodes.size() != total) {
        throw std::invalid_argument("checkpoint: need one node per physical qubit");
    }
    Checkpoint c;
    c.block_size = n;
    c.blocks = blocks;
    c.nodes = std::move(nodes);
    for (std::size_t b = 0; b < blocks; b++) {
        for (const auto &g : code.generators) {
            c.tracked.push_back(g.embedded(total, b * n));
        }
    }
    for (std::size_t b = 0; b < blocks; b++) {
        c.tracked.push_back(code.logical_z[0].embedded(total, b * n));
    }
    return c;
}

/// Conjugates the tracked operators by the gate's physical expansion.
inline Checkpoint track(const Checkpoint &c, const LogicalGate &g, const TransversalRules &rules) {
    if (g.op == LogicalOp::T) {
        throw NonCliffordGate(to_string(g));
    }
    if (g.a >= c.blocks || (is_two_qubit(g.op) && (g.b >= c.blocks || g.a == g.b))) {
        throw std::invalid_argument("track: bad block index in " + to_string(g));
    }
    std::size_t n = c.block_size;
    Tableau tab(c.tracked);
    auto on_block = [&](std::size_t blk, Gate gate) {
        for (std::size_t j = 0; j < n; j++) {
            tab.apply(gate, blk * n + j);
        }
    };
    auto need = [&](const std::optional<Gate> &rule, const char *what) {
        if (!rule) {
            throw std::invalid_argument(std::string("code has no transversal ") + what);
        }
        return *rule;
    };
    auto cz = [&] {
        if (!rules.cz) {
            throw std::invalid_argument("code has no transversal CZ");
        }
        for (std::size_t j = 0; j < n; j++) {
            tab.apply(Gate::CZ, g.a * n + j, g.b * n + j);
        }
    };
    switch (g.op) {
        case LogicalOp::H:
            on_block(g.a, need(rules.h, "H"));
            break;
        case LogicalOp::S:
            on_block(g.a, need(rules.s, "S"));
            break;
        case LogicalOp::CZ:
            cz();
            break;
        case LogicalOp::CNOT: {
            Gate h = need(rules.h, "H");
            on_block(g.b, h);
            cz();
            on_block(g.b, h);
            break;
        }
        case LogicalOp::T:
            break;
    }
    Checkpoint out = c;
    out.tracked = tab.rows();
    out.gate_index++;
    return out;
}

/// True when every tracked operator has expectation +1 on the blocks.
inline bool checkpoint_matches(const SimState &sim, const Checkpoint &c, std::span<const EncodedBlock> blocks) {
    auto qs = block_qubits(blocks);
    for (const auto &p : c.tracked) {
        if (sim.expectation(p, qs) < 1 - kTolerance) {
            return false;
        }
    }
    return true;
}

/// Simulates catastrophic loss of the old blocks, then prepares the tracked
/// state afresh on the given nodes. Charges land in the recovery phase.
inline std::vector<EncodedBlock> recover(Network &net, const Checkpoint &c, std::span<const EncodedBlock> lost,
                                         std::span<const NodeId> fresh_nodes,
                                         SyndromeReadout readout = SyndromeReadout::eager) {
    std::size_t total = c.block_size * c.blocks;
    if (fresh_nodes.size() < total) {
        throw std::invalid_argument("recover: need " + std::to_string(total) + " fresh nodes, got " +
                                    std::to_string(fresh_nodes.size()));
    }
    check_operator_set(c.tracked);
    for (const auto &b : lost) {
        for (auto q : b.qubits) {
            if (net.sim().is_live(q)) {
                net.discard(q);
            }
        }
    }
    Network::Context ctx(net, Phase::recovery, Tag::model);
    CorrectionTable table(c.tracked);
    auto res = encode_operators(net, c.tracked, fresh_nodes.first(total), table, readout);
    std::vector<EncodedBlock> out(c.blocks);
    for (std::size_t b = 0; b < c.blocks; b++) {
        for (std::size_t j = 0; j < c.block_size; j++) {
            out[b].qubits.push_back(res.block.qubits[b * c.block_size + j]);
            out[b].hosts.push_back(res.block.hosts[b * c.block_size + j]);
        }
    }
    return out;
}

/// Ledger cost of recovery: a fresh encoding of the tracked set.
inline Tally recovery_cost(const Checkpoint &c) {
    std::uint64_t w = 0;
    for (const auto &p : c.tracked) {
        w += p.weight();
    }
    return Tally{w, 2 * w + c.tracked.size()};
}

}  // namespace dqc
