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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqc/network.hpp"
#include "dqc/pauli.hpp"
#include "dqc/statesim.hpp"

namespace dqc {

/// Gate teleportation of a controlled-U from control (at pair.a) to target
/// (at pair.b) using one Bell pair and two classical bits.
///
/// A: CNOT control->A_e, measure A_e in Z, send m1.
/// B: X^{m1} on B_e, controlled-U B_e->target, H on B_e, measure, send m2.
/// A: Z^{m2} on control.
inline void scst(Network &net, QubitRef control, QubitRef target, const Mat2 &u, const BellPair &pair) {
    NodeId a = net.host_of(control);
    NodeId b = net.host_of(target);
    if (a != pair.a || b != pair.b || net.host_of(pair.qa) != a || net.host_of(pair.qb) != b) {
        throw std::invalid_argument("scst: Bell pair endpoints do not match control and target hosts");
    }
    if (pair.long_distance) {
        net.charge_pair();
    }
    SimState &sim = net.sim();
    sim.cx(control, pair.qa);
    int m1 = net.report_outcome(a, sim.measure(pair.qa, Basis::Z));
    net.send_classical(a, b, {static_cast<std::uint8_t>(m1)}, MessageKind::teleport);
    if (m1) {
        sim.x(pair.qb);
    }
    sim.apply_controlled(u, pair.qb, target);
    sim.h(pair.qb);
    int m2 = net.report_outcome(b, sim.measure(pair.qb, Basis::Z));
    net.send_classical(b, a, {static_cast<std::uint8_t>(m2)}, MessageKind::teleport);
    if (m2) {
        sim.z(control);
    }
    net.retire(pair.qa);
    net.retire(pair.qb);
}

/// Controlled single-qubit Pauli through one SCST. Controlled-Y is
/// S_target * controlled-X * S_target^dagger.
inline void controlled_pauli_scst(Network &net, QubitRef control, QubitRef target, char pauli,
                                  const BellPair &pair) {
    switch (pauli) {
        case 'X':
            scst(net, control, target, mat::X(), pair);
            return;
        case 'Z':
            scst(net, control, target, mat::Z(), pair);
            return;
        case 'Y':
            net.sim().sdg(target);
            scst(net, control, target, mat::X(), pair);
            net.sim().s(target);
            return;
    }
    throw std::invalid_argument("controlled_pauli_scst: not a non-identity Pauli");
}

/// Controlled-U between qubits on arbitrary nodes along a route: swap a pair
/// into place, then teleport the gate over it.
inline void distributed_cu(Network &net, QubitRef control, QubitRef target, const Mat2 &u,
                           std::span<const NodeId> route) {
    if (route.empty() || route.front() != net.host_of(control) || route.back() != net.host_of(target)) {
        throw std::invalid_argument("distributed_cu: route does not join control and target hosts");
    }
    if (route.size() == 1) {
        net.sim().apply_controlled(u, control, target);
        return;
    }
    Network::Relay relay(net);
    BellPair pair = swap_entanglement_along(net, route);
    scst(net, control, target, u, pair);
}

inline void distributed_cu(Network &net, QubitRef control, QubitRef target, const Mat2 &u) {
    auto route = shortest_path(net.topology(), net.host_of(control), net.host_of(target));
    distributed_cu(net, control, target, u, route);
}

/// Physical qubits of one encoded block and the nodes that hold them.
struct EncodedBlock {
    std::vector<QubitRef> qubits;
    std::vector<NodeId> hosts;
};

enum class SyndromeReadout {
    /// X-measure each syndrome qubit as soon as its last gate is done.
    eager,
    /// Measure all syndrome qubits after every controlled gate.
    deferred,
};

struct EncodeResult {
    EncodedBlock block;
    std::vector<std::uint8_t> syndrome;
    PauliString correction;
};

/// Checks that ops are n independent, commuting, Hermitian Paulis on n qubits.
inline void check_operator_set(std::span<const PauliString> ops) {
    if (ops.empty()) {
        throw std::invalid_argument("empty operator set");
    }
    std::size_t n = ops[0].size();
    if (ops.size() != n) {
        throw std::invalid_argument("operator set must contain exactly n operators");
    }
    std::vector<gf2::Row> rows;
    for (std::size_t i = 0; i < ops.size(); i++) {
        if (ops[i].size() != n || !ops[i].is_hermitian()) {
            throw std::invalid_argument("operator " + ops[i].str() + " is not a Hermitian n-qubit Pauli");
        }
        for (std::size_t j = i + 1; j < ops.size(); j++) {
            if (!ops[i].commutes(ops[j])) {
                throw std::invalid_argument("operators " + ops[i].str() + " and " + ops[j].str() + " anticommute");
            }
        }
        rows.push_back(gf2::symplectic_row(ops[i]));
    }
    if (gf2::rank(rows) != n) {
        throw std::invalid_argument("operators are not independent");
    }
}

/// Distributed encoding: prepares the joint +1 eigenstate of the signed
/// operators with qubit j held at hosts[j].
///
/// The client keeps one |+> syndrome qubit per operator and applies each
/// non-identity factor as a controlled Pauli through an SCST, then measures
/// the syndrome qubits in X. The syndrome is broadcast and every host applies
/// its factor of the table correction.
inline EncodeResult encode_operators(Network &net, std::span<const PauliString> ops, std::span<const NodeId> hosts,
                                     const CorrectionTable &table,
                                     SyndromeReadout readout = SyndromeReadout::eager) {
    check_operator_set(ops);
    std::size_t n = ops.size();
    if (hosts.size() != n) {
        throw std::invalid_argument("encode: need one host per qubit");
    }
    const Topology &topo = net.topology();
    for (std::size_t j = 0; j < n; j++) {
        if (!topo.has(hosts[j]) || topo.role(hosts[j]) != Role::server) {
            throw std::invalid_argument("encode: host " + std::to_string(hosts[j]) + " is not a server");
        }
        for (std::size_t i = 0; i < j; i++) {
            if (hosts[i] == hosts[j]) {
                throw std::invalid_argument("encode: hosts must be distinct");
            }
        }
    }
    SimState &sim = net.sim();
    NodeId client = topo.client();

    EncodeResult result;
    result.block.hosts.assign(hosts.begin(), hosts.end());
    std::vector<QubitRef> syndrome_qubits;
    for (std::size_t i = 0; i < n; i++) {
        syndrome_qubits.push_back(net.allocate(client));
        sim.h(syndrome_qubits.back());
    }
    for (std::size_t j = 0; j < n; j++) {
        result.block.qubits.push_back(net.allocate(hosts[j]));
    }

    std::vector<std::uint8_t> outcomes(n, 0);
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = 0; j < n; j++) {
            char p = ops[i].at(j);
            if (p == 'I') {
                continue;
            }
            auto route = shortest_path(topo, client, hosts[j]);
            BellPair pair = swap_entanglement_along(net, route);
            controlled_pauli_scst(net, syndrome_qubits[i], result.block.qubits[j], p, pair);
        }
        if (readout == SyndromeReadout::eager) {
            outcomes[i] = static_cast<std::uint8_t>(sim.measure(syndrome_qubits[i], Basis::X));
            net.retire(syndrome_qubits[i]);
        }
    }
    if (readout == SyndromeReadout::deferred) {
        for (std::size_t i = 0; i < n; i++) {
            outcomes[i] = static_cast<std::uint8_t>(sim.measure(syndrome_qubits[i], Basis::X));
            net.retire(syndrome_qubits[i]);
        }
    }

    // Outcome 1 means the -1 eigenspace of the unsigned operator.
    std::vector<std::uint8_t> flips(n);
    for (std::size_t i = 0; i < n; i++) {
        flips[i] = outcomes[i] ^ (ops[i].negative() ? 1 : 0);
    }
    result.syndrome = outcomes;
    result.correction = table.lookup(flips);
    net.send_classical(client, std::nullopt, outcomes, MessageKind::syndrome);
    sim.apply_pauli(result.correction, result.block.qubits);

    for (const auto &op : ops) {
        if (sim.expectation(op, result.block.qubits) < 1 - kTolerance) {
            throw InvariantError("encoding left operator " + op.str() + " unsatisfied");
        }
    }
    return result;
}

inline EncodeResult encode_distributed(Network &net, const StabilizerCode &code, std::span<const NodeId> hosts,
                                       SyndromeReadout readout = SyndromeReadout::eager) {
    auto ops = code.encoding_operators();
    CorrectionTable table(ops);
    return encode_operators(net, ops, hosts, table, readout);
}

// ---------------------------------------------------------------------------
// Logical gates.

enum class LogicalOp { H, S, T, CNOT, CZ };

struct LogicalGate {
    LogicalOp op = LogicalOp::H;
    std::size_t a = 0;
    std::size_t b = 0;
    bool operator==(const LogicalGate &) const = default;
};

inline const char *logical_op_name(LogicalOp op) {
    switch (op) {
        case LogicalOp::H:
            return "H";
        case LogicalOp::S:
            return "S";
        case LogicalOp::T:
            return "T";
        case LogicalOp::CNOT:
            return "CNOT";
        case LogicalOp::CZ:
            return "CZ";
    }
    return "?";
}

inline bool is_two_qubit(LogicalOp op) {
    return op == LogicalOp::CNOT || op == LogicalOp::CZ;
}

inline std::string to_string(const LogicalGate &g) {
    std::string s = std::string(logical_op_name(g.op)) + " " + std::to_string(g.a);
    if (is_two_qubit(g.op)) {
        s += " " + std::to_string(g.b);
    }
    return s;
}

/// Number of logical qubits a gate list touches.
inline std::size_t logical_width(std::span<const LogicalGate> gates) {
    std::size_t w = 1;
    for (const auto &g : gates) {
        w = std::max(w, g.a + 1);
        if (is_two_qubit(g.op)) {
            w = std::max(w, g.b + 1);
            if (g.a == g.b) {
                throw std::invalid_argument("two-qubit logical gate on a single qubit");
            }
        }
    }
    return w;
}

/// Physical single-qubit gates whose n-fold tensor power implements the
/// logical H and S, and whether CZ^{(x)n} across two blocks is CZ_L.
struct TransversalRules {
    std::optional<Gate> h;
    std::optional<Gate> s;
    bool cz = false;
};

namespace detail {

inline bool same_mod_stabilizers(const std::vector<PauliString> &gens, const PauliString &p, const PauliString &q) {
    auto phase = group_membership_phase(gens, p * q);
    return phase.has_value() && *phase == 0;
}

inline bool preserves_code(const std::vector<PauliString> &gens, const Tableau &images) {
    for (const auto &g : images.rows()) {
        auto phase = group_membership_phase(gens, g);
        if (!phase.has_value() || *phase != 0) {
            return false;
        }
    }
    return true;
}

/// i * X_L * Z_L, the logical Y.
inline PauliString logical_y(const PauliString &xl, const PauliString &zl) {
    PauliString y = xl * zl;
    y.set_phase(static_cast<std::uint8_t>(y.phase() + 1));
    return y;
}

}  // namespace detail

/// Finds the transversal conventions of a k = 1 code by tableau conjugation.
inline TransversalRules derive_transversal_rules(const StabilizerCode &code) {
    if (code.k != 1) {
        throw std::invalid_argument("logical gates are supported for k = 1 codes only");
    }
    TransversalRules rules;
    const auto &gens = code.generators;
    const PauliString &zl = code.logical_z[0];
    const PauliString &xl = code.logical_x[0];
    auto conj_all = [&](const std::vector<PauliString> &rows, Gate g) {
        Tableau t(rows);
        for (std::size_t q = 0; q < code.n; q++) {
            t.apply(g, q);
        }
        return t;
    };
    {
        Tableau stab = conj_all(gens, Gate::H);
        Tableau logical = conj_all({xl, zl}, Gate::H);
        if (detail::preserves_code(gens, stab) && detail::same_mod_stabilizers(gens, logical.rows()[0], zl) &&
            detail::same_mod_stabilizers(gens, logical.rows()[1], xl)) {
            rules.h = Gate::H;
        }
    }
    for (Gate g : {Gate::S, Gate::Sdg}) {
        Tableau stab = conj_all(gens, g);
        Tableau logical = conj_all({xl, zl}, g);
        if (detail::preserves_code(gens, stab) &&
            detail::same_mod_stabilizers(gens, logical.rows()[0], detail::logical_y(xl, zl)) &&
            detail::same_mod_stabilizers(gens, logical.rows()[1], zl)) {
            rules.s = g;
            break;
        }
    }
    {
        std::size_t n = code.n;
        std::vector<PauliString> gens2;
        for (const auto &g : gens) {
            gens2.push_back(g.embedded(2 * n, 0));
            gens2.push_back(g.embedded(2 * n, n));
        }
        Tableau stab(gens2);
        Tableau logical({xl.embedded(2 * n, 0), xl.embedded(2 * n, n), zl.embedded(2 * n, 0), zl.embedded(2 * n, n)});
        for (std::size_t q = 0; q < n; q++) {
            stab.apply(Gate::CZ, q, n + q);
            logical.apply(Gate::CZ, q, n + q);
        }
        PauliString xz = xl.embedded(2 * n, 0) * zl.embedded(2 * n, n);
        PauliString zx = zl.embedded(2 * n, 0) * xl.embedded(2 * n, n);
        rules.cz = detail::preserves_code(gens2, stab) && detail::same_mod_stabilizers(gens2, logical.rows()[0], xz) &&
                   detail::same_mod_stabilizers(gens2, logical.rows()[1], zx) &&
                   detail::same_mod_stabilizers(gens2, logical.rows()[2], zl.embedded(2 * n, 0)) &&
                   detail::same_mod_stabilizers(gens2, logical.rows()[3], zl.embedded(2 * n, n));
    }
    return rules;
}

/// Ideal |0>_L of a code as a dense vector over its n qubits.
inline std::vector<cplx> ideal_logical_zero(const StabilizerCode &code) {
    auto ops = code.encoding_operators();
    return ideal_stabilizer_state(ops);
}

/// Ideal encoding of a logical state of m single-qubit blocks; block 0
/// occupies the low n bits of the index.
inline std::vector<cplx> encode_ideal(const StabilizerCode &code, std::span<const cplx> logical) {
    std::size_t m = 0;
    while ((std::size_t{1} << m) < logical.size()) {
        m++;
    }
    if ((std::size_t{1} << m) != logical.size() || code.k != 1) {
        throw std::invalid_argument("encode_ideal needs 2^m logical amplitudes and a k = 1 code");
    }
    auto zero = ideal_logical_zero(code);
    auto one = apply_pauli_dense(code.logical_x[0], zero);
    std::size_t dim = zero.size();
    std::vector<cplx> out(std::size_t{1} << (code.n * m), 0);
    for (std::size_t a = 0; a < logical.size(); a++) {
        if (logical[a] == cplx(0)) {
            continue;
        }
        std::vector<cplx> term{logical[a]};
        for (std::size_t blk = 0; blk < m; blk++) {
            const auto &part = ((a >> blk) & 1) ? one : zero;
            std::vector<cplx> next(term.size() * dim);
            for (std::size_t j = 0; j < dim; j++) {
                for (std::size_t i = 0; i < term.size(); i++) {
                    next[i | (j * term.size())] = term[i] * part[j];
                }
            }
            term = std::move(next);
        }
        for (std::size_t i = 0; i < out.size(); i++) {
            out[i] += term[i];
        }
    }
    return out;
}

/// Turns an encoded |0>_L block into |T>_L = (|0>_L + e^{i pi/4} |1>_L)/sqrt 2
/// by an ideal, noiseless operation with no network cost.
inline void inject_magic_state(Network &net, const StabilizerCode &code, const EncodedBlock &ancilla) {
    SimState &sim = net.sim();
    for (const auto &op : code.encoding_operators()) {
        if (sim.expectation(op, ancilla.qubits) < 1 - kTolerance) {
            throw std::invalid_argument("inject_magic_state: ancilla is not |0>_L");
        }
    }
    auto amps = sim.amplitudes(ancilla.qubits);
    auto flipped = apply_pauli_dense(code.logical_x[0], amps);
    cplx w = std::polar(1.0, std::numbers::pi / 4);
    for (std::size_t i = 0; i < amps.size(); i++) {
        amps[i] = (amps[i] + w * flipped[i]) / std::numbers::sqrt2;
    }
    sim.overwrite(ancilla.qubits, amps);
}

/// Logical executor state for one run.
struct LogicalMachine {
    const StabilizerCode *code = nullptr;
    TransversalRules rules;
    std::vector<EncodedBlock> blocks;
    /// Nodes that receive one instruction record per logical step.
    std::vector<NodeId> positions;
};

namespace detail {

inline void instruct(Network &net, const LogicalMachine &m, std::span<const std::size_t> involved,
                     std::uint8_t opcode) {
    auto ctx = net.tagged(Tag::auxiliary);
    NodeId client = net.topology().client();
    for (NodeId pos : m.positions) {
        bool acts = false;
        for (std::size_t b : involved) {
            for (NodeId h : m.blocks[b].hosts) {
                acts = acts || h == pos;
            }
        }
        std::uint8_t code = acts ? opcode : 0;
        net.send_classical(client, pos, {static_cast<std::uint8_t>(code >> 1), static_cast<std::uint8_t>(code & 1)},
                           MessageKind::instruction);
    }
}

inline void transversal(Network &net, const EncodedBlock &blk, Gate g) {
    for (auto q : blk.qubits) {
        QubitRef qs[1] = {q};
        net.sim().apply(g, qs);
    }
}

/// CZ^{(x)n} between two blocks, one distributed controlled-Z per pair. The
/// cost model prices the whole logical CZ as one non-local instance, so only
/// pair 0 keeps the current tag and the rest are booked as expansion.
inline void transversal_cz(Network &net, const EncodedBlock &a, const EncodedBlock &b) {
    Tag base = net.tag();
    for (std::size_t j = 0; j < a.qubits.size(); j++) {
        auto ctx = net.tagged(j == 0 ? base : (base == Tag::model ? Tag::expansion : base));
        distributed_cu(net, a.qubits[j], b.qubits[j], mat::Z());
    }
}

}  // namespace detail

/// Hosts of a magic-state ancilla for a block: ancilla qubit j lives on the
/// node of data qubit j+1 (mod n).
inline std::vector<NodeId> magic_hosts(const EncodedBlock &data) {
    std::vector<NodeId> out;
    for (std::size_t j = 0; j < data.hosts.size(); j++) {
        out.push_back(data.hosts[(j + 1) % data.hosts.size()]);
    }
    return out;
}

/// Executes one logical gate on the machine's blocks.
inline void execute_logical_gate(Network &net, LogicalMachine &m, const LogicalGate &g) {
    const StabilizerCode &code = *m.code;
    if (g.a >= m.blocks.size() || (is_two_qubit(g.op) && g.b >= m.blocks.size())) {
        throw std::invalid_argument("logical gate refers to a missing block");
    }
    SimState &sim = net.sim();
    auto need_h = [&] {
        if (!m.rules.h) {
            throw std::invalid_argument("code " + code.name + " has no transversal H");
        }
        return *m.rules.h;
    };
    auto need_s = [&] {
        if (!m.rules.s) {
            throw std::invalid_argument("code " + code.name + " has no transversal S");
        }
        return *m.rules.s;
    };
    auto need_cz = [&] {
        if (!m.rules.cz) {
            throw std::invalid_argument("code " + code.name + " has no transversal CZ");
        }
    };
    switch (g.op) {
        case LogicalOp::H: {
            std::size_t inv[1] = {g.a};
            detail::instruct(net, m, inv, 1);
            detail::transversal(net, m.blocks[g.a], need_h());
            return;
        }
        case LogicalOp::S: {
            std::size_t inv[1] = {g.a};
            detail::instruct(net, m, inv, 2);
            detail::transversal(net, m.blocks[g.a], need_s());
            return;
        }
        case LogicalOp::CZ: {
            need_cz();
            std::size_t inv[2] = {g.a, g.b};
            detail::instruct(net, m, inv, 3);
            detail::transversal_cz(net, m.blocks[g.a], m.blocks[g.b]);
            return;
        }
        case LogicalOp::CNOT: {
            need_cz();
            Gate h = need_h();
            std::size_t inv[2] = {g.a, g.b};
            detail::instruct(net, m, inv, 3);
            detail::transversal(net, m.blocks[g.b], h);
            detail::transversal_cz(net, m.blocks[g.a], m.blocks[g.b]);
            detail::transversal(net, m.blocks[g.b], h);
            return;
        }
        case LogicalOp::T: {
            need_cz();
            Gate h = need_h();
            Gate s = need_s();
            std::size_t inv[1] = {g.a};
            detail::instruct(net, m, inv, 3);
            const EncodedBlock &data = m.blocks[g.a];
            EncodedBlock anc;
            anc.hosts = magic_hosts(data);
            for (NodeId host : anc.hosts) {
                anc.qubits.push_back(net.allocate(host));
            }
            auto zero = ideal_logical_zero(code);
            sim.overwrite(anc.qubits, zero);
            inject_magic_state(net, code, anc);
            // CNOT_L data -> ancilla as H_L CZ_L H_L on the ancilla.
            detail::transversal(net, anc, h);
            detail::transversal_cz(net, data, anc);
            detail::transversal(net, anc, h);
            // Logical Z readout of the ancilla, then S_L^m on the data.
            NodeId client = net.topology().client();
            int parity = code.logical_z[0].negative() ? 1 : 0;
            {
                auto ctx = net.tagged(Tag::auxiliary);
                for (std::size_t j = 0; j < anc.qubits.size(); j++) {
                    int bit = net.report_outcome(anc.hosts[j], sim.measure(anc.qubits[j], Basis::Z));
                    net.send_classical(anc.hosts[j], client, {static_cast<std::uint8_t>(bit)}, MessageKind::readout);
                    if (code.logical_z[0].at(j) != 'I') {
                        parity ^= bit;
                    }
                    net.retire(anc.qubits[j]);
                }
                net.send_classical(client, std::nullopt, {static_cast<std::uint8_t>(parity)},
                                   MessageKind::instruction);
            }
            if (parity) {
                detail::transversal(net, data, s);
            }
            return;
        }
    }
}

inline void execute_logical_sequence(Network &net, LogicalMachine &m, std::span<const LogicalGate> gates) {
    for (const auto &g : gates) {
        execute_logical_gate(net, m, g);
    }
}

/// Noiseless reference: the logical circuit on bare qubits, all starting in |0>.
inline std::vector<cplx> logical_oracle_state(std::span<const LogicalGate> gates, std::size_t width) {
    SimState sim;
    std::vector<QubitRef> qs;
    for (std::size_t i = 0; i < width; i++) {
        qs.push_back(sim.allocate());
    }
    for (const auto &g : gates) {
        switch (g.op) {
            case LogicalOp::H:
                sim.h(qs.at(g.a));
                break;
            case LogicalOp::S:
                sim.s(qs.at(g.a));
                break;
            case LogicalOp::T:
                sim.t(qs.at(g.a));
                break;
            case LogicalOp::CNOT:
                sim.cx(qs.at(g.a), qs.at(g.b));
                break;
            case LogicalOp::CZ:
                sim.cz(qs.at(g.a), qs.at(g.b));
                break;
        }
    }
    // Pull every qubit into one block so amplitudes() sees whole blocks.
    for (std::size_t i = 1; i < width; i++) {
        sim.apply_controlled(mat::I(), qs[0], qs[i]);
    }
    return sim.amplitudes(qs);
}

/// All block qubits in block order.
inline std::vector<QubitRef> block_qubits(std::span<const EncodedBlock> blocks) {
    std::vector<QubitRef> out;
    for (const auto &b : blocks) {
        out.insert(out.end(), b.qubits.begin(), b.qubits.end());
    }
    return out;
}

/// Fidelity of the encoded blocks against the ideal encoding of a logical state.
inline double encoded_fidelity(const SimState &sim, const StabilizerCode &code, std::span<const EncodedBlock> blocks,
                               std::span<const cplx> logical) {
    auto ref = encode_ideal(code, logical);
    auto qs = block_qubits(blocks);
    return sim.fidelity(qs, ref);
}

/// Logical Bloch vector (<X_L>, <Y_L>, <Z_L>) of one k = 1 block.
inline std::array<double, 3> logical_bloch(const SimState &sim, const StabilizerCode &code, const EncodedBlock &b) {
    const auto &xl = code.logical_x[0];
    const auto &zl = code.logical_z[0];
    return {sim.expectation(xl, b.qubits), sim.expectation(detail::logical_y(xl, zl), b.qubits),
            sim.expectation(zl, b.qubits)};
}

}  // namespace dqc
