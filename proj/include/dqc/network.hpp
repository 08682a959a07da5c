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
#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "dqc/common.hpp"
#include "dqc/statesim.hpp"

namespace dqc {

using NodeId = std::uint32_t;

enum class Role { client, server };

/// Undirected network graph with exactly one client node.
class Topology {
   public:
    /// Client 0 joined to servers 1..n_servers.
    static Topology star(std::size_t n_servers) {
        Topology t;
        t.add_node(0, Role::client);
        for (NodeId s = 1; s <= n_servers; s++) {
            t.add_node(s, Role::server);
            t.add_edge(0, s);
        }
        return t;
    }

    void add_node(NodeId id, Role role) {
        if (roles_.count(id)) {
            throw std::invalid_argument("duplicate node " + std::to_string(id));
        }
        roles_[id] = role;
        adj_[id];
    }

    void add_edge(NodeId a, NodeId b) {
        if (!has(a) || !has(b)) {
            throw std::invalid_argument("edge references unknown node");
        }
        if (a == b) {
            throw std::invalid_argument("self-loop on node " + std::to_string(a));
        }
        adj_[a].insert(b);
        adj_[b].insert(a);
    }

    bool has(NodeId id) const {
        return roles_.count(id) != 0;
    }

    Role role(NodeId id) const {
        auto it = roles_.find(id);
        if (it == roles_.end()) {
            throw std::invalid_argument("unknown node " + std::to_string(id));
        }
        return it->second;
    }

    bool adjacent(NodeId a, NodeId b) const {
        auto it = adj_.find(a);
        return it != adj_.end() && it->second.count(b) != 0;
    }

    const std::set<NodeId> &neighbors(NodeId id) const {
        auto it = adj_.find(id);
        if (it == adj_.end()) {
            throw std::invalid_argument("unknown node " + std::to_string(id));
        }
        return it->second;
    }

    NodeId client() const {
        for (const auto &[id, r] : roles_) {
            if (r == Role::client) {
                return id;
            }
        }
        throw std::invalid_argument("topology has no client");
    }

    std::vector<NodeId> servers() const {
        std::vector<NodeId> out;
        for (const auto &[id, r] : roles_) {
            if (r == Role::server) {
                out.push_back(id);
            }
        }
        return out;
    }

    std::vector<NodeId> nodes() const {
        std::vector<NodeId> out;
        for (const auto &[id, r] : roles_) {
            out.push_back(id);
        }
        return out;
    }

    std::size_t edge_count() const {
        std::size_t e = 0;
        for (const auto &[id, ns] : adj_) {
            e += ns.size();
        }
        return e / 2;
    }

    /// True when every edge joins the client to a server.
    bool is_star() const {
        NodeId c = client();
        for (const auto &[id, ns] : adj_) {
            for (NodeId other : ns) {
                if (id != c && other != c) {
                    return false;
                }
            }
        }
        return true;
    }

    std::vector<std::string> validate() const {
        std::vector<std::string> bad;
        std::size_t clients = 0;
        for (const auto &[id, r] : roles_) {
            clients += r == Role::client;
        }
        if (clients != 1) {
            bad.push_back("expected exactly one client, found " + std::to_string(clients));
            return bad;
        }
        std::set<NodeId> seen{client()};
        std::deque<NodeId> todo{client()};
        while (!todo.empty()) {
            NodeId cur = todo.front();
            todo.pop_front();
            for (NodeId nb : neighbors(cur)) {
                if (seen.insert(nb).second) {
                    todo.push_back(nb);
                }
            }
        }
        if (seen.size() != roles_.size()) {
            bad.push_back("topology is not connected");
        }
        return bad;
    }

   private:
    std::map<NodeId, Role> roles_;
    std::map<NodeId, std::set<NodeId>> adj_;
};

/// Minimum-hop route from a to c. Among equal-length routes the one whose
/// next hop has the smallest NodeId wins at every step.
inline std::vector<NodeId> shortest_path(const Topology &t, NodeId a, NodeId c) {
    if (!t.has(a) || !t.has(c)) {
        throw std::invalid_argument("shortest_path on unknown node");
    }
    std::map<NodeId, std::size_t> dist{{c, 0}};
    std::deque<NodeId> todo{c};
    while (!todo.empty()) {
        NodeId cur = todo.front();
        todo.pop_front();
        for (NodeId nb : t.neighbors(cur)) {
            if (!dist.count(nb)) {
                dist[nb] = dist[cur] + 1;
                todo.push_back(nb);
            }
        }
    }
    if (!dist.count(a)) {
        throw std::invalid_argument("no route between nodes");
    }
    std::vector<NodeId> path{a};
    NodeId cur = a;
    while (cur != c) {
        for (NodeId nb : t.neighbors(cur)) {
            auto it = dist.find(nb);
            if (it != dist.end() && it->second + 1 == dist[cur]) {
                cur = nb;
                break;
            }
        }
        path.push_back(cur);
    }
    return path;
}

enum class Phase { setup, compute, verify, recovery };

inline const char *phase_name(Phase p) {
    switch (p) {
        case Phase::setup:
            return "setup";
        case Phase::compute:
            return "compute";
        case Phase::verify:
            return "verify";
        case Phase::recovery:
            return "recovery";
    }
    return "?";
}

inline constexpr std::array<Phase, 4> kAllPhases = {Phase::setup, Phase::compute, Phase::verify,
                                                   Phase::recovery};

/// How a charge enters the cost-model book.
///
/// model: pairs and bits count. blinding: pairs count, bits do not.
/// expansion and auxiliary: physical only.
enum class Tag { model, blinding, expansion, auxiliary };

inline const char *tag_name(Tag t) {
    switch (t) {
        case Tag::model:
            return "model";
        case Tag::blinding:
            return "blinding";
        case Tag::expansion:
            return "expansion";
        case Tag::auxiliary:
            return "auxiliary";
    }
    return "?";
}

enum class MessageKind { teleport, swap, syndrome, instruction, readout };

inline const char *kind_name(MessageKind k) {
    switch (k) {
        case MessageKind::teleport:
            return "teleport";
        case MessageKind::swap:
            return "swap";
        case MessageKind::syndrome:
            return "syndrome";
        case MessageKind::instruction:
            return "instruction";
        case MessageKind::readout:
            return "readout";
    }
    return "?";
}

/// One classical transmission. A missing receiver is a broadcast to all servers.
struct Message {
    NodeId sender = 0;
    std::optional<NodeId> receiver;
    std::vector<std::uint8_t> bits;
    Phase phase = Phase::setup;
    MessageKind kind = MessageKind::teleport;
    Tag tag = Tag::model;
};

class ClassicalLog {
   public:
    void append(Message m) {
        if (m.bits.empty()) {
            throw std::invalid_argument("classical message with empty payload");
        }
        records_.push_back(std::move(m));
    }

    const std::vector<Message> &records() const {
        return records_;
    }

    std::size_t total_bits() const {
        std::size_t n = 0;
        for (const auto &m : records_) {
            n += m.bits.size();
        }
        return n;
    }

    /// Bits received by server nodes on every channel except instructions,
    /// in transmission order.
    std::vector<std::uint8_t> server_received_stream(const Topology &t) const {
        std::vector<std::uint8_t> out;
        for (const auto &m : records_) {
            if (m.kind == MessageKind::instruction) {
                continue;
            }
            if (!m.receiver.has_value() || t.role(*m.receiver) == Role::server) {
                out.insert(out.end(), m.bits.begin(), m.bits.end());
            }
        }
        return out;
    }

    /// Record count per receiving node, broadcasts credited to every server.
    std::map<NodeId, std::size_t> received_counts(const Topology &t, std::optional<MessageKind> kind) const {
        std::map<NodeId, std::size_t> out;
        for (NodeId s : t.servers()) {
            out[s] = 0;
        }
        for (const auto &m : records_) {
            if (kind.has_value() && m.kind != *kind) {
                continue;
            }
            if (m.receiver.has_value()) {
                out[*m.receiver]++;
            } else {
                for (NodeId s : t.servers()) {
                    out[s]++;
                }
            }
        }
        return out;
    }

   private:
    std::vector<Message> records_;
};

struct Tally {
    std::uint64_t bell_pairs = 0;
    std::uint64_t classical_bits = 0;
    bool operator==(const Tally &) const = default;
    Tally &operator+=(const Tally &o) {
        bell_pairs += o.bell_pairs;
        classical_bits += o.classical_bits;
        return *this;
    }
};

/// Per-phase Bell-pair and classical-bit counters kept in two books.
class ResourceLedger {
   public:
    void charge_pair(Phase phase, Tag tag, bool swap_activity) {
        physical_[idx(phase)].bell_pairs++;
        if (tag == Tag::model || tag == Tag::blinding) {
            model_[idx(phase)].bell_pairs++;
        }
        if (swap_activity) {
            swap_.bell_pairs++;
        }
    }

    void charge_bits(Phase phase, Tag tag, MessageKind kind, std::uint64_t bits) {
        physical_[idx(phase)].classical_bits += bits;
        if (tag == Tag::model) {
            model_[idx(phase)].classical_bits += bits;
        }
        if (tag == Tag::blinding) {
            blinding_bits_ += bits;
        }
        if (kind == MessageKind::swap) {
            swap_.classical_bits += bits;
        }
    }

    Tally physical(Phase p) const {
        return physical_[idx(p)];
    }
    Tally model(Phase p) const {
        return model_[idx(p)];
    }
    Tally physical_total() const {
        Tally t;
        for (const auto &x : physical_) {
            t += x;
        }
        return t;
    }
    Tally model_total() const {
        Tally t;
        for (const auto &x : model_) {
            t += x;
        }
        return t;
    }
    /// Pairs consumed and bits sent by entanglement swapping, across phases.
    Tally swap_activity() const {
        return swap_;
    }
    /// Classical bits of dummy trap rounds; excluded from the model book.
    std::uint64_t blinding_bits() const {
        return blinding_bits_;
    }

   private:
    static std::size_t idx(Phase p) {
        return static_cast<std::size_t>(p);
    }
    std::array<Tally, 4> physical_{};
    std::array<Tally, 4> model_{};
    Tally swap_{};
    std::uint64_t blinding_bits_ = 0;
};

struct BellPair {
    NodeId a = 0;
    NodeId b = 0;
    QubitRef qa;
    QubitRef qb;
    bool long_distance = false;
};

/// Topology, simulator, Bell-pair registry, classical log and ledger for one run.
class Network {
   public:
    Network(Topology topology, Rng rng)
        : topology_(std::move(topology)), sim_(rng.split("sim")), rng_(rng.split("protocol")) {
        auto bad = topology_.validate();
        if (!bad.empty()) {
            throw std::invalid_argument("invalid topology: " + bad.front());
        }
    }

    const Topology &topology() const {
        return topology_;
    }
    SimState &sim() {
        return sim_;
    }
    const SimState &sim() const {
        return sim_;
    }
    ClassicalLog &log() {
        return log_;
    }
    const ClassicalLog &log() const {
        return log_;
    }
    ResourceLedger &ledger() {
        return ledger_;
    }
    const ResourceLedger &ledger() const {
        return ledger_;
    }
    Rng &rng() {
        return rng_;
    }

    QubitRef allocate(NodeId host) {
        if (!topology_.has(host)) {
            throw std::invalid_argument("allocate on unknown node " + std::to_string(host));
        }
        QubitRef q = sim_.allocate();
        hosts_[q.id] = host;
        return q;
    }

    void retire(QubitRef q) {
        sim_.retire(q);
        hosts_.erase(q.id);
    }

    void discard(QubitRef q) {
        sim_.discard(q);
        hosts_.erase(q.id);
    }

    NodeId host_of(QubitRef q) const {
        auto it = hosts_.find(q.id);
        if (it == hosts_.end()) {
            throw std::invalid_argument("qubit is not hosted");
        }
        return it->second;
    }

    /// Live qubits held at a node, in allocation order.
    std::vector<QubitRef> qubits_at(NodeId node) const {
        std::vector<QubitRef> out;
        for (const auto &[id, h] : hosts_) {
            if (h == node) {
                out.push_back(QubitRef{id});
            }
        }
        return out;
    }

    /// Allocates |Phi+> across an edge and charges one pair.
    BellPair create_bell_pair(NodeId a, NodeId b) {
        if (!topology_.adjacent(a, b)) {
            throw std::invalid_argument("create_bell_pair on non-adjacent nodes " + std::to_string(a) + ", " +
                                        std::to_string(b));
        }
        charge_pair();
        BellPair p{a, b, allocate(a), allocate(b), false};
        sim_.h(p.qa);
        sim_.cx(p.qa, p.qb);
        return p;
    }

    /// Records the consumption of a swapped pair by a gate teleportation.
    void charge_pair() {
        if (pair_budget_.has_value() && pairs_used_ >= *pair_budget_) {
            throw ResourceExhausted("Bell-pair budget of " + std::to_string(*pair_budget_) + " exhausted");
        }
        pairs_used_++;
        ledger_.charge_pair(phase_, tag_, swap_depth_ > 0);
    }

    void set_pair_budget(std::optional<std::uint64_t> budget) {
        pair_budget_ = budget;
    }

    /// Logs a message and charges its bits. Server-to-server messages need an
    /// open relay scope.
    void send_classical(NodeId from, std::optional<NodeId> to, std::vector<std::uint8_t> bits, MessageKind kind) {
        if (bits.empty()) {
            throw std::invalid_argument("classical message with empty payload");
        }
        if (!topology_.has(from) || (to.has_value() && !topology_.has(*to))) {
            throw std::invalid_argument("message endpoint is not in the topology");
        }
        if (to.has_value() && topology_.role(from) == Role::server && topology_.role(*to) == Role::server &&
            relay_depth_ == 0) {
            throw std::invalid_argument("server-to-server message outside a relay scope");
        }
        if (!to.has_value() && topology_.role(from) != Role::client) {
            throw std::invalid_argument("only the client broadcasts");
        }
        ledger_.charge_bits(phase_, tag_, kind, bits.size());
        log_.append(Message{from, to, std::move(bits), phase_, kind, tag_});
    }

    /// Measurement outcome produced at a node. Server-side outcomes pass
    /// through the outcome filter, which an adversary may install.
    int report_outcome(NodeId node, int outcome) {
        if (outcome_filter && topology_.role(node) == Role::server) {
            return outcome_filter(node, outcome) & 1;
        }
        return outcome;
    }

    std::function<int(NodeId, int)> outcome_filter;

    /// Scoped accounting context: every charge inside lands in (phase, tag).
    class Context {
       public:
        Context(Network &net, Phase phase, Tag tag) : net_(net), phase_(net.phase_), tag_(net.tag_) {
            net.phase_ = phase;
            net.tag_ = tag;
        }
        ~Context() {
            net_.phase_ = phase_;
            net_.tag_ = tag_;
        }
        Context(const Context &) = delete;
        Context &operator=(const Context &) = delete;

       private:
        Network &net_;
        Phase phase_;
        Tag tag_;
    };

    /// Changes only the tag, keeping the current phase.
    Context tagged(Tag tag) {
        return Context(*this, phase_, tag);
    }

    Phase phase() const {
        return phase_;
    }
    Tag tag() const {
        return tag_;
    }

    /// Scope in which server-to-server messages are allowed.
    class Relay {
       public:
        explicit Relay(Network &net) : net_(net) {
            net_.relay_depth_++;
        }
        ~Relay() {
            net_.relay_depth_--;
        }
        Relay(const Relay &) = delete;
        Relay &operator=(const Relay &) = delete;

       private:
        Network &net_;
    };

    /// Scope marking pairs and bits as entanglement-swap activity.
    class Swapping {
       public:
        explicit Swapping(Network &net) : net_(net) {
            net_.swap_depth_++;
        }
        ~Swapping() {
            net_.swap_depth_--;
        }
        Swapping(const Swapping &) = delete;
        Swapping &operator=(const Swapping &) = delete;

       private:
        Network &net_;
    };

   private:
    Topology topology_;
    SimState sim_;
    Rng rng_;
    ClassicalLog log_;
    ResourceLedger ledger_;
    std::map<std::uint32_t, NodeId> hosts_;
    Phase phase_ = Phase::setup;
    Tag tag_ = Tag::model;
    int relay_depth_ = 0;
    int swap_depth_ = 0;
    std::optional<std::uint64_t> pair_budget_;
    std::uint64_t pairs_used_ = 0;
};

/// |Phi+> with the first qubit least significant.
inline std::vector<cplx> phi_plus_state() {
    double r = 1 / std::numbers::sqrt2;
    return {r, 0, 0, r};
}

/// Chains elementary pairs along a route into one end-to-end |Phi+>.
///
/// Each intermediate node performs a Bell measurement (CNOT, H, two Z
/// measurements) and sends both bits forward; the far end applies
/// X^{m2} Z^{m1}. A route of m hops consumes m pairs and 2(m-1) bits.
inline BellPair swap_entanglement_along(Network &net, std::span<const NodeId> path) {
    if (path.size() < 2) {
        throw std::invalid_argument("route needs at least one hop");
    }
    for (std::size_t i = 0; i + 1 < path.size(); i++) {
        if (!net.topology().adjacent(path[i], path[i + 1])) {
            throw std::invalid_argument("route contains a non-adjacent hop");
        }
    }
    if (path.size() == 2) {
        return net.create_bell_pair(path[0], path[1]);
    }
    Network::Relay relay(net);
    Network::Swapping swapping(net);
    SimState &sim = net.sim();
    BellPair cur = net.create_bell_pair(path[0], path[1]);
    for (std::size_t i = 1; i + 1 < path.size(); i++) {
        BellPair next = net.create_bell_pair(path[i], path[i + 1]);
        sim.cx(cur.qb, next.qa);
        sim.h(cur.qb);
        int m1 = sim.measure(cur.qb, Basis::Z);
        int m2 = sim.measure(next.qa, Basis::Z);
        net.send_classical(path[i], path[i + 1],
                           {static_cast<std::uint8_t>(m1), static_cast<std::uint8_t>(m2)}, MessageKind::swap);
        if (m1) {
            sim.z(next.qb);
        }
        if (m2) {
            sim.x(next.qb);
        }
        net.retire(cur.qb);
        net.retire(next.qa);
        cur = BellPair{path[0], path[i + 1], cur.qa, next.qb, true};
    }
    QubitRef ends[2] = {cur.qa, cur.qb};
    auto ref = phi_plus_state();
    if (sim.fidelity(ends, ref) < 1 - kTolerance) {
        throw InvariantError("swapped pair lost fidelity with |Phi+>");
    }
    return cur;
}

}  // namespace dqc
