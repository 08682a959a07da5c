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

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqc/network.hpp"
#include "dqc/pauli.hpp"
#include "dqc/protocols.hpp"
#include "dqc/statesim.hpp"
#include "dqc/verification.hpp"

namespace dqc::io {

/// Malformed input file; the message carries the line number.
class ParseError : public std::invalid_argument {
   public:
    ParseError(const std::string &what, std::size_t line)
        : std::invalid_argument("line " + std::to_string(line) + ": " + what) {
    }
};

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::invalid_argument("cannot write " + path);
    }
    out << text;
}

namespace detail {

/// Splits into lines, dropping '#' comments and surrounding blanks. Keeps
/// 1-based line numbers for messages.
inline std::vector<std::pair<std::size_t, std::string>> content_lines(const std::string &text) {
    std::vector<std::pair<std::size_t, std::string>> out;
    std::istringstream in(text);
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
        no++;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) {
            continue;
        }
        auto last = line.find_last_not_of(" \t\r");
        out.emplace_back(no, line.substr(first, last - first + 1));
    }
    return out;
}

inline std::vector<std::string> words(const std::string &line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) {
        out.push_back(w);
    }
    return out;
}

inline std::size_t to_index(const std::string &w, std::size_t line) {
    if (w.empty() || w.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError("expected a non-negative integer, got '" + w + "'", line);
    }
    try {
        return std::stoull(w);
    } catch (const std::out_of_range &) {
        throw ParseError("integer out of range: " + w, line);
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Code files: "n k", then n-k generators, k logical Z, k logical X.

inline StabilizerCode parse_code(const std::string &text, const std::string &name = "custom") {
    auto lines = detail::content_lines(text);
    if (lines.empty()) {
        throw ParseError("empty code file", 1);
    }
    auto head = detail::words(lines[0].second);
    if (head.size() != 2) {
        throw ParseError("header must be 'n k'", lines[0].first);
    }
    StabilizerCode code;
    code.name = name;
    code.n = detail::to_index(head[0], lines[0].first);
    code.k = detail::to_index(head[1], lines[0].first);
    if (code.k > code.n || code.n == 0) {
        throw ParseError("need 0 <= k <= n and n > 0", lines[0].first);
    }
    std::size_t want = code.n + code.k;
    if (lines.size() - 1 != want) {
        throw ParseError("expected " + std::to_string(want) + " operator lines, got " +
                             std::to_string(lines.size() - 1),
                         lines.back().first);
    }
    for (std::size_t i = 1; i < lines.size(); i++) {
        PauliString p;
        try {
            p = PauliString::from_str(lines[i].second);
        } catch (const std::invalid_argument &e) {
            throw ParseError(e.what(), lines[i].first);
        }
        std::size_t idx = i - 1;
        if (idx < code.n - code.k) {
            code.generators.push_back(p);
        } else if (idx < code.n) {
            code.logical_z.push_back(p);
        } else {
            code.logical_x.push_back(p);
        }
    }
    return code;
}

inline std::string format_code(const StabilizerCode &code) {
    std::ostringstream out;
    out << code.n << ' ' << code.k << '\n';
    for (const auto *ops : {&code.generators, &code.logical_z, &code.logical_x}) {
        for (const auto &p : *ops) {
            out << p.str() << '\n';
        }
    }
    return out.str();
}

/// A built-in code name or a path to a code file. Rejects codes that fail
/// validation, listing every violated invariant.
inline StabilizerCode load_code(const std::string &spec) {
    StabilizerCode code;
    if (spec == "steane") {
        code = steane_code();
    } else {
        code = parse_code(read_file(spec), spec);
    }
    auto problems = validate_code(code);
    if (!problems.empty()) {
        std::string msg = "invalid code " + spec + ":";
        for (const auto &p : problems) {
            msg += "\n  " + p;
        }
        throw std::invalid_argument(msg);
    }
    return code;
}

// ---------------------------------------------------------------------------
// Topology files: "client: <id>", then one "a b" edge per line. Every other
// node is a server.

inline Topology parse_topology(const std::string &text) {
    auto lines = detail::content_lines(text);
    if (lines.empty()) {
        throw ParseError("empty topology file", 1);
    }
    auto head = detail::words(lines[0].second);
    if (head.size() != 2 || head[0] != "client:") {
        throw ParseError("header must be 'client: <id>'", lines[0].first);
    }
    NodeId client = static_cast<NodeId>(detail::to_index(head[1], lines[0].first));
    Topology t;
    t.add_node(client, Role::client);
    for (std::size_t i = 1; i < lines.size(); i++) {
        auto w = detail::words(lines[i].second);
        if (w.size() != 2) {
            throw ParseError("edge line must be 'a b'", lines[i].first);
        }
        NodeId a = static_cast<NodeId>(detail::to_index(w[0], lines[i].first));
        NodeId b = static_cast<NodeId>(detail::to_index(w[1], lines[i].first));
        for (NodeId id : {a, b}) {
            if (!t.has(id)) {
                t.add_node(id, Role::server);
            }
        }
        try {
            t.add_edge(a, b);
        } catch (const std::invalid_argument &e) {
            throw ParseError(e.what(), lines[i].first);
        }
    }
    auto bad = t.validate();
    if (!bad.empty()) {
        throw std::invalid_argument("invalid topology: " + bad.front());
    }
    return t;
}

inline std::string format_topology(const Topology &t) {
    std::ostringstream out;
    out << "client: " << t.client() << '\n';
    for (NodeId a : t.nodes()) {
        for (NodeId b : t.neighbors(a)) {
            if (a < b) {
                out << a << ' ' << b << '\n';
            }
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Gate files: "H 0", "S 0", "T 0", "CNOT 0 1", "CZ 0 1"; '#' comments.

inline std::vector<LogicalGate> parse_gates(const std::string &text) {
    std::vector<LogicalGate> out;
    for (const auto &[no, line] : detail::content_lines(text)) {
        auto w = detail::words(line);
        LogicalGate g;
        if (w[0] == "H") {
            g.op = LogicalOp::H;
        } else if (w[0] == "S") {
            g.op = LogicalOp::S;
        } else if (w[0] == "T") {
            g.op = LogicalOp::T;
        } else if (w[0] == "CNOT") {
            g.op = LogicalOp::CNOT;
        } else if (w[0] == "CZ") {
            g.op = LogicalOp::CZ;
        } else {
            throw ParseError("unknown gate '" + w[0] + "'", no);
        }
        std::size_t arity = is_two_qubit(g.op) ? 2 : 1;
        if (w.size() != arity + 1) {
            throw ParseError(w[0] + " takes " + std::to_string(arity) + " operand(s)", no);
        }
        g.a = detail::to_index(w[1], no);
        if (arity == 2) {
            g.b = detail::to_index(w[2], no);
            if (g.a == g.b) {
                throw ParseError("two-qubit gate on a single logical qubit", no);
            }
        }
        out.push_back(g);
    }
    return out;
}

inline std::string format_gates(std::span<const LogicalGate> gates) {
    std::string out;
    for (const auto &g : gates) {
        out += to_string(g) + '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// State dumps: "index real imag" per line, amplitudes under 1e-12 omitted.

inline std::string dump_state(std::span<const cplx> amps) {
    std::string out;
    char buf[96];
    for (std::size_t i = 0; i < amps.size(); i++) {
        if (std::abs(amps[i]) < 1e-12) {
            continue;
        }
        std::snprintf(buf, sizeof buf, "%zu %.17g %.17g\n", i, amps[i].real(), amps[i].imag());
        out += buf;
    }
    return out;
}

inline std::vector<cplx> parse_state(const std::string &text, std::size_t dim) {
    std::vector<cplx> out(dim, 0);
    for (const auto &[no, line] : detail::content_lines(text)) {
        std::istringstream in(line);
        std::size_t idx = 0;
        double re = 0, im = 0;
        if (!(in >> idx >> re >> im) || idx >= dim) {
            throw ParseError("expected 'index real imag' with index below " + std::to_string(dim), no);
        }
        out[idx] = cplx(re, im);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Adversary specs: "honest", "pauli:POS:P[,POS:P...]", "random:D[:P]", "lie:PROB".

inline AdversaryStrategy parse_adversary(const std::string &spec) {
    auto fail = [&](const std::string &why) {
        return std::invalid_argument("bad adversary '" + spec + "': " + why);
    };
    auto colon = spec.find(':');
    std::string kind = spec.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto pauli_char = [&](const std::string &s) {
        if (s.size() != 1 || std::string("XYZ").find(s[0]) == std::string::npos) {
            throw fail("Pauli must be X, Y or Z");
        }
        return s[0];
    };
    auto number = [&](const std::string &s) {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
            throw fail("expected a non-negative integer, got '" + s + "'");
        }
        return static_cast<std::size_t>(std::stoull(s));
    };
    if (kind == "honest" && rest.empty()) {
        return AdversaryStrategy::honest();
    }
    if (kind == "pauli") {
        std::vector<std::pair<NodeId, char>> attacks;
        std::istringstream in(rest);
        std::string item;
        while (std::getline(in, item, ',')) {
            auto c = item.find(':');
            if (c == std::string::npos) {
                throw fail("expected POS:P");
            }
            attacks.emplace_back(static_cast<NodeId>(number(item.substr(0, c))), pauli_char(item.substr(c + 1)));
        }
        if (attacks.empty()) {
            throw fail("no attacks listed");
        }
        return AdversaryStrategy::fixed_pauli(attacks);
    }
    if (kind == "random") {
        auto c = rest.find(':');
        std::size_t d = number(rest.substr(0, c));
        std::optional<char> only;
        if (c != std::string::npos) {
            only = pauli_char(rest.substr(c + 1));
        }
        return AdversaryStrategy::random_pauli(d, only);
    }
    if (kind == "lie") {
        double p = 0;
        std::size_t used = 0;
        try {
            p = std::stod(rest, &used);
        } catch (const std::logic_error &) {
            throw fail("expected a probability");
        }
        if (used != rest.size()) {
            throw fail("trailing characters");
        }
        if (!(p >= 0 && p <= 1)) {
            throw fail("probability outside [0, 1]");
        }
        return AdversaryStrategy::lying_measurement(p);
    }
    throw fail("unknown kind");
}

}  // namespace dqc::io
