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

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dqc/common.hpp"
#include "dqc/statesim.hpp"

namespace dqc {

/// Local error correction inside one server node. Qubits are numbered from 1
/// as q1 (data) .. qn, the numbering the syndrome tables use.
enum class QecMethod {
    /// One data qubit and three ancillas; corrects any single Pauli on the data.
    four_qubit,
    /// One data qubit and five ancillas; corrects X and Y, flags Z.
    six_qubit,
};

inline std::size_t qec_width(QecMethod m) {
    return m == QecMethod::four_qubit ? 4 : 6;
}

/// Pauli error applied at the error slice, between encoding and decoding.
struct InjectedError {
    char pauli = 'X';
    std::size_t position = 1;
    bool operator==(const InjectedError &) const = default;
};

/// Error left on the data qubit after decoding.
enum class Residual { none, X, Z };

inline const char *residual_name(Residual r) {
    switch (r) {
        case Residual::none:
            return "N.E.";
        case Residual::X:
            return "X";
        case Residual::Z:
            return "Z";
    }
    return "?";
}

struct SyndromeCell {
    char error = 'X';
    std::size_t position = 1;
    Residual residual = Residual::none;
    std::string syndrome;
};

/// Lookup table keyed by (error kind, position).
struct SyndromeTable {
    QecMethod method = QecMethod::four_qubit;
    std::vector<SyndromeCell> cells;

    const SyndromeCell &at(char error, std::size_t position) const {
        for (const auto &c : cells) {
            if (c.error == error && c.position == position) {
                return c;
            }
        }
        throw std::out_of_range(std::string("no syndrome table cell for ") + error + " on q" +
                                std::to_string(position));
    }

    /// Plain-text grid: a header row, then per error kind one row of residuals
    /// and one row of syndromes.
    std::string to_text() const {
        std::size_t n = qec_width(method);
        std::vector<std::vector<std::string>> rows;
        std::vector<std::string> header{"Error"};
        for (std::size_t q = 1; q <= n; q++) {
            header.push_back("q" + std::to_string(q) + (q == 1 ? " (data)" : ""));
        }
        rows.push_back(header);
        for (char e : {'X', 'Z', 'Y'}) {
            std::vector<std::string> res{std::string(1, e)};
            std::vector<std::string> syn{""};
            for (std::size_t q = 1; q <= n; q++) {
                const auto &c = at(e, q);
                res.push_back(residual_name(c.residual));
                syn.push_back(c.syndrome);
            }
            rows.push_back(res);
            rows.push_back(syn);
        }
        std::vector<std::size_t> widths(n + 1, 0);
        for (const auto &r : rows) {
            for (std::size_t i = 0; i < r.size(); i++) {
                widths[i] = std::max(widths[i], r[i].size());
            }
        }
        std::ostringstream out;
        for (const auto &r : rows) {
            std::string line;
            for (std::size_t i = 0; i < r.size(); i++) {
                line += r[i];
                if (i + 1 < r.size()) {
                    line += std::string(widths[i] - r[i].size() + 2, ' ');
                }
            }
            while (!line.empty() && line.back() == ' ') {
                line.pop_back();
            }
            out << line << '\n';
        }
        return out.str();
    }
};

/// The published tables, residual annotations included.
inline std::pair<SyndromeTable, SyndromeTable> syndrome_tables() {
    using R = Residual;
    SyndromeTable m1{QecMethod::four_qubit, {}};
    const char *m1_syn[3][4] = {{"100", "100", "001", "001"}, {"010", "010", "010", "010"}, {"110", "110", "011", "011"}};
    const R m1_res[3][4] = {{R::none, R::Z, R::none, R::Z}, {R::none, R::none, R::X, R::X}, {R::none, R::Z, R::none, R::Z}};
    SyndromeTable m2{QecMethod::six_qubit, {}};
    const char *m2_syn[3][6] = {{"11000", "10000", "01000", "00011", "00010", "00001"},
                                {"00100", "00100", "00100", "00100", "00100", "00100"},
                                {"11100", "10100", "01100", "00111", "00110", "00101"}};
    const R m2_res[3][6] = {{R::none, R::none, R::none, R::none, R::none, R::none},
                            {R::none, R::none, R::none, R::X, R::X, R::X},
                            {R::none, R::none, R::none, R::none, R::none, R::none}};
    const char kinds[3] = {'X', 'Z', 'Y'};
    for (int e = 0; e < 3; e++) {
        for (std::size_t q = 0; q < 4; q++) {
            m1.cells.push_back({kinds[e], q + 1, m1_res[e][q], m1_syn[e][q]});
        }
        for (std::size_t q = 0; q < 6; q++) {
            m2.cells.push_back({kinds[e], q + 1, m2_res[e][q], m2_syn[e][q]});
        }
    }
    return {m1, m2};
}

/// Independent per-qubit Pauli noise.
struct BiasedNoiseChannel {
    double p_x = 0;
    double p_y = 0;
    double p_z = 0;

    void validate() const {
        for (double p : {p_x, p_y, p_z}) {
            if (!(p >= 0 && p <= 1)) {
                throw std::invalid_argument("noise probabilities must lie in [0, 1]");
            }
        }
        if (p_x + p_y + p_z > 1 + kTolerance) {
            throw std::invalid_argument("noise probabilities sum above 1");
        }
    }
};

/// Draws one Pauli per qubit; identity draws are omitted. Positions are 1-based.
inline std::vector<InjectedError> sample_noise(const BiasedNoiseChannel &ch, std::size_t qubits, Rng &rng) {
    ch.validate();
    std::vector<InjectedError> out;
    for (std::size_t q = 1; q <= qubits; q++) {
        double u = rng.uniform();
        if (u < ch.p_x) {
            out.push_back({'X', q});
        } else if (u < ch.p_x + ch.p_y) {
            out.push_back({'Y', q});
        } else if (u < ch.p_x + ch.p_y + ch.p_z) {
            out.push_back({'Z', q});
        }
    }
    return out;
}

struct QecRoundResult {
    std::string syndrome;
    /// Six-qubit scheme only: the syndrome is the Z flag and no correction ran.
    bool flagged = false;
};

namespace detail {

inline void encode_local(SimState &sim, QecMethod m, std::span<const QubitRef> q) {
    if (m == QecMethod::four_qubit) {
        sim.cx(q[0], q[2]);
        sim.h(q[0]);
        sim.h(q[2]);
        sim.cx(q[0], q[1]);
        sim.cx(q[2], q[3]);
        return;
    }
    sim.cx(q[0], q[3]);
    sim.h(q[0]);
    sim.h(q[3]);
    sim.cx(q[0], q[1]);
    sim.cx(q[3], q[4]);
    sim.cx(q[0], q[2]);
    sim.cx(q[3], q[5]);
}

inline void toffoli(SimState &sim, std::initializer_list<QubitRef> controls, QubitRef target) {
    std::vector<QubitRef> c(controls);
    sim.apply_controlled(mat::X(), c, target);
}

inline void decode_local(SimState &sim, QecMethod m, std::span<const QubitRef> q) {
    if (m == QecMethod::four_qubit) {
        sim.cx(q[0], q[1]);
        sim.cx(q[2], q[3]);
        sim.cx(q[1], q[0]);
        sim.cx(q[3], q[2]);
        sim.h(q[0]);
        sim.h(q[2]);
        sim.cx(q[0], q[2]);
        sim.cx(q[2], q[0]);
        toffoli(sim, {q[2], q[3]}, q[0]);
        return;
    }
    sim.cx(q[0], q[1]);
    sim.cx(q[3], q[4]);
    sim.cx(q[0], q[2]);
    sim.cx(q[3], q[5]);
    toffoli(sim, {q[1], q[2]}, q[0]);
    toffoli(sim, {q[4], q[5]}, q[3]);
    sim.h(q[0]);
    sim.h(q[3]);
    sim.cx(q[0], q[3]);
    sim.cx(q[3], q[0]);
    toffoli(sim, {q[3], q[4], q[5]}, q[0]);
    toffoli(sim, {q[3], q[5]}, q[0]);
    toffoli(sim, {q[3], q[4]}, q[0]);
}

}  // namespace detail

/// One round: fresh |0..0> ancillas, encode, inject errors, decode, measure
/// the ancillas. Decoding corrects coherently, so the data qubit needs no
/// further Pauli. The ancillas are retired before returning.
inline QecRoundResult qec_round(SimState &sim, QecMethod method, QubitRef data,
                                std::span<const InjectedError> errors) {
    std::size_t n = qec_width(method);
    for (const auto &e : errors) {
        if (e.position < 1 || e.position > n) {
            throw std::out_of_range("error position q" + std::to_string(e.position) + " outside 1.." +
                                    std::to_string(n));
        }
        if (e.pauli != 'X' && e.pauli != 'Y' && e.pauli != 'Z' && e.pauli != 'I') {
            throw std::invalid_argument(std::string("not a Pauli: ") + e.pauli);
        }
    }
    std::vector<QubitRef> q{data};
    for (std::size_t i = 1; i < n; i++) {
        q.push_back(sim.allocate());
    }
    detail::encode_local(sim, method, q);
    for (const auto &e : errors) {
        sim.apply(mat::pauli(e.pauli), q[e.position - 1]);
    }
    detail::decode_local(sim, method, q);
    QecRoundResult r;
    for (std::size_t i = 1; i < n; i++) {
        r.syndrome.push_back(sim.measure(q[i], Basis::Z) ? '1' : '0');
        sim.retire(q[i]);
    }
    r.flagged = method == QecMethod::six_qubit && r.syndrome == "00100";
    return r;
}

inline QecRoundResult qec4_round(SimState &sim, QubitRef data, std::optional<InjectedError> error = std::nullopt) {
    std::vector<InjectedError> e;
    if (error) {
        e.push_back(*error);
    }
    return qec_round(sim, QecMethod::four_qubit, data, e);
}

inline QecRoundResult qec6_round(SimState &sim, QubitRef data, std::optional<InjectedError> error = std::nullopt) {
    std::vector<InjectedError> e;
    if (error) {
        e.push_back(*error);
    }
    return qec_round(sim, QecMethod::six_qubit, data, e);
}

/// Which Pauli maps the input to the output, up to global phase; nullopt if
/// none does.
inline std::optional<Residual> classify_residual(std::span<const cplx> in, std::span<const cplx> out) {
    auto fid = [&](const Mat2 &u) {
        cplx a = u[0] * in[0] + u[1] * in[1];
        cplx b = u[2] * in[0] + u[3] * in[1];
        return std::norm(std::conj(out[0]) * a + std::conj(out[1]) * b);
    };
    if (fid(mat::I()) > 1 - kTolerance) {
        return Residual::none;
    }
    if (fid(mat::X()) > 1 - kTolerance) {
        return Residual::X;
    }
    if (fid(mat::Z()) > 1 - kTolerance) {
        return Residual::Z;
    }
    return std::nullopt;
}

/// Simulates one table cell on a generic data state and reports the observed
/// residual and syndrome.
inline SyndromeCell simulate_cell(QecMethod method, char error, std::size_t position) {
    // A state with no Pauli symmetry, so residuals are unambiguous.
    std::array<cplx, 2> psi{cplx(0.6, 0.0), cplx(0.48, 0.64)};
    SimState sim;
    QubitRef data = sim.allocate();
    QubitRef one[1] = {data};
    sim.overwrite(one, psi);
    InjectedError e{error, position};
    auto r = qec_round(sim, method, data, std::span<const InjectedError>(&e, 1));
    auto out = sim.amplitudes(one);
    auto res = classify_residual(psi, out);
    if (!res) {
        throw InvariantError("decoded data qubit is not a Pauli image of the input");
    }
    return SyndromeCell{error, position, *res, r.syndrome};
}

struct QecMonteCarlo {
    std::size_t trials = 0;
    std::size_t failures = 0;
    std::size_t flagged = 0;
    double failure_rate = 0;
};

/// Six-qubit rounds under sampled noise. A round fails if it raises the flag
/// or leaves the data qubit away from its input state.
inline QecMonteCarlo monte_carlo_six_qubit(const BiasedNoiseChannel &ch, std::size_t trials, std::uint64_t seed) {
    ch.validate();
    Rng root(seed);
    QecMonteCarlo mc;
    mc.trials = trials;
    std::array<cplx, 2> psi{cplx(0.6, 0.0), cplx(0.48, 0.64)};
    for (std::size_t t = 0; t < trials; t++) {
        Rng rng = root.split(t);
        auto errors = sample_noise(ch, 6, rng);
        if (errors.empty()) {
            continue;
        }
        SimState sim(rng.split("sim"));
        QubitRef data = sim.allocate();
        QubitRef one[1] = {data};
        sim.overwrite(one, psi);
        auto r = qec_round(sim, QecMethod::six_qubit, data, errors);
        bool ok = sim.fidelity(one, psi) > 1 - kTolerance;
        mc.flagged += r.flagged ? 1 : 0;
        mc.failures += (r.flagged || !ok) ? 1 : 0;
    }
    mc.failure_rate = trials == 0 ? 0 : static_cast<double>(mc.failures) / static_cast<double>(trials);
    return mc;
}

}  // namespace dqc
