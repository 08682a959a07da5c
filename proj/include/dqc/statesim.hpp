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
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqc/common.hpp"
#include "dqc/pauli.hpp"

namespace dqc {

using cplx = std::complex<double>;

/// Opaque handle to a simulated qubit.
struct QubitRef {
    std::uint32_t id = 0;
    auto operator<=>(const QubitRef &) const = default;
};

/// Row-major 2x2 matrix.
using Mat2 = std::array<cplx, 4>;

namespace mat {
inline Mat2 I() {
    return {1, 0, 0, 1};
}
inline Mat2 X() {
    return {0, 1, 1, 0};
}
inline Mat2 Y() {
    return {0, cplx(0, -1), cplx(0, 1), 0};
}
inline Mat2 Z() {
    return {1, 0, 0, -1};
}
inline Mat2 H() {
    double r = 1 / std::numbers::sqrt2;
    return {r, r, r, -r};
}
inline Mat2 S() {
    return {1, 0, 0, cplx(0, 1)};
}
inline Mat2 Sdg() {
    return {1, 0, 0, cplx(0, -1)};
}
inline Mat2 T() {
    return {1, 0, 0, std::polar(1.0, std::numbers::pi / 4)};
}
inline Mat2 Tdg() {
    return {1, 0, 0, std::polar(1.0, -std::numbers::pi / 4)};
}
inline Mat2 mul(const Mat2 &a, const Mat2 &b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}
inline Mat2 pauli(char p) {
    switch (p) {
        case 'I':
            return I();
        case 'X':
            return X();
        case 'Y':
            return Y();
        case 'Z':
            return Z();
    }
    throw std::invalid_argument("not a Pauli character");
}
}  // namespace mat

enum class Basis { Z, X };

/// Gate vocabulary shared by the simulator and the tableau tracker.
enum class Gate { I, X, Y, Z, H, S, Sdg, T, Tdg, CNOT, CZ };

inline std::size_t gate_arity(Gate g) {
    return (g == Gate::CNOT || g == Gate::CZ) ? 2 : 1;
}

inline Mat2 gate_matrix(Gate g) {
    switch (g) {
        case Gate::I:
            return mat::I();
        case Gate::X:
            return mat::X();
        case Gate::Y:
            return mat::Y();
        case Gate::Z:
            return mat::Z();
        case Gate::H:
            return mat::H();
        case Gate::S:
            return mat::S();
        case Gate::Sdg:
            return mat::Sdg();
        case Gate::T:
            return mat::T();
        case Gate::Tdg:
            return mat::Tdg();
        case Gate::CNOT:
            return mat::X();
        case Gate::CZ:
            return mat::Z();
    }
    return mat::I();
}

/// Statevector simulator with dynamic allocation.
///
/// The state is held as a product of independent dense blocks. A block's
/// qubit list maps tensor positions to qubits with position 0 the least
/// significant bit of the amplitude index. Blocks merge when an entangling
/// gate spans them, and measured qubits are factored back out.
class SimState {
   public:
    explicit SimState(Rng rng = Rng(0)) : rng_(std::move(rng)) {
    }

    QubitRef allocate() {
        QubitRef q{next_id_++};
        Block b;
        b.amps = {1.0, 0.0};
        b.ids = {q.id};
        where_[q.id] = store(std::move(b));
        live_++;
        peak_live_ = std::max(peak_live_, live_);
        return q;
    }

    /// Removes a qubit. It must be unentangled from the rest of the state.
    void retire(QubitRef q) {
        std::size_t bi = block_of(q);
        if (blocks_[bi].ids.size() > 1) {
            factor_out(q);
            bi = block_of(q);
        }
        blocks_[bi].ids.clear();
        blocks_[bi].amps.clear();
        free_.push_back(bi);
        where_.erase(q.id);
        live_--;
    }

    /// Destroys a qubit by measuring it in Z and retiring it.
    void discard(QubitRef q) {
        measure(q, Basis::Z);
        retire(q);
    }

    bool is_live(QubitRef q) const {
        return where_.count(q.id) != 0;
    }

    std::size_t live_qubits() const {
        return live_;
    }
    std::size_t peak_live_qubits() const {
        return peak_live_;
    }
    /// Largest dense block seen so far.
    std::size_t peak_block_width() const {
        return peak_width_;
    }
    std::size_t block_width(QubitRef q) const {
        return blocks_[block_of(q)].ids.size();
    }
    Rng &rng() {
        return rng_;
    }

    void apply(const Mat2 &u, QubitRef q) {
        Block &b = blocks_[block_of(q)];
        std::size_t bit = std::size_t{1} << position(b, q);
        std::size_t dim = b.amps.size();
        for (std::size_t i = 0; i < dim; i++) {
            if (i & bit) {
                continue;
            }
            cplx a0 = b.amps[i];
            cplx a1 = b.amps[i | bit];
            b.amps[i] = u[0] * a0 + u[1] * a1;
            b.amps[i | bit] = u[2] * a0 + u[3] * a1;
        }
    }

    /// Applies u to target when every control is |1>.
    void apply_controlled(const Mat2 &u, std::span<const QubitRef> controls, QubitRef target) {
        std::vector<QubitRef> all(controls.begin(), controls.end());
        all.push_back(target);
        for (std::size_t i = 0; i < all.size(); i++) {
            for (std::size_t j = i + 1; j < all.size(); j++) {
                if (all[i] == all[j]) {
                    throw std::invalid_argument("controlled gate with repeated qubit");
                }
            }
        }
        std::size_t bi = merge(all);
        Block &b = blocks_[bi];
        std::size_t cmask = 0;
        for (auto c : controls) {
            cmask |= std::size_t{1} << position(b, c);
        }
        std::size_t bit = std::size_t{1} << position(b, target);
        std::size_t dim = b.amps.size();
        for (std::size_t i = 0; i < dim; i++) {
            if ((i & bit) || (i & cmask) != cmask) {
                continue;
            }
            cplx a0 = b.amps[i];
            cplx a1 = b.amps[i | bit];
            b.amps[i] = u[0] * a0 + u[1] * a1;
            b.amps[i | bit] = u[2] * a0 + u[3] * a1;
        }
    }

    void apply_controlled(const Mat2 &u, QubitRef control, QubitRef target) {
        QubitRef c[1] = {control};
        apply_controlled(u, c, target);
    }

    void apply(Gate g, std::span<const QubitRef> qubits) {
        if (qubits.size() != gate_arity(g)) {
            throw std::invalid_argument("wrong number of qubits for gate");
        }
        if (g == Gate::CNOT || g == Gate::CZ) {
            apply_controlled(gate_matrix(g), qubits[0], qubits[1]);
        } else {
            apply(gate_matrix(g), qubits[0]);
        }
    }

    void h(QubitRef q) {
        apply(mat::H(), q);
    }
    void s(QubitRef q) {
        apply(mat::S(), q);
    }
    void sdg(QubitRef q) {
        apply(mat::Sdg(), q);
    }
    void x(QubitRef q) {
        apply(mat::X(), q);
    }
    void y(QubitRef q) {
        apply(mat::Y(), q);
    }
    void z(QubitRef q) {
        apply(mat::Z(), q);
    }
    void t(QubitRef q) {
        apply(mat::T(), q);
    }
    void cx(QubitRef c, QubitRef t) {
        apply_controlled(mat::X(), c, t);
    }
    void cz(QubitRef c, QubitRef t) {
        apply_controlled(mat::Z(), c, t);
    }

    /// Applies the unsigned Pauli factors of p to the listed qubits.
    void apply_pauli(const PauliString &p, std::span<const QubitRef> qubits) {
        if (p.size() != qubits.size()) {
            throw std::invalid_argument("Pauli length does not match qubit count");
        }
        for (std::size_t i = 0; i < qubits.size(); i++) {
            char c = p.at(i);
            if (c != 'I') {
                apply(mat::pauli(c), qubits[i]);
            }
        }
    }

    /// Probability that measuring q in the given basis yields 1.
    double probability_one(QubitRef q, Basis basis) {
        if (basis == Basis::X) {
            h(q);
        }
        const Block &b = blocks_[block_of(q)];
        std::size_t bit = std::size_t{1} << position(b, q);
        double p1 = 0;
        for (std::size_t i = 0; i < b.amps.size(); i++) {
            if (i & bit) {
                p1 += std::norm(b.amps[i]);
            }
        }
        if (basis == Basis::X) {
            h(q);
        }
        return p1;
    }

    /// Measures q. Outcome 0 is the +1 eigenvalue. The qubit is left in the
    /// matching eigenstate and factored out of its block.
    int measure(QubitRef q, Basis basis = Basis::Z) {
        double p1 = probability_one(q, basis);
        int m = rng_.uniform() < p1 ? 1 : 0;
        collapse(q, basis, m, m == 1 ? p1 : 1 - p1);
        return m;
    }

    /// Projects q onto a chosen outcome. Fails on a zero-probability branch.
    void force_measure(QubitRef q, Basis basis, int outcome) {
        double p1 = probability_one(q, basis);
        double p = outcome == 1 ? p1 : 1 - p1;
        if (p < kTolerance) {
            throw std::invalid_argument("forced measurement onto a zero-probability branch");
        }
        collapse(q, basis, outcome, p);
    }

    /// <psi| P |psi> for a Hermitian Pauli on the listed qubits.
    double expectation(const PauliString &p, std::span<const QubitRef> qubits) const {
        if (p.size() != qubits.size()) {
            throw std::invalid_argument("Pauli length does not match qubit count");
        }
        if (!p.is_hermitian()) {
            throw std::invalid_argument("expectation of a non-Hermitian Pauli");
        }
        std::map<std::size_t, std::pair<std::size_t, std::size_t>> masks;
        int ys = 0;
        for (std::size_t i = 0; i < qubits.size(); i++) {
            char c = p.at(i);
            if (c == 'I') {
                block_of(qubits[i]);
                continue;
            }
            std::size_t bi = block_of(qubits[i]);
            std::size_t bit = std::size_t{1} << position(blocks_[bi], qubits[i]);
            auto &m = masks[bi];
            if (c == 'X' || c == 'Y') {
                m.first |= bit;
            }
            if (c == 'Z' || c == 'Y') {
                m.second |= bit;
            }
            ys += c == 'Y';
        }
        cplx total = 1.0;
        for (const auto &[bi, m] : masks) {
            const auto &amps = blocks_[bi].amps;
            cplx acc = 0;
            for (std::size_t i = 0; i < amps.size(); i++) {
                double sign = (std::popcount(i & m.second) & 1) ? -1.0 : 1.0;
                acc += std::conj(amps[i ^ m.first]) * amps[i] * sign;
            }
            total *= acc;
        }
        static const cplx kIPow[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
        total *= kIPow[(ys + p.phase()) & 3];
        return total.real();
    }

    /// Single-qubit reduced density matrix, row-major.
    Mat2 reduced_density(QubitRef q) const {
        const Block &b = blocks_[block_of(q)];
        std::size_t bit = std::size_t{1} << position(b, q);
        Mat2 rho{0, 0, 0, 0};
        for (std::size_t i = 0; i < b.amps.size(); i++) {
            if (i & bit) {
                continue;
            }
            cplx a0 = b.amps[i];
            cplx a1 = b.amps[i | bit];
            rho[0] += a0 * std::conj(a0);
            rho[1] += a0 * std::conj(a1);
            rho[2] += a1 * std::conj(a0);
            rho[3] += a1 * std::conj(a1);
        }
        return rho;
    }

    /// Fidelity <ref| rho |ref> of the listed qubits against a pure state.
    ///
    /// ref has 2^k entries indexed with qubits[0] as the least significant bit.
    double fidelity(std::span<const QubitRef> qubits, std::span<const cplx> ref) const {
        if (ref.size() != (std::size_t{1} << qubits.size())) {
            throw std::invalid_argument("reference state has wrong dimension");
        }
        std::vector<std::size_t> involved;
        for (auto q : qubits) {
            std::size_t bi = block_of(q);
            if (std::find(involved.begin(), involved.end(), bi) == involved.end()) {
                involved.push_back(bi);
            }
        }
        Block joint = blocks_[involved[0]];
        for (std::size_t i = 1; i < involved.size(); i++) {
            joint = kron(joint, blocks_[involved[i]]);
        }
        std::vector<std::size_t> pos;
        std::size_t sub_mask = 0;
        for (auto q : qubits) {
            pos.push_back(position(joint, q));
            sub_mask |= std::size_t{1} << pos.back();
        }
        // v[rest] = sum_a conj(ref[a]) psi[a, rest]; fidelity = |v|^2.
        std::map<std::size_t, cplx> v;
        for (std::size_t i = 0; i < joint.amps.size(); i++) {
            if (joint.amps[i] == cplx(0)) {
                continue;
            }
            std::size_t a = 0;
            for (std::size_t j = 0; j < pos.size(); j++) {
                a |= ((i >> pos[j]) & 1) << j;
            }
            v[i & ~sub_mask] += std::conj(ref[a]) * joint.amps[i];
        }
        double f = 0;
        for (const auto &[rest, amp] : v) {
            f += std::norm(amp);
        }
        return f;
    }

    /// Amplitudes of the listed qubits, which must form whole blocks.
    std::vector<cplx> amplitudes(std::span<const QubitRef> qubits) const {
        std::vector<std::size_t> involved;
        std::size_t covered = 0;
        for (auto q : qubits) {
            std::size_t bi = block_of(q);
            if (std::find(involved.begin(), involved.end(), bi) == involved.end()) {
                involved.push_back(bi);
                covered += blocks_[bi].ids.size();
            }
        }
        if (covered != qubits.size()) {
            throw std::invalid_argument("amplitudes() requires the qubits to be unentangled with the rest");
        }
        Block joint = blocks_[involved[0]];
        for (std::size_t i = 1; i < involved.size(); i++) {
            joint = kron(joint, blocks_[involved[i]]);
        }
        std::vector<std::size_t> pos;
        for (auto q : qubits) {
            pos.push_back(position(joint, q));
        }
        std::vector<cplx> out(joint.amps.size());
        for (std::size_t i = 0; i < joint.amps.size(); i++) {
            std::size_t a = 0;
            for (std::size_t j = 0; j < pos.size(); j++) {
                a |= ((i >> pos[j]) & 1) << j;
            }
            out[a] = joint.amps[i];
        }
        return out;
    }

    /// Replaces the joint state of the listed qubits, which must form whole
    /// blocks, with amps (indexed with qubits[0] least significant).
    void overwrite(std::span<const QubitRef> qubits, std::span<const cplx> amps) {
        if (amps.size() != (std::size_t{1} << qubits.size())) {
            throw std::invalid_argument("overwrite: amplitude vector has wrong dimension");
        }
        double norm = 0;
        for (auto a : amps) {
            norm += std::norm(a);
        }
        if (std::abs(norm - 1) > kTolerance) {
            throw std::invalid_argument("overwrite: state is not normalised");
        }
        amplitudes(qubits);
        std::size_t bi = merge(qubits);
        Block &b = blocks_[bi];
        b.ids.clear();
        for (auto q : qubits) {
            b.ids.push_back(q.id);
        }
        b.amps.assign(amps.begin(), amps.end());
    }

    /// Factors an unentangled qubit out of its block. Throws if entangled.
    void factor_out(QubitRef q) {
        std::size_t bi = block_of(q);
        if (blocks_[bi].ids.size() == 1) {
            return;
        }
        Mat2 rho = reduced_density(q);
        double tr = rho[0].real() + rho[3].real();
        double purity = (std::norm(rho[0]) + std::norm(rho[1]) + std::norm(rho[2]) + std::norm(rho[3])) / (tr * tr);
        if (purity < 1 - kTolerance) {
            throw std::invalid_argument("qubit is entangled with the rest of the state");
        }
        // Column of rho with the largest norm is proportional to the pure state.
        cplx a0 = rho[0], a1 = rho[2];
        if (std::norm(rho[1]) + std::norm(rho[3]) > std::norm(a0) + std::norm(a1)) {
            a0 = rho[1];
            a1 = rho[3];
        }
        double nrm = std::sqrt(std::norm(a0) + std::norm(a1));
        a0 /= nrm;
        a1 /= nrm;
        Block &b = blocks_[bi];
        std::size_t p = position(b, q);
        std::size_t bit = std::size_t{1} << p;
        Block rest;
        for (auto id : b.ids) {
            if (id != q.id) {
                rest.ids.push_back(id);
            }
        }
        rest.amps.resize(b.amps.size() / 2);
        for (std::size_t i = 0; i < b.amps.size(); i++) {
            if (i & bit) {
                continue;
            }
            std::size_t low = i & (bit - 1);
            std::size_t high = (i >> (p + 1)) << p;
            rest.amps[low | high] = std::conj(a0) * b.amps[i] + std::conj(a1) * b.amps[i | bit];
        }
        Block single;
        single.ids = {q.id};
        single.amps = {a0, a1};
        blocks_[bi] = std::move(rest);
        for (auto id : blocks_[bi].ids) {
            where_[id] = bi;
        }
        where_[q.id] = store(std::move(single));
    }

   private:
    struct Block {
        std::vector<cplx> amps;
        std::vector<std::uint32_t> ids;
    };

    std::size_t store(Block b) {
        if (!free_.empty()) {
            std::size_t i = free_.back();
            free_.pop_back();
            blocks_[i] = std::move(b);
            return i;
        }
        blocks_.push_back(std::move(b));
        return blocks_.size() - 1;
    }

    std::size_t block_of(QubitRef q) const {
        auto it = where_.find(q.id);
        if (it == where_.end()) {
            throw std::invalid_argument("qubit " + std::to_string(q.id) + " is not live");
        }
        return it->second;
    }

    static std::size_t position(const Block &b, QubitRef q) {
        for (std::size_t i = 0; i < b.ids.size(); i++) {
            if (b.ids[i] == q.id) {
                return i;
            }
        }
        throw std::logic_error("qubit missing from its block");
    }

    static Block kron(const Block &lo, const Block &hi) {
        Block out;
        out.ids = lo.ids;
        out.ids.insert(out.ids.end(), hi.ids.begin(), hi.ids.end());
        out.amps.resize(lo.amps.size() * hi.amps.size());
        for (std::size_t j = 0; j < hi.amps.size(); j++) {
            for (std::size_t i = 0; i < lo.amps.size(); i++) {
                out.amps[i | (j * lo.amps.size())] = lo.amps[i] * hi.amps[j];
            }
        }
        return out;
    }

    std::size_t merge(std::span<const QubitRef> qubits) {
        std::size_t target = block_of(qubits[0]);
        for (std::size_t i = 1; i < qubits.size(); i++) {
            std::size_t other = block_of(qubits[i]);
            if (other == target) {
                continue;
            }
            Block joined = kron(blocks_[target], blocks_[other]);
            blocks_[other].ids.clear();
            blocks_[other].amps.clear();
            free_.push_back(other);
            blocks_[target] = std::move(joined);
            for (auto id : blocks_[target].ids) {
                where_[id] = target;
            }
        }
        peak_width_ = std::max(peak_width_, blocks_[target].ids.size());
        return target;
    }

    void collapse(QubitRef q, Basis basis, int outcome, double p) {
        if (basis == Basis::X) {
            h(q);
        }
        Block &b = blocks_[block_of(q)];
        std::size_t bit = std::size_t{1} << position(b, q);
        // Renormalize by the kept weight rather than p so rounding drift does not accumulate.
        double kept = 0;
        for (std::size_t i = 0; i < b.amps.size(); i++) {
            bool one = (i & bit) != 0;
            if (one == (outcome == 1)) {
                kept += std::norm(b.amps[i]);
            } else {
                b.amps[i] = 0;
            }
        }
        double scale = 1 / std::sqrt(kept > 0 ? kept : p);
        for (auto &a : b.amps) {
            a *= scale;
        }
        factor_out(q);
        if (basis == Basis::X) {
            h(q);
        }
    }

    Rng rng_;
    std::vector<Block> blocks_;
    std::vector<std::size_t> free_;
    std::map<std::uint32_t, std::size_t> where_;
    std::uint32_t next_id_ = 0;
    std::size_t live_ = 0;
    std::size_t peak_live_ = 0;
    std::size_t peak_width_ = 1;
};

/// Trace distance between a single-qubit state and the maximally mixed state.
inline double trace_distance_to_mixed(const Mat2 &rho) {
    double d = rho[0].real() - 0.5;
    return std::sqrt(d * d + std::norm(rho[1]));
}

/// P|psi> on a dense vector whose qubit i is bit i of the index.
inline std::vector<cplx> apply_pauli_dense(const PauliString &p, std::span<const cplx> psi) {
    if (psi.size() != (std::size_t{1} << p.size())) {
        throw std::invalid_argument("dense state has wrong dimension for Pauli");
    }
    std::size_t xmask = 0, zmask = 0;
    int ys = 0;
    for (std::size_t q = 0; q < p.size(); q++) {
        xmask |= std::size_t{p.x(q)} << q;
        zmask |= std::size_t{p.z(q)} << q;
        ys += p.x(q) && p.z(q);
    }
    static const cplx kIPow[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
    cplx scalar = kIPow[(ys + p.phase()) & 3];
    std::vector<cplx> out(psi.size());
    for (std::size_t i = 0; i < psi.size(); i++) {
        double sign = (std::popcount(i & zmask) & 1) ? -1.0 : 1.0;
        out[i ^ xmask] = scalar * sign * psi[i];
    }
    return out;
}

/// Joint +1 eigenstate of n independent, commuting, Hermitian signed Paulis
/// on n qubits, obtained by projecting a fixed pseudo-random vector.
inline std::vector<cplx> ideal_stabilizer_state(std::span<const PauliString> ops) {
    if (ops.empty()) {
        throw std::invalid_argument("ideal_stabilizer_state needs operators");
    }
    std::size_t n = ops[0].size();
    if (ops.size() != n) {
        throw std::invalid_argument("ideal_stabilizer_state needs exactly n operators");
    }
    Rng rng(0x5EED);
    std::vector<cplx> psi(std::size_t{1} << n);
    for (auto &a : psi) {
        a = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
    }
    for (const auto &op : ops) {
        auto moved = apply_pauli_dense(op, psi);
        for (std::size_t i = 0; i < psi.size(); i++) {
            psi[i] = (psi[i] + moved[i]) * 0.5;
        }
    }
    double norm = 0;
    for (auto a : psi) {
        norm += std::norm(a);
    }
    if (norm < 1e-20) {
        throw std::invalid_argument("operators have no common +1 eigenstate");
    }
    double scale = 1 / std::sqrt(norm);
    // Fix the global phase so the largest amplitude is real and positive.
    std::size_t best = 0;
    for (std::size_t i = 0; i < psi.size(); i++) {
        if (std::norm(psi[i]) > std::norm(psi[best]) + 1e-12) {
            best = i;
        }
    }
    cplx rot = std::conj(psi[best]) / std::abs(psi[best]);
    for (auto &a : psi) {
        a *= scale * rot;
    }
    return psi;
}

/// Heisenberg-picture tracker for signed Pauli operators under Clifford gates.
class Tableau {
   public:
    Tableau() = default;
    explicit Tableau(std::vector<PauliString> rows) : rows_(std::move(rows)) {
    }

    const std::vector<PauliString> &rows() const {
        return rows_;
    }
    std::vector<PauliString> &rows() {
        return rows_;
    }

    /// Replaces each row P with U P U^dagger.
    void apply(Gate g, std::span<const std::size_t> qubits) {
        if (qubits.size() != gate_arity(g)) {
            throw std::invalid_argument("wrong number of qubits for gate");
        }
        for (auto &row : rows_) {
            conjugate(row, g, qubits);
        }
    }

    void apply(Gate g, std::size_t q) {
        std::size_t qs[1] = {q};
        apply(g, qs);
    }
    void apply(Gate g, std::size_t a, std::size_t b) {
        std::size_t qs[2] = {a, b};
        apply(g, qs);
    }

    static void conjugate(PauliString &p, Gate g, std::span<const std::size_t> qs) {
        auto flip = [&](bool cond) {
            if (cond) {
                p.set_phase(static_cast<std::uint8_t>(p.phase() + 2));
            }
        };
        switch (g) {
            case Gate::I:
                return;
            case Gate::X:
                flip(p.z(qs[0]));
                return;
            case Gate::Z:
                flip(p.x(qs[0]));
                return;
            case Gate::Y:
                flip(p.x(qs[0]) != p.z(qs[0]));
                return;
            case Gate::H: {
                bool x = p.x(qs[0]), z = p.z(qs[0]);
                flip(x && z);
                p.set_bits(qs[0], z, x);
                return;
            }
            case Gate::S: {
                bool x = p.x(qs[0]), z = p.z(qs[0]);
                flip(x && z);
                p.set_bits(qs[0], x, z != x);
                return;
            }
            case Gate::Sdg: {
                bool x = p.x(qs[0]), z = p.z(qs[0]);
                flip(x && !z);
                p.set_bits(qs[0], x, z != x);
                return;
            }
            case Gate::CNOT: {
                std::size_t c = qs[0], t = qs[1];
                bool xc = p.x(c), zc = p.z(c), xt = p.x(t), zt = p.z(t);
                flip(xc && zt && (xt == zc));
                p.set_bits(t, xt != xc, zt);
                p.set_bits(c, xc, zc != zt);
                return;
            }
            case Gate::CZ: {
                std::size_t a = qs[0], b = qs[1];
                std::size_t t[1] = {b};
                conjugate(p, Gate::H, t);
                conjugate(p, Gate::CNOT, qs);
                conjugate(p, Gate::H, t);
                (void)a;
                return;
            }
            case Gate::T:
            case Gate::Tdg:
                throw std::invalid_argument("T is not a Clifford gate and cannot be tracked by a tableau");
        }
    }

   private:
    std::vector<PauliString> rows_;
};

}  // namespace dqc
