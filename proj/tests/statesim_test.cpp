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

#include "dqc/statesim.hpp"

#include <cmath>

#include "gtest/gtest.h"

using namespace dqc;

namespace {

// Reference simulator: full 2^n vector, gates applied as dense matrices.
struct DenseSim {
    std::size_t n;
    std::vector<cplx> psi;
    explicit DenseSim(std::size_t n_) : n(n_), psi(std::size_t{1} << n_, 0) {
        psi[0] = 1;
    }
    void apply(const Mat2 &u, std::vector<std::size_t> controls, std::size_t target) {
        std::vector<cplx> out(psi.size(), 0);
        for (std::size_t col = 0; col < psi.size(); col++) {
            bool on = true;
            for (auto c : controls) {
                on = on && ((col >> c) & 1);
            }
            if (!on) {
                out[col] += psi[col];
                continue;
            }
            std::size_t bit = (col >> target) & 1;
            for (std::size_t row_bit = 0; row_bit < 2; row_bit++) {
                std::size_t row = (col & ~(std::size_t{1} << target)) | (row_bit << target);
                out[row] += u[row_bit * 2 + bit] * psi[col];
            }
        }
        psi = out;
    }
};

double overlap(const std::vector<cplx> &a, const std::vector<cplx> &b) {
    cplx acc = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        acc += std::conj(a[i]) * b[i];
    }
    return std::norm(acc);
}

}  // namespace

TEST(simstate, random_circuits_match_dense_reference) {
    Rng rng(3);
    for (int trial = 0; trial < 50; trial++) {
        std::size_t n = 2 + rng.below(3);
        SimState sim{Rng(trial)};
        DenseSim ref(n);
        std::vector<QubitRef> qs;
        for (std::size_t i = 0; i < n; i++) {
            qs.push_back(sim.allocate());
        }
        for (int step = 0; step < 25; step++) {
            std::size_t kind = rng.below(6);
            std::size_t a = rng.below(n);
            std::size_t b = (a + 1 + rng.below(n - 1)) % n;
            Mat2 singles[5] = {mat::H(), mat::S(), mat::T(), mat::X(), mat::Y()};
            if (kind < 5) {
                sim.apply(singles[kind], qs[a]);
                ref.apply(singles[kind], {}, a);
            } else {
                sim.cx(qs[a], qs[b]);
                ref.apply(mat::X(), {a}, b);
            }
        }
        for (std::size_t i = 1; i < n; i++) {
            sim.apply_controlled(mat::I(), qs[0], qs[i]);
        }
        EXPECT_NEAR(overlap(sim.amplitudes(qs), ref.psi), 1.0, 1e-9);
        for (std::size_t i = 0; i < n; i++) {
            PauliString z(n);
            z.set(i, 'Z');
            double dense_ev = 0;
            for (std::size_t k = 0; k < ref.psi.size(); k++) {
                dense_ev += std::norm(ref.psi[k]) * (((k >> i) & 1) ? -1 : 1);
            }
            EXPECT_NEAR(sim.expectation(z, qs), dense_ev, 1e-9);
        }
    }
}

TEST(simstate, toffoli_family_matches_reference) {
    SimState sim;
    DenseSim ref(4);
    std::vector<QubitRef> qs;
    for (int i = 0; i < 4; i++) {
        qs.push_back(sim.allocate());
        sim.h(qs.back());
        ref.apply(mat::H(), {}, static_cast<std::size_t>(i));
    }
    sim.t(qs[1]);
    ref.apply(mat::T(), {}, 1);
    QubitRef c3[3] = {qs[1], qs[2], qs[3]};
    sim.apply_controlled(mat::X(), c3, qs[0]);
    ref.apply(mat::X(), {1, 2, 3}, 0);
    QubitRef c2[2] = {qs[0], qs[3]};
    sim.apply_controlled(mat::Z(), c2, qs[2]);
    ref.apply(mat::Z(), {0, 3}, 2);
    EXPECT_NEAR(overlap(sim.amplitudes(qs), ref.psi), 1.0, 1e-12);
}

TEST(simstate, measurement_statistics_and_collapse) {
    int ones = 0;
    const int trials = 4000;
    for (int s = 0; s < trials; s++) {
        SimState sim{Rng(s)};
        auto q = sim.allocate();
        sim.h(q);
        int m = sim.measure(q, Basis::Z);
        ones += m;
        EXPECT_EQ(sim.measure(q, Basis::Z), m);
    }
    double p = static_cast<double>(ones) / trials;
    EXPECT_NEAR(p, 0.5, 3 * std::sqrt(0.25 / trials));
}

TEST(simstate, x_basis_convention) {
    SimState sim;
    auto q = sim.allocate();
    sim.h(q);
    EXPECT_EQ(sim.measure(q, Basis::X), 0);
    sim.z(q);
    EXPECT_EQ(sim.measure(q, Basis::X), 1);
    auto r = sim.allocate();
    EXPECT_EQ(sim.measure(r, Basis::Z), 0);
}

TEST(simstate, forced_zero_probability_branch_throws) {
    SimState sim;
    auto q = sim.allocate();
    EXPECT_THROW(sim.force_measure(q, Basis::Z, 1), std::invalid_argument);
    sim.force_measure(q, Basis::Z, 0);
}

TEST(simstate, bell_pair_correlations_and_factoring) {
    for (int s = 0; s < 50; s++) {
        SimState sim{Rng(s)};
        auto a = sim.allocate();
        auto b = sim.allocate();
        sim.h(a);
        sim.cx(a, b);
        EXPECT_EQ(sim.block_width(a), 2u);
        EXPECT_THROW(sim.retire(a), std::invalid_argument);
        EXPECT_NEAR(trace_distance_to_mixed(sim.reduced_density(a)), 0.0, 1e-12);
        int ma = sim.measure(a, Basis::Z);
        EXPECT_EQ(sim.block_width(a), 1u);
        EXPECT_EQ(sim.measure(b, Basis::Z), ma);
        sim.retire(a);
        sim.retire(b);
        EXPECT_EQ(sim.live_qubits(), 0u);
    }
}

TEST(simstate, retire_factors_product_states) {
    SimState sim;
    auto a = sim.allocate();
    auto b = sim.allocate();
    sim.h(a);
    sim.cx(a, b);
    sim.cx(a, b);  // back to a product state inside one block
    EXPECT_EQ(sim.block_width(a), 2u);
    sim.retire(b);
    EXPECT_FALSE(sim.is_live(b));
    auto plus = std::vector<cplx>{1 / std::sqrt(2.0), 1 / std::sqrt(2.0)};
    QubitRef qa[1] = {a};
    EXPECT_NEAR(sim.fidelity(qa, plus), 1.0, 1e-12);
}

TEST(simstate, fidelity_of_subsystem) {
    SimState sim;
    auto a = sim.allocate();
    auto b = sim.allocate();
    auto c = sim.allocate();
    sim.h(a);
    sim.cx(a, b);
    sim.h(c);
    sim.cx(c, b);  // three-qubit entangled state
    QubitRef ab[2] = {a, b};
    std::vector<cplx> phi{1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0)};
    // Oracle: rho_ab = 1/2 (|Phi+><Phi+| + |Psi+><Psi+|) so the fidelity is 1/2.
    EXPECT_NEAR(sim.fidelity(ab, phi), 0.5, 1e-12);
}

TEST(simstate, expectation_of_stabilizers) {
    SimState sim;
    std::vector<QubitRef> qs{sim.allocate(), sim.allocate(), sim.allocate()};
    sim.h(qs[0]);
    sim.cx(qs[0], qs[1]);
    sim.cx(qs[1], qs[2]);
    EXPECT_NEAR(sim.expectation(PauliString::from_str("XXX"), qs), 1.0, 1e-12);
    EXPECT_NEAR(sim.expectation(PauliString::from_str("ZZI"), qs), 1.0, 1e-12);
    EXPECT_NEAR(sim.expectation(PauliString::from_str("-YYX"), qs), 1.0, 1e-12);
    EXPECT_NEAR(sim.expectation(PauliString::from_str("ZII"), qs), 0.0, 1e-12);
    EXPECT_THROW(sim.expectation(PauliString::from_str("+iZII"), qs), std::invalid_argument);
}

TEST(simstate, norm_is_preserved) {
    Rng rng(8);
    SimState sim{Rng(9)};
    std::vector<QubitRef> qs;
    for (int i = 0; i < 6; i++) {
        qs.push_back(sim.allocate());
    }
    for (int step = 0; step < 200; step++) {
        std::size_t a = rng.below(6), b = (a + 1 + rng.below(5)) % 6;
        switch (rng.below(4)) {
            case 0:
                sim.h(qs[a]);
                break;
            case 1:
                sim.t(qs[a]);
                break;
            case 2:
                sim.cx(qs[a], qs[b]);
                break;
            default:
                sim.measure(qs[a], rng.bit() ? Basis::X : Basis::Z);
        }
    }
    double norm = 0;
    for (std::size_t i = 1; i < qs.size(); i++) {
        sim.apply_controlled(mat::I(), qs[0], qs[i]);
    }
    for (auto a : sim.amplitudes(qs)) {
        norm += std::norm(a);
    }
    EXPECT_NEAR(norm, 1.0, 1e-9);
}

TEST(simstate, overwrite_and_peak_width) {
    SimState sim;
    std::vector<QubitRef> qs{sim.allocate(), sim.allocate()};
    std::vector<cplx> psi{0, 1 / std::sqrt(2.0), cplx(0, 1 / std::sqrt(2.0)), 0};
    sim.overwrite(qs, psi);
    EXPECT_NEAR(sim.fidelity(qs, psi), 1.0, 1e-12);
    EXPECT_EQ(sim.peak_block_width(), 2u);
    std::vector<cplx> bad{1, 1, 0, 0};
    EXPECT_THROW(sim.overwrite(qs, bad), std::invalid_argument);
}

TEST(simstate, dead_qubit_throws) {
    SimState sim;
    auto q = sim.allocate();
    sim.retire(q);
    EXPECT_THROW(sim.h(q), std::invalid_argument);
}

TEST(tableau, conjugation_matches_statevector) {
    // Prepare |0...0>, apply a random Clifford circuit U; the images U Z_i U^dag
    // stabilize the output, so each must have expectation +1.
    Rng rng(21);
    for (int trial = 0; trial < 100; trial++) {
        std::size_t n = 2 + rng.below(3);
        std::vector<PauliString> rows;
        for (std::size_t i = 0; i < n; i++) {
            PauliString z(n);
            z.set(i, 'Z');
            rows.push_back(z);
        }
        Tableau tab(rows);
        SimState sim{Rng(trial)};
        std::vector<QubitRef> qs;
        for (std::size_t i = 0; i < n; i++) {
            qs.push_back(sim.allocate());
        }
        for (int step = 0; step < 20; step++) {
            Gate gates[9] = {Gate::H, Gate::S, Gate::Sdg, Gate::X, Gate::Y, Gate::Z, Gate::CNOT, Gate::CZ, Gate::I};
            Gate g = gates[rng.below(9)];
            if (gate_arity(g) == 1) {
                std::size_t a = rng.below(n);
                tab.apply(g, a);
                QubitRef q[1] = {qs[a]};
                sim.apply(g, q);
            } else {
                std::size_t a = rng.below(n), b = (a + 1 + rng.below(n - 1)) % n;
                tab.apply(g, a, b);
                QubitRef q[2] = {qs[a], qs[b]};
                sim.apply(g, q);
            }
        }
        for (const auto &row : tab.rows()) {
            EXPECT_NEAR(sim.expectation(row, qs), 1.0, 1e-9) << row;
        }
    }
}

TEST(tableau, rejects_t) {
    Tableau tab({PauliString::from_str("X")});
    EXPECT_THROW(tab.apply(Gate::T, 0), std::invalid_argument);
}

TEST(dense_helpers, ideal_stabilizer_state_satisfies_operators) {
    std::vector<PauliString> ops{PauliString::from_str("XX"), PauliString::from_str("-ZZ")};
    auto psi = ideal_stabilizer_state(ops);
    // Oracle: the +1 eigenstate of XX and -ZZ is |Psi+> = (|01> + |10>)/sqrt 2.
    std::vector<cplx> psi_plus{0, 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0};
    EXPECT_NEAR(overlap(psi, psi_plus), 1.0, 1e-12);
}
