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

// Runs the Steane [H, T] session with 40 traps on a 47-server star, prints the
// resource books next to the closed-form prediction, then repeats the session
// with a Y attack on one trap to show the abort.

#include <cstdio>

#include "dqc/resources.hpp"
#include "dqc/verification.hpp"

using namespace dqc;

namespace {

void print_tally(const char *label, const Tally &t) {
    std::printf("  %-10s %4llu pairs %4llu bits\n", label, static_cast<unsigned long long>(t.bell_pairs),
                static_cast<unsigned long long>(t.classical_bits));
}

}  // namespace

int main() {
    SessionConfig cfg;
    cfg.gates = {{LogicalOp::H}, {LogicalOp::T}};
    cfg.k_trap = 40;
    cfg.topology = Topology::star(47);
    cfg.seed = 2024;

    SessionReport honest = run_verified_session(cfg);
    std::printf("honest session: %s\n", honest.accepted ? "accepted" : "rejected");
    if (honest.output) {
        const auto &b = honest.output->bloch[0];
        std::printf("  logical Bloch vector (%.6f, %.6f, %.6f), fidelity %.12f\n", b[0], b[1], b[2],
                    honest.output->fidelity);
    }
    std::printf("model book:\n");
    print_tally("setup", honest.ledger.model(Phase::setup));
    print_tally("verify", honest.ledger.model(Phase::verify));
    print_tally("compute", honest.ledger.model(Phase::compute));
    print_tally("total", honest.ledger.model_total());
    print_tally("physical", honest.ledger.physical_total());

    auto predicted = predict_session(cfg.code, cfg.gates, cfg.k_trap);
    auto rec = reconcile(predicted, honest.ledger);
    std::printf("prediction %s, blinding bits %llu\n", rec.exact ? "matches" : "differs",
                static_cast<unsigned long long>(rec.blinding_bits));
    for (const auto &d : rec.discrepancies()) {
        std::printf("  %s\n", d.c_str());
    }

    // Attack whichever position the first trap landed on.
    NodeId target = honest.traps.front().position;
    cfg.adversary = AdversaryStrategy::fixed_pauli({{target, 'Y'}});
    SessionReport attacked = run_verified_session(cfg);
    std::printf("Y on position %u: %s\n", static_cast<unsigned>(target),
                attacked.accepted ? "accepted" : "rejected, no output released");
    return honest.accepted && !attacked.accepted && rec.exact ? 0 : 1;
}
