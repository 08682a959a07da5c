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

#include <string>

#include "dqc/localqec.hpp"
#include "dqc/network.hpp"
#include "dqc/resources.hpp"
#include "dqc/verification.hpp"
#include "json.hpp"

namespace dqc::report {

using nlohmann::ordered_json;

inline ordered_json tally(const Tally &t) {
    return {{"bell_pairs", t.bell_pairs}, {"classical_bits", t.classical_bits}};
}

inline ordered_json ledger(const ResourceLedger &l) {
    ordered_json model, physical;
    for (Phase p : kAllPhases) {
        model[phase_name(p)] = tally(l.model(p));
        physical[phase_name(p)] = tally(l.physical(p));
    }
    model["total"] = tally(l.model_total());
    physical["total"] = tally(l.physical_total());
    return {{"model", model},
            {"physical", physical},
            {"blinding_bits", l.blinding_bits()},
            {"swap_activity", tally(l.swap_activity())}};
}

/// Predicted and observed model-book cost per phase, plus totals.
inline ordered_json cost(const CostPrediction &p, const ReconcileReport &r) {
    ordered_json out;
    out["model"] = p.extended ? "extended" : "star";
    for (const auto &d : r.phases) {
        out[phase_name(d.phase)] = {{"predicted", tally(d.predicted)},
                                    {"observed", tally(d.observed)},
                                    {"delta", {{"bell_pairs", d.bell_delta}, {"classical_bits", d.classical_delta}}}};
    }
    out["total"] = {{"predicted", tally(r.predicted_total)}, {"observed", tally(r.observed_total)}};
    out["magic_states"] = p.magic_states;
    out["blinding_bits"] = r.blinding_bits;
    out["physical_total"] = tally(r.physical_total);
    out["exact"] = r.exact;
    out["discrepancies"] = r.discrepancies();
    return out;
}

inline ordered_json session(const SessionReport &s, const CostPrediction &p, const ReconcileReport &r) {
    ordered_json traps = ordered_json::array();
    for (const auto &t : s.traps) {
        traps.push_back({{"position", t.position},
                         {"basis", t.basis == Basis::X ? "X" : "Z"},
                         {"expected", t.expected},
                         {"reported", t.reported},
                         {"passed", t.passed}});
    }
    ordered_json attacks = ordered_json::array();
    for (const auto &[pos, pauli] : s.attacks) {
        attacks.push_back({{"position", pos}, {"pauli", std::string(1, pauli)}});
    }
    ordered_json out;
    out["seed"] = s.seed;
    out["verdict"] = s.accepted ? "accepted" : "aborted";
    out["positions"] = s.positions;
    out["logical_qubits"] = s.logical_qubits;
    out["data_positions"] = s.data_positions;
    out["traps"] = traps;
    out["attacks"] = attacks;
    if (s.output) {
        ordered_json bloch = ordered_json::array();
        for (const auto &b : s.output->bloch) {
            bloch.push_back({b[0], b[1], b[2]});
        }
        out["output"] = {{"fidelity", s.output->fidelity}, {"bloch", bloch}};
    } else {
        out["output"] = nullptr;
    }
    out["cost"] = cost(p, r);
    out["ledger"] = ledger(s.ledger);
    out["peak_block_width"] = s.peak_block_width;
    return out;
}

inline std::string detection_verdict(const DetectionRecord &d) {
    if (d.bound_placement == 0) {
        return "vacuous_bound";
    }
    return d.within_bound ? "within_bound" : "exceeds_bound";
}

inline ordered_json detection(const DetectionRecord &d) {
    return {{"N", d.n_positions},
            {"k_trap", d.k_trap},
            {"d", d.pathways},
            {"trials", d.trials},
            {"undetected_count", d.undetected},
            {"empirical_rate", d.empirical_rate},
            {"bound_placement", d.bound_placement},
            {"bound_exponential", d.bound_exponential},
            {"sigma", d.sigma},
            {"pass_probability", d.pass_probability},
            {"predicted_rate", d.predicted_rate},
            {"matches_prediction", d.matches_prediction},
            {"verdict", detection_verdict(d)}};
}

/// Simulated cells next to the published ones.
inline ordered_json qec_table(const SyndromeTable &published, const std::vector<SyndromeCell> &simulated) {
    ordered_json cells = ordered_json::array();
    std::size_t matches = 0;
    for (std::size_t i = 0; i < published.cells.size(); i++) {
        const auto &p = published.cells[i];
        const auto &s = simulated.at(i);
        bool ok = p.syndrome == s.syndrome && p.residual == s.residual;
        matches += ok ? 1 : 0;
        cells.push_back({{"error", std::string(1, p.error)},
                         {"position", p.position},
                         {"syndrome", s.syndrome},
                         {"residual", residual_name(s.residual)},
                         {"expected_syndrome", p.syndrome},
                         {"expected_residual", residual_name(p.residual)},
                         {"match", ok}});
    }
    return {{"method", published.method == QecMethod::four_qubit ? 1 : 2},
            {"cells", cells},
            {"matched", matches},
            {"total", published.cells.size()},
            {"table", published.to_text()}};
}

}  // namespace dqc::report
