// Copyright 2026 The Probgate Authors
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
#include <utility>

#include "probgate/feasibility.hpp"
#include "probgate/gram.hpp"
#include "probgate/linalg.hpp"
#include "probgate/state.hpp"

namespace probgate {

/*
 * MACHINE LAYOUT
 *
 * The machine acts on system (dim 2) tensor probe (dim 3), index
 * sys * 3 + probe. Probe outcome 0 signals success; outcomes 1 and 2 carry
 * the failure weight. The success block is therefore {0, 3}.
 */

struct ProbeSpace {
    static constexpr std::size_t kDim = 3;
    static constexpr std::size_t kTotal = 2 * kDim;
    static constexpr std::size_t kSuccessSlot = 0;

    static constexpr std::size_t index(std::size_t sys, std::size_t probe) {
        return sys * kDim + probe;
    }
    static constexpr bool in_success_block(std::size_t idx) {
        return idx % kDim == kSuccessSlot;
    }
    static Matrix success_projector() {
        Matrix p(kTotal, kTotal);
        p(index(0, 0), index(0, 0)) = 1.0;
        p(index(1, 0), index(1, 0)) = 1.0;
        return p;
    }
};

inline CVector tensor_with_probe(const QubitState& s, std::size_t probe_slot) {
    CVector v(ProbeSpace::kTotal, 0.0);
    v[ProbeSpace::index(0, probe_slot)] = s.alpha;
    v[ProbeSpace::index(1, probe_slot)] = s.beta;
    return v;
}

/*
 * BRANCH SYNTHESIS
 *
 * One branch of the machine: two input rows |state_i>|P0> and their images.
 * The image splits into sqrt(e_i) times the branch target on the success
 * probe, plus failure terms whose coefficients factor the residual Gram.
 */

struct BranchSynthesis {
    Branch kind;
    StateSet set;
    GateSpec gate;
    Efficiencies eff;
    Matrix coeff_matrix;  // Hermitian PSD square root of the residual
    std::array<std::pair<CVector, CVector>, 2> rows;
    std::array<double, 2> residual_eigs;
    std::array<QubitState, 2> failure_states;  // system state on probe slots 1 and 2

    QubitState base_state(std::size_t i) const {
        if (kind == Branch::Plus) return i == 0 ? set.psi1 : set.psi2;
        return i == 0 ? set.psibar1 : set.psibar2;
    }
    QubitState target_state(std::size_t i) const {
        const QubitState& psi = i == 0 ? set.psi1 : set.psi2;
        const QubitState& bar = i == 0 ? set.psibar1 : set.psibar2;
        return kind == Branch::Plus ? plus_target(gate, psi, bar)
                                    : minus_target(gate, psi, bar);
    }
};

inline BranchSynthesis build_branch(const StateSet& set, const GateSpec& gate,
                                    const Efficiencies& eff, Branch kind) {
    const auto grams = build_grams(set, gate);
    const Matrix res = residual(grams.in(kind), grams.out(kind), eff);
    const auto cls = psd_classify(res);
    if (cls.tag == PsdTag::Indefinite)
        throw Error(Errc::InfeasibleEfficiency,
                    std::string("build_branch: ") + branch_name(kind) +
                        " residual indefinite, min eigenvalue " +
                        std::to_string(cls.min_eigenvalue));

    BranchSynthesis b;
    b.kind = kind;
    b.set = set;
    b.gate = gate;
    b.eff = eff;
    b.coeff_matrix = principal_sqrt_psd(res);
    const auto eig = hermitian_eig(res);
    b.residual_eigs = {eig.eigenvalues[0], eig.eigenvalues[1]};

    const QubitState failure =
        kind == Branch::Plus ? QubitState{1.0, 0.0} : complement(QubitState{1.0, 0.0});
    b.failure_states = {failure, failure};

    for (std::size_t i = 0; i < 2; ++i) {
        CVector out = tensor_with_probe(b.target_state(i), 0);
        const double scale = std::sqrt(eff[i]);
        for (auto& c : out) c *= scale;
        for (std::size_t k = 0; k < 2; ++k) {
            // conj() keeps the failure Gram equal to coeff_matrix squared
            // when the residual square root is complex.
            const cplx coeff = std::conj(b.coeff_matrix(i, k));
            const CVector fail = tensor_with_probe(b.failure_states[k], k + 1);
            for (std::size_t d = 0; d < ProbeSpace::kTotal; ++d) out[d] += coeff * fail[d];
        }
        b.rows[i] = {tensor_with_probe(b.base_state(i), 0), std::move(out)};
    }
    return b;
}

struct SynthesisResult {
    BranchSynthesis branch;
    Matrix unitary;  // 6x6
    ProbeSpace probe;
};

inline SynthesisResult synthesize(const BranchSynthesis& branch) {
    const std::vector<std::pair<CVector, CVector>> rows{branch.rows[0], branch.rows[1]};
    const std::vector<CVector> ins{rows[0].first, rows[1].first};
    const std::vector<CVector> outs{rows[0].second, rows[1].second};
    if (max_abs_diff(gram_of(ins), gram_of(outs)) > 1e-8)
        throw Error(Errc::GramMismatch, "synthesize: row grams diverged");
    return SynthesisResult{branch, unitary_completion(rows, ProbeSpace::kTotal), ProbeSpace{}};
}

inline SynthesisResult synthesize_branch(const StateSet& set, const GateSpec& gate,
                                         const Efficiencies& eff, Branch kind) {
    return synthesize(build_branch(set, gate, eff, kind));
}

/*
 * JOINT AUDIT
 *
 * The plus and minus rows together involve four states of a 2-dimensional
 * system, so one unitary generally cannot satisfy both branches. The audit
 * builds the machine from the plus rows, pushes the minus inputs through it,
 * and measures how far the linear action lands from the minus rows: as a
 * strict vector distance, and minimized over a global phase.
 */

struct AuditRow {
    double strict_residual;   // |U in - out|
    double phase_adjusted;    // min over unit phase c of |U in - c out|
    double success_prob;      // weight of U in inside the success block
    double post_fidelity;     // fidelity of the post-selected state vs the minus target
};

struct AuditReport {
    SynthesisResult plus_machine;
    BranchSynthesis minus_rows;
    Matrix expansion;  // 2x2: complement_i = sum_j expansion(i, j) psi_j
    std::array<AuditRow, 2> rows;
};

namespace detail {

// Minimum of |v - c w| over unit phases c.
inline double phase_adjusted_distance(const CVector& v, const CVector& w) {
    const double nv = vec_norm(v);
    const double nw = vec_norm(w);
    const double d2 = nv * nv + nw * nw - 2.0 * std::abs(inner(v, w));
    return std::sqrt(std::max(0.0, d2));
}

}  // namespace detail

inline AuditReport joint_audit(const StateSet& set, const GateSpec& gate,
                               const EfficiencyPair& eff_pair) {
    AuditReport rep;
    rep.plus_machine = synthesize_branch(set, gate, eff_pair.gamma, Branch::Plus);
    rep.minus_rows = build_branch(set, gate, eff_pair.delta, Branch::Minus);

    const cplx det = set.psi1.alpha * set.psi2.beta - set.psi2.alpha * set.psi1.beta;
    rep.expansion = Matrix(2, 2);
    for (std::size_t i = 0; i < 2; ++i) {
        const QubitState& bar = i == 0 ? set.psibar1 : set.psibar2;
        rep.expansion(i, 0) = (bar.alpha * set.psi2.beta - set.psi2.alpha * bar.beta) / det;
        rep.expansion(i, 1) = (set.psi1.alpha * bar.beta - bar.alpha * set.psi1.beta) / det;
    }

    const Matrix& u = rep.plus_machine.unitary;
    for (std::size_t i = 0; i < 2; ++i) {
        const CVector& in = rep.minus_rows.rows[i].first;
        const CVector& out = rep.minus_rows.rows[i].second;
        const CVector evolved = u * in;

        AuditRow row;
        CVector diff(ProbeSpace::kTotal);
        for (std::size_t d = 0; d < ProbeSpace::kTotal; ++d) diff[d] = evolved[d] - out[d];
        row.strict_residual = vec_norm(diff);
        row.phase_adjusted = detail::phase_adjusted_distance(evolved, out);

        const cplx s0 = evolved[ProbeSpace::index(0, 0)];
        const cplx s1 = evolved[ProbeSpace::index(1, 0)];
        row.success_prob = std::norm(s0) + std::norm(s1);
        if (row.success_prob < 1e-14) {
            row.post_fidelity = 0.0;
        } else {
            const double n = std::sqrt(row.success_prob);
            const QubitState post{s0 / n, s1 / n};
            row.post_fidelity = fidelity(rep.minus_rows.target_state(i), post);
        }
        rep.rows[i] = row;
    }
    return rep;
}

}  // namespace probgate
