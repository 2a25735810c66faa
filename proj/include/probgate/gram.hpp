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

#include "probgate/error.hpp"
#include "probgate/linalg.hpp"
#include "probgate/state.hpp"

namespace probgate {

/*
 * GATE SPECIFICATION
 *
 * The machine sends |psi> to a|psi> + b|psibar> on its plus branch and
 * |psibar> to the orthogonal combination on its minus branch.
 */

struct GateSpec {
    cplx a;
    cplx b;

    static GateSpec hadamard() {
        const double s = 0.7071067811865475244;
        return {s, s};
    }
    static GateSpec identity() { return {1.0, 0.0}; }

    bool is_normalized(double tol = kStateNormTol) const {
        return std::abs(std::norm(a) + std::norm(b) - 1.0) <= tol;
    }
};

enum class Branch { Plus, Minus };

inline const char* branch_name(Branch b) { return b == Branch::Plus ? "plus" : "minus"; }

// Target of the plus branch: a|psi> + b|psibar>, unit norm by orthogonality.
inline QubitState plus_target(const GateSpec& g, const QubitState& psi,
                              const QubitState& psibar) {
    return g.a * psi + g.b * psibar;
}

// Target of the minus branch: b*|psi> - a*|psibar>, orthogonal to the plus target.
inline QubitState minus_target(const GateSpec& g, const QubitState& psi,
                               const QubitState& psibar) {
    return std::conj(g.b) * psi - std::conj(g.a) * psibar;
}

/*
 * GRAM MATRICES
 *
 * Four 2x2 Gram matrices drive everything downstream: overlaps of the two
 * inputs per branch, and overlaps of the two targets per branch. Target
 * overlaps are weighted entrywise by the probe-state overlaps; the default
 * probe overlap of all ones means every success probe is the same state.
 */

struct GramSet {
    Matrix x_in_plus;    // <psi_i|psi_j>
    Matrix x_out_plus;   // plus-target overlaps, probe weighted
    Matrix x_in_minus;   // <psibar_i|psibar_j>
    Matrix x_out_minus;  // minus-target overlaps, probe weighted
    Matrix probe_overlap;

    const Matrix& in(Branch b) const { return b == Branch::Plus ? x_in_plus : x_in_minus; }
    const Matrix& out(Branch b) const { return b == Branch::Plus ? x_out_plus : x_out_minus; }
};

inline Matrix default_probe_overlap() {
    return Matrix::from_rows({{1.0, 1.0}, {1.0, 1.0}});
}

namespace detail {

inline void validate_probe_overlap(const Matrix& p) {
    if (p.rows() != 2 || p.cols() != 2)
        throw Error(Errc::InvalidProbeOverlap, "probe overlap must be 2x2");
    if (!p.is_hermitian(1e-10))
        throw Error(Errc::InvalidProbeOverlap, "probe overlap must be Hermitian");
    if (std::abs(p(0, 0) - 1.0) > 1e-10 || std::abs(p(1, 1) - 1.0) > 1e-10)
        throw Error(Errc::InvalidProbeOverlap, "probe overlap needs a unit diagonal");
    if (psd_classify(p).tag == PsdTag::Indefinite)
        throw Error(Errc::InvalidProbeOverlap, "probe overlap must be PSD");
}

}  // namespace detail

inline GramSet build_grams(const StateSet& set, const GateSpec& gate,
                           const Matrix& probe_overlap = default_probe_overlap()) {
    if (!gate.is_normalized())
        throw Error(Errc::NotNormalized, "build_grams: |a|^2 + |b|^2 must be 1");
    detail::validate_probe_overlap(probe_overlap);

    const std::vector<CVector> in_plus{set.psi1.to_vector(), set.psi2.to_vector()};
    const std::vector<CVector> in_minus{set.psibar1.to_vector(), set.psibar2.to_vector()};
    const std::vector<CVector> out_plus{
        plus_target(gate, set.psi1, set.psibar1).to_vector(),
        plus_target(gate, set.psi2, set.psibar2).to_vector()};
    const std::vector<CVector> out_minus{
        minus_target(gate, set.psi1, set.psibar1).to_vector(),
        minus_target(gate, set.psi2, set.psibar2).to_vector()};

    GramSet g;
    g.x_in_plus = gram_of(in_plus);
    g.x_in_minus = gram_of(in_minus);
    g.x_out_plus = schur(gram_of(out_plus), probe_overlap);
    g.x_out_minus = schur(gram_of(out_minus), probe_overlap);
    g.probe_overlap = probe_overlap;
    return g;
}

}  // namespace probgate
