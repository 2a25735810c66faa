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

#include "probgate/error.hpp"
#include "probgate/gram.hpp"
#include "probgate/linalg.hpp"

namespace probgate {

/*
 * FEASIBILITY
 *
 * A branch with per-state efficiencies (e1, e2) is realizable exactly when
 * the residual x_in - D x_out D, D = diag(sqrt(e1), sqrt(e2)), is PSD. The
 * residual is the Gram matrix the failure branch has to reproduce, so it
 * cannot be indefinite.
 */

using Efficiencies = std::array<double, 2>;

struct EfficiencyPair {
    Efficiencies gamma;  // plus branch
    Efficiencies delta;  // minus branch
};

struct FeasibilityReport {
    Matrix residual_plus;
    Matrix residual_minus;
    PsdClass class_plus;
    PsdClass class_minus;
    bool feasible;
};

namespace detail {

inline void validate_eff(const Efficiencies& eff) {
    for (double e : eff)
        if (!(e >= 0.0 && e <= 1.0))
            throw Error(Errc::EffOutOfRange, "efficiencies must lie in [0, 1]");
}

}  // namespace detail

inline Matrix residual(const Matrix& x_in, const Matrix& x_out, const Efficiencies& eff) {
    detail::validate_eff(eff);
    if (x_in.rows() != 2 || x_in.cols() != 2 || x_out.rows() != 2 || x_out.cols() != 2)
        throw Error(Errc::DimensionMismatch, "residual expects 2x2 grams");
    const double d0 = std::sqrt(eff[0]);
    const double d1 = std::sqrt(eff[1]);
    Matrix r(2, 2);
    r(0, 0) = x_in(0, 0) - d0 * x_out(0, 0) * d0;
    r(0, 1) = x_in(0, 1) - d0 * x_out(0, 1) * d1;
    r(1, 0) = x_in(1, 0) - d1 * x_out(1, 0) * d0;
    r(1, 1) = x_in(1, 1) - d1 * x_out(1, 1) * d1;
    // Kill roundoff asymmetry so downstream PSD checks see exact Hermitian input.
    return 0.5 * (r + r.adjoint());
}

inline FeasibilityReport check_feasible(const GramSet& grams, const EfficiencyPair& eff,
                                        double tol = kDefaultPsdTol) {
    FeasibilityReport rep;
    rep.residual_plus = residual(grams.x_in_plus, grams.x_out_plus, eff.gamma);
    rep.residual_minus = residual(grams.x_in_minus, grams.x_out_minus, eff.delta);
    rep.class_plus = psd_classify(rep.residual_plus, tol);
    rep.class_minus = psd_classify(rep.residual_minus, tol);
    rep.feasible = rep.class_plus.tag != PsdTag::Indefinite &&
                   rep.class_minus.tag != PsdTag::Indefinite;
    return rep;
}

/*
 * EFFICIENCY BOUNDS
 *
 * The average efficiency of a branch cannot exceed
 * (1 - |x_in_01|) / (1 - |x_out_01|), and never exceeds 1. A vanishing
 * denominator means the targets are as parallel as states get, and only
 * the trivial cap remains.
 */

struct BranchBound {
    double value;  // min(1, raw bound)
    bool capped;   // true when the raw bound exceeded 1 or its denominator vanished
};

inline BranchBound branch_bound(const Matrix& x_in, const Matrix& x_out) {
    const double num = 1.0 - std::abs(x_in(0, 1));
    const double den = 1.0 - std::abs(x_out(0, 1));
    if (den <= 1e-12) return {1.0, true};
    const double raw = num / den;
    if (raw > 1.0) return {1.0, true};
    return {raw, false};
}

inline BranchBound bound_plus(const GramSet& g) { return branch_bound(g.x_in_plus, g.x_out_plus); }
inline BranchBound bound_minus(const GramSet& g) {
    return branch_bound(g.x_in_minus, g.x_out_minus);
}

// True when the input overlap, the complement overlap, and both balanced-gate
// target overlaps all coincide; unit efficiencies are reachable exactly then.
inline bool is_polar_great_circle(const StateSet& set, double tol = 1e-12) {
    const cplx o = inner(set.psi1, set.psi2);
    const cplx obar = inner(set.psibar1, set.psibar2);
    const auto g = build_grams(set, GateSpec::hadamard());
    return std::abs(o - obar) <= tol && std::abs(o - g.x_out_plus(0, 1)) <= tol &&
           std::abs(o - g.x_out_minus(0, 1)) <= tol;
}

}  // namespace probgate
