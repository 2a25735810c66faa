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

#include <cmath>
#include <complex>

#include "probgate/error.hpp"
#include "probgate/linalg.hpp"

namespace probgate {

inline constexpr double kStateNormTol = 1e-12;
inline constexpr double kIndependenceTol = 1e-9;

/*
 * QUBIT STATES
 *
 * Amplitudes keep their global phase; physical comparisons elsewhere go
 * through fidelity, which ignores it.
 */

struct QubitState {
    cplx alpha;  // amplitude of |0>
    cplx beta;   // amplitude of |1>

    double norm() const { return std::sqrt(std::norm(alpha) + std::norm(beta)); }
    bool is_normalized(double tol = kStateNormTol) const { return std::abs(norm() - 1.0) <= tol; }
    CVector to_vector() const { return {alpha, beta}; }
};

inline QubitState operator*(const cplx& c, const QubitState& s) {
    return {c * s.alpha, c * s.beta};
}
inline QubitState operator+(const QubitState& a, const QubitState& b) {
    return {a.alpha + b.alpha, a.beta + b.beta};
}
inline QubitState operator-(const QubitState& a, const QubitState& b) {
    return {a.alpha - b.alpha, a.beta - b.beta};
}

inline cplx inner(const QubitState& a, const QubitState& b) {
    return std::conj(a.alpha) * b.alpha + std::conj(a.beta) * b.beta;
}

inline double fidelity(const QubitState& a, const QubitState& b) {
    return std::norm(inner(a, b));
}

// Antipodal (spin-flipped) state: conjugate-linear, orthogonal to the input.
inline QubitState complement(const QubitState& s) {
    return {std::conj(s.beta), -std::conj(s.alpha)};
}

inline QubitState from_bloch(double theta, double phi) {
    return {std::cos(theta / 2.0),
            cplx{std::cos(phi), std::sin(phi)} * std::sin(theta / 2.0)};
}

/*
 * STATE SETS
 *
 * The working set {psi1, psi2, complement(psi1), complement(psi2)}. The
 * complements are always derived here, never supplied, so the four states
 * are consistent by construction.
 */

struct StateSet {
    QubitState psi1, psi2;
    QubitState psibar1, psibar2;
    cplx pair_overlap;  // <psi1|psi2>, cached
    bool independent;
};

inline StateSet make_state_set(const QubitState& psi1, const QubitState& psi2) {
    if (!psi1.is_normalized() || !psi2.is_normalized())
        throw Error(Errc::NotNormalized, "make_state_set: states must be unit norm");
    const cplx det = psi1.alpha * psi2.beta - psi2.alpha * psi1.beta;
    if (std::abs(det) <= kIndependenceTol)
        throw Error(Errc::LinearlyDependentPair,
                    "make_state_set: the two states are proportional");
    return StateSet{psi1, psi2, complement(psi1), complement(psi2), inner(psi1, psi2), true};
}

// Numerical rank from the Gram spectrum: eigenvalues at or above `tol` count.
inline std::size_t independence_rank(const std::vector<CVector>& vectors,
                                     double tol = kIndependenceTol) {
    if (vectors.empty()) return 0;
    const std::size_t dim = vectors.front().size();
    for (const auto& v : vectors)
        if (v.size() != dim)
            throw Error(Errc::DimensionMismatch, "independence_rank: mixed vector lengths");
    const auto eig = hermitian_eig(gram_of(vectors));
    std::size_t rank = 0;
    for (double lam : eig.eigenvalues)
        if (lam >= tol) ++rank;
    return rank;
}

}  // namespace probgate
