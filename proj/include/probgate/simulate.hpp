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
#include <cstdint>

#include "probgate/error.hpp"
#include "probgate/rng.hpp"
#include "probgate/synthesis.hpp"

namespace probgate {

/*
 * POSTSELECTION SIMULATOR
 *
 * Run the machine on input tensor P0, measure the probe, keep the P0
 * outcomes, and score the renormalized system state against a target.
 */

struct ExactRun {
    double success_prob;
    QubitState post_state;
    double fidelity;
};

struct SimulationReport {
    double exact_success_prob;
    double observed_success_freq;
    std::uint64_t trials;
    double post_fidelity;
    std::uint64_t seed;
    std::array<double, 3> outcome_probs;
    std::array<std::uint64_t, 3> outcome_counts;
};

// What the machine is supposed to produce on `input`, up to global phase.
inline QubitState machine_target(const SynthesisResult& m, const QubitState& input) {
    const GateSpec& g = m.branch.gate;
    const QubitState bar = complement(input);
    if (m.branch.kind == Branch::Plus) return g.a * input + g.b * bar;
    return std::conj(g.a) * input + std::conj(g.b) * bar;
}

namespace detail {

inline CVector evolve(const SynthesisResult& m, const QubitState& input) {
    if (!input.is_normalized(1e-10))
        throw Error(Errc::NotNormalized, "simulator input must be unit norm");
    return m.unitary * tensor_with_probe(input, 0);
}

inline std::array<double, 3> probe_distribution(const CVector& evolved) {
    std::array<double, 3> p{0.0, 0.0, 0.0};
    for (std::size_t sys = 0; sys < 2; ++sys)
        for (std::size_t probe = 0; probe < ProbeSpace::kDim; ++probe)
            p[probe] += std::norm(evolved[ProbeSpace::index(sys, probe)]);
    const double total = p[0] + p[1] + p[2];
    for (double& v : p) v /= total;
    return p;
}

}  // namespace detail

inline ExactRun exact_run(const SynthesisResult& m, const QubitState& input,
                          const QubitState& target) {
    const CVector evolved = detail::evolve(m, input);
    const cplx s0 = evolved[ProbeSpace::index(0, 0)];
    const cplx s1 = evolved[ProbeSpace::index(1, 0)];
    const double p = std::norm(s0) + std::norm(s1);
    if (p < 1e-14)
        throw Error(Errc::ZeroSuccessProbability,
                    "exact_run: the success outcome never occurs");
    const double n = std::sqrt(p);
    ExactRun run;
    run.success_prob = p;
    run.post_state = {s0 / n, s1 / n};
    run.fidelity = fidelity(target, run.post_state);
    return run;
}

inline SimulationReport monte_carlo(const SynthesisResult& m, const QubitState& input,
                                    std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1) throw Error(Errc::ParseError, "monte_carlo: trials must be at least 1");
    const CVector evolved = detail::evolve(m, input);
    const auto probs = detail::probe_distribution(evolved);

    SimulationReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.outcome_probs = probs;
    rep.exact_success_prob = probs[0];

    const cplx s0 = evolved[ProbeSpace::index(0, 0)];
    const cplx s1 = evolved[ProbeSpace::index(1, 0)];
    const double p = std::norm(s0) + std::norm(s1);
    if (p < 1e-14) {
        rep.post_fidelity = 0.0;
    } else {
        const double n = std::sqrt(p);
        rep.post_fidelity = fidelity(machine_target(m, input), QubitState{s0 / n, s1 / n});
    }

    rep.outcome_counts = {0, 0, 0};
    SplitMix64 rng(seed);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const double u = rng.uniform01();
        if (u < probs[0]) ++rep.outcome_counts[0];
        else if (u < probs[0] + probs[1]) ++rep.outcome_counts[1];
        else ++rep.outcome_counts[2];
    }
    rep.observed_success_freq =
        static_cast<double>(rep.outcome_counts[0]) / static_cast<double>(trials);
    return rep;
}

}  // namespace probgate
