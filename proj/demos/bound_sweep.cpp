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

// Sweeps the second input state across the Bloch sphere while the first stays
// at |0>, and prints how the best success efficiencies of the probabilistic
// Hadamard respond. Output is CSV on stdout, one row per (theta, phi).
//
// On the phi = 0 meridian every state pair reaches average efficiency 1 on
// both branches. Moving off the meridian makes the branch targets collapse
// toward each other and the attainable average drops.

#include <cstdio>

#include "probgate/optimizer.hpp"

using namespace probgate;

int main() {
    const GateSpec gate = GateSpec::hadamard();
    const QubitState first = from_bloch(0.0, 0.0);

    std::printf("theta,phi,bound_plus,bound_minus,avg_plus,avg_minus,"
                "plus_e1,plus_e2\n");
    for (const double phi : {0.0, kPi / 4.0, kPi / 2.0}) {
        for (int step = 1; step <= 15; ++step) {
            const double theta = step * kPi / 16.0;
            const auto set = make_state_set(first, from_bloch(theta, phi));
            const auto grams = build_grams(set, gate);
            const auto bp = bound_plus(grams);
            const auto bm = bound_minus(grams);
            const auto rp = maximize_branch(grams.x_in_plus, grams.x_out_plus);
            const auto rm = maximize_branch(grams.x_in_minus, grams.x_out_minus);
            std::printf("%.6f,%.6f,%.9f,%.9f,%.9f,%.9f,%.9f,%.9f\n", theta, phi,
                        bp.value, bm.value, rp.best_average, rm.best_average,
                        rp.best_eff[0], rp.best_eff[1]);
        }
    }
    return 0;
}
