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

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "probgate/feasibility.hpp"
#include "probgate/linalg.hpp"

namespace probgate {

/*
 * EFFICIENCY OPTIMIZER
 *
 * Maximize (e1 + e2) / 2 over [0,1]^2 subject to the branch residual being
 * PSD. The feasible set is star shaped around the origin: scaling a feasible
 * point toward the origin interpolates between the PSD input Gram and the
 * feasible residual, staying PSD. That makes ray bisection sound, and a
 * coordinate-wise extension pass sharpens the best ray hit.
 */

struct OptimizationResult {
    Efficiencies best_eff;
    double best_average;
    double boundary_certificate;  // min residual eigenvalue at the optimum
    std::size_t iterations;       // feasibility evaluations spent
};

struct GridPoint {
    Efficiencies eff;
    double average;
};

namespace detail {

// Closed-form 2x2 PSD test on the residual, tight enough that every accepted
// point also passes the spectral classifier downstream.
class ResidualTest {
  public:
    ResidualTest(const Matrix& x_in, const Matrix& x_out)
        : in00_(x_in(0, 0).real()),
          in11_(x_in(1, 1).real()),
          out00_(x_out(0, 0).real()),
          out11_(x_out(1, 1).real()),
          in01_(x_in(0, 1)),
          out01_(x_out(0, 1)) {}

    bool feasible(double e1, double e2) const {
        if (!(e1 >= 0.0 && e1 <= 1.0 && e2 >= 0.0 && e2 <= 1.0)) return false;
        const double r00 = in00_ - e1 * out00_;
        const double r11 = in11_ - e2 * out11_;
        const cplx r01 = in01_ - std::sqrt(e1 * e2) * out01_;
        const double det = r00 * r11 - std::norm(r01);
        return r00 >= -kGuard && r11 >= -kGuard && det >= -kGuard;
    }

  private:
    static constexpr double kGuard = 1e-12;
    double in00_, in11_, out00_, out11_;
    cplx in01_, out01_;
};

}  // namespace detail

inline OptimizationResult maximize_branch(const Matrix& x_in, const Matrix& x_out,
                                          bool equal_eff = false,
                                          double tol = kDefaultPsdTol) {
    detail::require_hermitian(x_in, "maximize_branch x_in");
    detail::require_hermitian(x_out, "maximize_branch x_out");
    const detail::ResidualTest test(x_in, x_out);
    std::size_t evals = 0;
    const auto feasible = [&](double e1, double e2) {
        ++evals;
        return test.feasible(e1, e2);
    };

    Efficiencies best{0.0, 0.0};
    double best_avg = 0.0;
    const auto offer = [&](double e1, double e2) {
        const double avg = 0.5 * (e1 + e2);
        if (avg > best_avg || (avg == best_avg && (e1 > best[0] ||
                               (e1 == best[0] && e2 > best[1])))) {
            best = {e1, e2};
            best_avg = avg;
        }
    };

    // Walk each ray from the origin to the box boundary point (px, py) and
    // bisect the largest feasible scale.
    const auto ray_probe = [&](double px, double py) {
        if (feasible(px, py)) {
            offer(px, py);
            return;
        }
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (feasible(mid * px, mid * py)) lo = mid;
            else hi = mid;
        }
        offer(lo * px, lo * py);
    };

    if (equal_eff) {
        ray_probe(1.0, 1.0);
    } else {
        ray_probe(1.0, 0.0);
        ray_probe(0.0, 1.0);
        ray_probe(1.0, 1.0);
        for (int k = 1; k <= 64; ++k) {
            const double theta = k * (kPi / 2.0) / 65.0;
            const double c = std::cos(theta);
            const double s = std::sin(theta);
            const double m = std::max(c, s);
            ray_probe(c / m, s / m);
        }

        // Extend one coordinate at a time. At fixed e2 the feasible e1 values
        // form an interval (the determinant is concave in sqrt(e1)), so the
        // upper endpoint is reachable by bisection from any feasible point.
        const auto extend = [&](double& grow, double fixed, bool grow_is_first) {
            const auto ok = [&](double g) {
                return grow_is_first ? feasible(g, fixed) : feasible(fixed, g);
            };
            if (ok(1.0)) {
                grow = 1.0;
                return;
            }
            double lo = grow, hi = 1.0;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (ok(mid)) lo = mid;
                else hi = mid;
            }
            grow = lo;
        };
        Efficiencies e = best;
        for (int round = 0; round < 50; ++round) {
            const double before = 0.5 * (e[0] + e[1]);
            extend(e[0], e[1], true);
            extend(e[1], e[0], false);
            if (0.5 * (e[0] + e[1]) - before < 1e-12) break;
        }
        offer(e[0], e[1]);
    }

    OptimizationResult result;
    result.best_eff = best;
    result.best_average = best_avg;
    result.boundary_certificate =
        psd_classify(residual(x_in, x_out, best), tol).min_eigenvalue;
    result.iterations = evals;
    return result;
}

// Exhaustive reference scan, for validating the optimizer.
inline GridPoint grid_oracle(const Matrix& x_in, const Matrix& x_out, double step) {
    if (!(step > 0.0 && step <= 0.1))
        throw Error(Errc::EffOutOfRange, "grid_oracle: step must lie in (0, 0.1]");
    const detail::ResidualTest test(x_in, x_out);

    std::vector<double> values;
    const int n = static_cast<int>(std::floor(1.0 / step + 1e-9));
    for (int k = 0; k <= n; ++k) values.push_back(std::min(1.0, k * step));
    if (values.back() < 1.0) values.push_back(1.0);

    GridPoint best{{0.0, 0.0}, 0.0};
    bool found = false;
    for (auto i = values.rbegin(); i != values.rend(); ++i) {
        for (auto j = values.rbegin(); j != values.rend(); ++j) {
            if (!test.feasible(*i, *j)) continue;
            const double avg = 0.5 * (*i + *j);
            if (!found || avg > best.average) {
                best = {{*i, *j}, avg};
                found = true;
            }
        }
    }
    return best;
}

}  // namespace probgate
