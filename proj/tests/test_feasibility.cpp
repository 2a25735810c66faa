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

#include "probgate/feasibility.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace probgate;
using Catch::Matchers::WithinAbs;

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;
}

TEST_CASE("residual at zero efficiency returns the input gram") {
    SplitMix64 rng(31);
    const auto set = testutil::random_state_pair(rng);
    const auto g = build_grams(set, GateSpec::hadamard());
    const Matrix r = residual(g.x_in_plus, g.x_out_plus, {0.0, 0.0});
    CHECK(max_abs_diff(r, g.x_in_plus) <= 1e-15);
}

TEST_CASE("residual of equal grams at unit efficiency vanishes") {
    SplitMix64 rng(32);
    for (int trial = 0; trial < 30; ++trial) {
        const Matrix x = testutil::random_hermitian(rng, 2);
        const Matrix r = residual(x, x, {1.0, 1.0});
        CHECK(r.frobenius_norm() <= 1e-14);
    }
}

TEST_CASE("polar pair residual vanishes at unit efficiency") {
    const auto set = make_state_set(from_bloch(0.0, 0.0), from_bloch(kPi / 3.0, 0.0));
    const auto g = build_grams(set, GateSpec::hadamard());
    CHECK(residual(g.x_in_plus, g.x_out_plus, {1.0, 1.0}).frobenius_norm() <= 1e-12);
    CHECK(residual(g.x_in_minus, g.x_out_minus, {1.0, 1.0}).frobenius_norm() <= 1e-12);
}

TEST_CASE("residual of the circular pair at unit efficiency") {
    const auto set = make_state_set({1.0, 0.0}, {kInvSqrt2, cplx{0.0, kInvSqrt2}});
    const auto g = build_grams(set, GateSpec::hadamard());
    const Matrix r = residual(g.x_in_plus, g.x_out_plus, {1.0, 1.0});

    CHECK_THAT(std::abs(r(0, 0)), WithinAbs(0.0, 1e-14));
    CHECK_THAT(std::abs(r(1, 1)), WithinAbs(0.0, 1e-14));
    CHECK_THAT(std::abs(r(0, 1) - cplx{0.0, kInvSqrt2}), WithinAbs(0.0, 1e-14));
    CHECK_THAT(std::abs(r(1, 0) - cplx{0.0, -kInvSqrt2}), WithinAbs(0.0, 1e-14));

    const auto eig = hermitian_eig(r);
    CHECK_THAT(eig.eigenvalues[0], WithinAbs(-kInvSqrt2, 1e-12));
    CHECK_THAT(eig.eigenvalues[1], WithinAbs(kInvSqrt2, 1e-12));
}

TEST_CASE("residual validates efficiencies") {
    const Matrix x = Matrix::identity(2);
    const auto bad = [&](Efficiencies eff) {
        CHECK_THROWS_MATCHES(residual(x, x, eff), Error,
                             Catch::Matchers::Predicate<Error>([](const Error& e) {
                                 return e.code() == Errc::EffOutOfRange;
                             }));
    };
    bad({-0.1, 0.5});
    bad({0.2, 1.3});
    bad({std::nan(""), 0.5});
}

TEST_CASE("check_feasible on the landmark cases") {
    const auto polar = make_state_set(from_bloch(0.0, 0.0), from_bloch(kPi / 3.0, 0.0));
    const auto gp = build_grams(polar, GateSpec::hadamard());
    const auto unit = check_feasible(gp, {{1.0, 1.0}, {1.0, 1.0}});
    CHECK(unit.feasible);
    CHECK(unit.residual_plus.frobenius_norm() <= 1e-12);
    CHECK(unit.residual_minus.frobenius_norm() <= 1e-12);

    const auto circ = make_state_set({1.0, 0.0}, {kInvSqrt2, cplx{0.0, kInvSqrt2}});
    const auto gc = build_grams(circ, GateSpec::hadamard());
    const auto over = check_feasible(gc, {{1.0, 1.0}, {0.0, 0.0}});
    CHECK_FALSE(over.feasible);
    CHECK(over.class_plus.tag == PsdTag::Indefinite);
    CHECK_THAT(over.class_plus.min_eigenvalue, WithinAbs(-kInvSqrt2, 1e-12));

    const auto idle = check_feasible(gc, {{0.0, 0.0}, {0.0, 0.0}});
    CHECK(idle.feasible);
}

TEST_CASE("bounds on the landmark cases") {
    const auto polar = make_state_set(from_bloch(0.0, 0.0), from_bloch(kPi / 3.0, 0.0));
    const auto gp = build_grams(polar, GateSpec::hadamard());
    CHECK_THAT(bound_plus(gp).value, WithinAbs(1.0, 1e-12));
    CHECK_THAT(bound_minus(gp).value, WithinAbs(1.0, 1e-12));

    const auto circ = make_state_set({1.0, 0.0}, {kInvSqrt2, cplx{0.0, kInvSqrt2}});
    const auto gc = build_grams(circ, GateSpec::hadamard());
    const auto b = bound_plus(gc);
    CHECK(b.value == 1.0);
    CHECK(b.capped);

    const auto ortho = make_state_set({1.0, 0.0}, {0.0, 1.0});
    const auto go = build_grams(ortho, GateSpec::hadamard());
    CHECK_THAT(bound_plus(go).value, WithinAbs(1.0, 1e-12));
}

TEST_CASE("polar great circle detection") {
    CHECK(is_polar_great_circle(make_state_set(from_bloch(0.0, 0.0), from_bloch(kPi / 3.0, 0.0))));
    CHECK(is_polar_great_circle(make_state_set({1.0, 0.0}, {0.0, 1.0})));
    CHECK_FALSE(is_polar_great_circle(
        make_state_set({1.0, 0.0}, {kInvSqrt2, cplx{0.0, kInvSqrt2}})));

    SplitMix64 rng(33);
    for (int trial = 0; trial < 50; ++trial)
        CHECK(is_polar_great_circle(testutil::random_real_pair(rng), 1e-10));
}

TEST_CASE("feasible efficiencies never beat the branch bound") {
    SplitMix64 rng(34);
    for (int trial = 0; trial < 20; ++trial) {
        const auto set = testutil::random_state_pair(rng);
        const auto g = build_grams(set, GateSpec::hadamard());
        const double bp = bound_plus(g).value;
        const double bm = bound_minus(g).value;
        for (int i = 0; i <= 20; ++i) {
            for (int j = 0; j <= 20; ++j) {
                const Efficiencies eff{i * 0.05, j * 0.05};
                const double avg = 0.5 * (eff[0] + eff[1]);
                const auto rp = psd_classify(residual(g.x_in_plus, g.x_out_plus, eff));
                if (rp.tag != PsdTag::Indefinite) CHECK(avg <= bp + 1e-9);
                const auto rm = psd_classify(residual(g.x_in_minus, g.x_out_minus, eff));
                if (rm.tag != PsdTag::Indefinite) CHECK(avg <= bm + 1e-9);
            }
        }
    }
}
