/*
 * Copyright 2026 The biphoton Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "biphoton/schemes.hpp"

#include "support/generators.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace biphoton;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

U3Options with(Backend b) {
    U3Options o;
    o.backend = b;
    return o;
}

} // namespace

TEST_CASE("identity on both backends", "[u3]") {
    const auto c = QutritCoefficients::normalized({0.2, 0.1}, 0.7, {-0.3, 0.5});
    const auto k = u3_biphotonic(c, Unitary3::identity(), with(Backend::kKerr));
    CHECK_THAT(k.success_probability, WithinAbs(1.0 / 12.0, 1e-10));
    CHECK_THAT(k.output_fidelity, WithinAbs(1.0, 1e-10));
    const auto l = u3_biphotonic(c, Unitary3::identity(), with(Backend::kLinear));
    CHECK_THAT(l.success_probability, WithinRel(1.17e-4, 0.02));
    CHECK_THAT(l.output_fidelity, WithinAbs(1.0, 1e-10));
    CHECK(l.settings.at("backend") == "linear");
}

TEST_CASE("Haar-random unitaries on both backends", "[u3]") {
    const double linear = balanced_parameters::linear_forward_probability() * balanced_parameters::linear_inverse_probability();
    testgen::for_all(50, 81, [&](testgen::Gen& g) {
        const auto c = g.qutrit();
        const auto u = g.unitary3();
        const auto k = u3_biphotonic(c, u, with(Backend::kKerr));
        const auto l = u3_biphotonic(c, u, with(Backend::kLinear));
        CHECK_THAT(k.output_fidelity, WithinAbs(1.0, 1e-9));
        CHECK_THAT(l.output_fidelity, WithinAbs(1.0, 1e-9));
        CHECK_THAT(k.success_probability, WithinAbs(1.0 / 12.0, 1e-10));
        CHECK_THAT(l.success_probability, WithinRel(linear, 1e-10));
        CHECK_THAT(fidelity(k.output_state, l.output_state), WithinAbs(1.0, 1e-9));
        CHECK(k.success_probability == k.logged_probability());
        CHECK(l.success_probability == l.logged_probability());
    });
}

TEST_CASE("target follows the dense matrix action", "[u3]") {
    testgen::Gen g(82);
    const auto c = g.qutrit();
    const auto u = g.unitary3();
    const auto r = u3_biphotonic(c, u);
    const Eigen::Vector3cd v = u.matrix() * Eigen::Vector3cd(c.alpha, c.beta, c.gamma);
    const auto expect = make_biphotonic_qutrit({v(0), v(1), v(2)}, "out");
    CHECK_THAT(fidelity(r.target_state, expect), WithinAbs(1.0, 1e-12));
    CHECK_THAT(fidelity(r.output_state, expect), WithinAbs(1.0, 1e-9));
}

TEST_CASE("a non-trivial unitary changes the output", "[u3]") {
    Eigen::Matrix3cd swap = Eigen::Matrix3cd::Zero();
    swap(0, 2) = 1.0;
    swap(2, 0) = 1.0;
    swap(1, 1) = 1.0;
    const QutritCoefficients c{1.0, 0.0, 0.0};
    const auto r = u3_biphotonic(c, Unitary3::from_matrix(swap));
    CHECK_THAT(fidelity(r.output_state, make_biphotonic_qutrit({0.0, 0.0, 1.0}, "out")), WithinAbs(1.0, 1e-10));
    CHECK(fidelity(r.output_state, make_biphotonic_qutrit(c, "out")) < 1e-10);
}

TEST_CASE("stage logs are concatenated", "[u3]") {
    const auto r = u3_biphotonic(QutritCoefficients{}, Unitary3::identity(), with(Backend::kKerr));
    const auto fwd = scheme_kerr_forward(QutritCoefficients{});
    const auto inv = scheme_kerr_inverse(QutritCoefficients{});
    CHECK(r.branch_log.size() == fwd.branch_log.size() + inv.branch_log.size());
    CHECK(r.branch_log.front().step.rfind("forward: ", 0) == 0);
    CHECK(r.branch_log.back().step.rfind("inverse: ", 0) == 0);
}
