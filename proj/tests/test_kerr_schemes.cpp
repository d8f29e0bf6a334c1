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

#include "biphoton/errors.hpp"
#include "biphoton/schemes.hpp"

#include "support/generators.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace biphoton;
using Catch::Matchers::WithinAbs;

namespace {

constexpr auto H = Polarization::H;
constexpr auto V = Polarization::V;

const std::vector<std::string> kSpatial{"0", "1", "2"};

// State fed to the first entangler of the inverse map.
PhotonicState entangler_input(const QutritCoefficients& c) {
    auto s = make_spatial_qutrit(c, kSpatial);
    s = apply_single_mode(s, OpticalTarget::on_path("1"), SigmaX{});
    return apply_single_mode(s, OpticalTarget::on_path("2"), SigmaX{});
}

const stages::EntanglerWiring kFirst{{mode("0", H)}, {mode("1", V), mode("2", V)}, "a"};

} // namespace

TEST_CASE("Kerr forward map, both variants, ideal readout", "[kerr]") {
    testgen::for_all(50, 71, [](testgen::Gen& g) {
        const auto c = g.qutrit();
        const auto a = scheme_kerr_forward(c, balanced_parameters::kerr_forward_t(), KerrVariant::kSeparateQnd);
        const auto b = scheme_kerr_forward(c, balanced_parameters::kerr_forward_t(), KerrVariant::kDoubleXpm);
        CHECK_THAT(a.success_probability, WithinAbs(1.0 / 6.0, 1e-10));
        CHECK_THAT(b.success_probability, WithinAbs(1.0 / 6.0, 1e-10));
        CHECK_THAT(a.output_fidelity, WithinAbs(1.0, 1e-10));
        CHECK_THAT(b.output_fidelity, WithinAbs(1.0, 1e-10));
        CHECK_THAT(fidelity(a.output_state, b.output_state), WithinAbs(1.0, 1e-10));
        CHECK(a.success_probability == a.logged_probability());
        CHECK(a.settings.at("variant") == "separate-qnd");
        CHECK(b.settings.at("variant") == "double-xpm");
    });
}

TEST_CASE("Kerr forward: no registers survive", "[kerr]") {
    for (auto v : {KerrVariant::kSeparateQnd, KerrVariant::kDoubleXpm}) {
        const auto r = scheme_kerr_forward(QutritCoefficients::normalized(1.0, 2.0, 3.0), balanced_parameters::kerr_forward_t(), v);
        CHECK(r.output_state.registers().empty());
        CHECK(occupied_paths(r.output_state) == std::set<std::string>{"5", "6", "7"});
    }
}

TEST_CASE("Kerr forward: unbalanced splitter distorts the output", "[kerr]") {
    const auto r = scheme_kerr_forward(QutritCoefficients::normalized(1.0, 1.0, 1.0), 0.8);
    CHECK(r.output_fidelity < 0.99);
}

TEST_CASE("Kerr forward double-xpm in physical mode converges with |alpha| theta", "[kerr]") {
    const auto c = QutritCoefficients::normalized({0.3, 0.1}, {-0.5, 0.2}, {0.6, -0.4});
    double last = 0.0;
    double last_gap = 1.0;
    for (double at : {0.5, 1.0, 2.0, 4.0}) {
        const QubusSettings q{at / 0.1, 0.1, MeasurementMode::kPhysical};
        const auto r = scheme_kerr_forward(c, balanced_parameters::kerr_forward_t(), KerrVariant::kDoubleXpm, q);
        CHECK(r.output_fidelity > last);
        CHECK(std::abs(r.success_probability - 1.0 / 6.0) < last_gap);
        last = r.output_fidelity;
        last_gap = std::abs(r.success_probability - 1.0 / 6.0);
    }
    CHECK_THAT(last, WithinAbs(1.0, 1e-9));
}

TEST_CASE("Kerr forward: separate-qnd keeps an ideal homodyne under physical mode", "[kerr]") {
    const QubusSettings q{2.0, 0.3, MeasurementMode::kPhysical};
    // The homodyne step is always ideal; the variant still runs.
    const auto r = scheme_kerr_forward(QutritCoefficients{}, balanced_parameters::kerr_forward_t(), KerrVariant::kSeparateQnd, q);
    CHECK_THAT(r.output_fidelity, WithinAbs(1.0, 1e-10));
}

TEST_CASE("qubus settings are validated", "[kerr]") {
    CHECK_THROWS_AS(scheme_kerr_forward({}, 0.5, KerrVariant::kDoubleXpm, {2.0, 0.0, MeasurementMode::kIdeal}), InvalidInput);
    CHECK_THROWS_AS(scheme_kerr_forward({}, 0.5, KerrVariant::kDoubleXpm, {-1.0, 0.3, MeasurementMode::kIdeal}), InvalidInput);
    CHECK_THROWS_AS(scheme_kerr_inverse({}, {2.0, -0.3, MeasurementMode::kIdeal}), InvalidInput);
}

TEST_CASE("entangler is deterministic in ideal mode", "[kerr]") {
    testgen::for_all(20, 72, [](testgen::Gen& g) {
        const auto s = entangler_input(g.qutrit());
        const auto b = stages::entangler_branches(s, kFirst, {}, 500);
        CHECK_THAT(b.corrected.total_probability(), WithinAbs(1.0, 1e-6));
        const auto target = stages::entangler_target(s, kFirst);
        double weight = 0.0;
        for (const auto& o : b.corrected.outcomes) {
            if (o.probability > 0.0 && fidelity(o.state, target) >= 1.0 - 1e-10) weight += o.probability;
        }
        CHECK(weight >= 1.0 - 1e-6);
        const auto r = entangler(s, kFirst);
        CHECK(r.diagnostics.at("fidelity_one_weight") >= 1.0 - 1e-6);
        CHECK_THAT(r.output_fidelity, WithinAbs(1.0, 1e-10));
    });
}

TEST_CASE("entangler n=0 branch needs no correction", "[kerr]") {
    const auto s = entangler_input(QutritCoefficients::normalized(0.5, {0.2, 0.7}, -0.4));
    const auto b = stages::entangler_branches(s, kFirst, {}, 500);
    const auto target = stages::entangler_target(s, kFirst);
    CHECK_THAT(fidelity(b.raw.at("n=0").state, target), WithinAbs(1.0, 1e-12));
    // Odd n is wrong before its correction.
    CHECK(fidelity(b.raw.at("n=1").state, target) < 0.99);
    CHECK_THAT(fidelity(b.corrected.at("n=1").state, target), WithinAbs(1.0, 1e-10));
}

TEST_CASE("entangler rejects a busy ancilla path", "[kerr]") {
    const auto s = entangler_input(QutritCoefficients{});
    const stages::EntanglerWiring bad{{mode("0", H)}, {mode("1", V)}, "1"};
    CHECK_THROWS_AS(stages::entangler_branches(s, bad, {}, 500), WiringError);
    const stages::EntanglerWiring none{{mode("0", H)}, {mode("1", V)}, ""};
    CHECK_THROWS_AS(stages::entangler_branches(s, none, {}, 500), InvalidInput);
}

TEST_CASE("Kerr inverse map", "[kerr]") {
    testgen::for_all(50, 73, [](testgen::Gen& g) {
        const auto r = scheme_kerr_inverse(g.qutrit());
        CHECK_THAT(r.success_probability, WithinAbs(0.5, 1e-10));
        CHECK_THAT(r.output_fidelity, WithinAbs(1.0, 1e-10));
        CHECK(r.success_probability == r.logged_probability());
        for (const char* k : {"eraser_5_probability", "eraser_6_probability", "eraser_7_probability",
                              "eraser_8_probability"}) {
            CHECK_THAT(r.diagnostics.at(k), WithinAbs(0.25, 1e-12));
        }
        CHECK(r.output_state.registers().empty());
    });
}

TEST_CASE("Kerr inverse: merge outcomes account for the full norm", "[kerr]") {
    const auto run = stages::kerr_inverse(make_spatial_qutrit(QutritCoefficients::normalized(1.0, {0.0, 2.0}, 0.5), kSpatial), {});
    REQUIRE_FALSE(run.log.empty());
    const auto& last = run.log.back();
    CHECK(last.outcome == "bunched");
    CHECK_THAT(last.probability + run.diagnostics.at("merge_split_probability"), WithinAbs(1.0, 1e-12));
}

TEST_CASE("Kerr inverse works for other qubus settings", "[kerr]") {
    const auto c = QutritCoefficients::normalized({0.1, 0.9}, 0.3, {-0.2, 0.4});
    for (const QubusSettings q : {QubusSettings{1.0, 0.1, MeasurementMode::kIdeal}, QubusSettings{5.0, 0.7, MeasurementMode::kIdeal}}) {
        const auto r = scheme_kerr_inverse(c, q);
        CHECK_THAT(r.success_probability, WithinAbs(0.5, 1e-10));
        CHECK_THAT(r.output_fidelity, WithinAbs(1.0, 1e-10));
    }
}

TEST_CASE("entangler at the fixed readout cap", "[kerr]") {
    const auto s = entangler_input(QutritCoefficients::normalized({0.3, 0.3}, -0.6, {0.1, 0.5}));
    const auto r = entangler(s, kFirst, {2.0, 0.3, MeasurementMode::kIdeal}, kNumberCutoff);
    CHECK(r.diagnostics.at("fidelity_one_weight") >= 1.0 - 1e-6);
    CHECK(r.parameters.at("cap") == kNumberCutoff);
    // A strong bus needs more than the fixed cap; a fixed cap loses the tail.
    const QubusSettings strong{5.0, 0.7, MeasurementMode::kIdeal};
    CHECK(entangler(s, kFirst, strong, kNumberCutoff).success_probability < 0.99);
    CHECK_THAT(entangler(s, kFirst, strong).success_probability, WithinAbs(1.0, 1e-12));
}
