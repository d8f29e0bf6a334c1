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
#include "biphoton/measurement.hpp"

#include "support/generators.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace biphoton;
using Catch::Matchers::WithinAbs;

namespace {

constexpr auto H = Polarization::H;
constexpr auto V = Polarization::V;

PhotonicState one(const std::string& path, Polarization pol = H) {
    return create_photon(PhotonicState::vacuum(), mode(path, pol));
}

// (|1>_a + |0>)/sqrt2 times |1>_b, so that the state always has a photon.
PhotonicState half_on_a() {
    const auto with = create_photon(one("b"), mode("a", H));
    return normalized(sum(with, one("b")));
}

} // namespace

TEST_CASE("non-resolving detector on a half-occupied mode", "[measurement]") {
    const auto b = detect_non_resolving(half_on_a(), Detector::on_path("D", "a"));
    REQUIRE(b.outcomes.size() == 2);
    CHECK(b.outcomes[0].label == "click");
    CHECK(b.outcomes[1].label == "no-click");
    CHECK_THAT(b.at("click").probability, WithinAbs(0.5, 1e-15));
    CHECK_THAT(b.at("no-click").probability, WithinAbs(0.5, 1e-15));
    // Detected photons leave the optical modes.
    CHECK(occupied_paths(b.at("click").state) == std::set<std::string>{"b"});
    CHECK_THAT(b.at("click").state.born_weight(), WithinAbs(0.5, 1e-15));
}

TEST_CASE("detector on vacuum never clicks", "[measurement]") {
    const auto b = detect_non_resolving(one("b"), Detector::on_path("D", "a"));
    CHECK(b.at("click").probability == 0.0);
    CHECK(b.at("click").state.born_weight() == 0.0);
    CHECK(b.at("no-click").probability == 1.0);
    CHECK_THROWS_AS(b.at("maybe"), InvalidInput);
}

TEST_CASE("coincidence post-selection", "[measurement]") {
    const auto s = one("b");
    const auto none = post_select_coincidence(s, {{Detector::on_path("A", "a"), Click::kClick}});
    CHECK(none.probability == 0.0);
    const auto vac = PhotonicState::vacuum();
    const auto quiet = post_select_coincidence(vac, {{Detector::on_path("A", "a"), Click::kNoClick},
                                                     {Detector::on_path("B", "b"), Click::kNoClick}});
    CHECK(quiet.probability == 1.0);
    CHECK(quiet.state.terms().size() == 1);
    CHECK_THROWS_AS(post_select_coincidence(s, {{Detector::on_path("A", "a"), Click::kClick},
                                                {Detector::on_path("B", "a"), Click::kClick}}),
                    WiringError);
}

TEST_CASE("coincidence patterns partition the state", "[measurement]") {
    testgen::for_all(100, 41, [](testgen::Gen& g) {
        const auto s = g.state({"a", "b", "c"});
        double total = 0.0;
        for (auto x : {Click::kClick, Click::kNoClick}) {
            for (auto y : {Click::kClick, Click::kNoClick}) {
                total += post_select_coincidence(s, {{Detector::on_path("A", "a"), x}, {Detector{"B", {mode("b", V)}}, y}})
                             .probability;
            }
        }
        CHECK_THAT(total, WithinAbs(1.0, 1e-12));
    });
}

TEST_CASE("photon-count post-selection keeps photons", "[measurement]") {
    const auto s = half_on_a();
    const auto sel = post_select_photon_count(s, {"a"}, 1);
    CHECK_THAT(sel.probability, WithinAbs(0.5, 1e-15));
    CHECK(occupied_paths(sel.state) == std::set<std::string>{"a", "b"});
}

TEST_CASE("which-detector readout and feed-forward", "[measurement]") {
    const double s = 1.0 / std::sqrt(3.0);
    const std::pair<ModeId, Complex> w[] = {{mode("x", H), s}, {mode("y", H), s}, {mode("z", H), s}};
    const auto state = create_photon(one("q"), w);
    const auto b = detect_which(state, {Detector::on_path("X", "x"), Detector::on_path("Y", "y"),
                                        Detector::on_path("Z", "z")});
    REQUIRE(b.outcomes.size() == 3);
    for (const auto& o : b.outcomes) CHECK_THAT(o.probability, WithinAbs(1.0 / 3.0, 1e-15));

    FeedForwardRule rule;
    rule.corrections["Y"] = {{OpticalTarget::on_path("q"), SigmaX{}}};
    const auto fixed = apply_feed_forward(b, rule);
    CHECK_THAT(fidelity(fixed.at("Y").state, one("q", V)), WithinAbs(1.0, 1e-15));
    CHECK_THAT(fidelity(fixed.at("X").state, one("q", H)), WithinAbs(1.0, 1e-15));

    FeedForwardRule unknown;
    unknown.corrections["W"] = {};
    CHECK_THROWS_AS(apply_feed_forward(b, unknown), InvalidInput);

    FeedForwardRule outside;
    outside.corrections["X"] = {{OpticalTarget::on_path("elsewhere"), PhaseShift{1.0}}};
    outside.circuit_paths = {"q"};
    CHECK_THROWS_AS(apply_feed_forward(b, outside), WiringError);
}

TEST_CASE("merging equivalent outcomes gives a pure state", "[measurement]") {
    const double s = 1.0 / std::sqrt(2.0);
    const std::pair<ModeId, Complex> w[] = {{mode("x", H), s}, {mode("y", H), s}};
    const std::pair<ModeId, Complex> sig[] = {{mode("q", H), 0.6}, {mode("q", V), 0.8}};
    const auto state = create_photon(create_photon(PhotonicState::vacuum(), sig), w);
    const auto b = detect_which(state, {Detector::on_path("X", "x"), Detector::on_path("Y", "y")});
    const auto m = merge_outcomes(b, "X|Y");
    CHECK(m.label == "X|Y");
    CHECK_THAT(m.probability, WithinAbs(1.0, 1e-15));
    for (const auto& t : m.state.terms()) CHECK(t.record.empty());
    CHECK_THAT(fidelity(m.state, create_photon(PhotonicState::vacuum(), sig)), WithinAbs(1.0, 1e-14));
}

TEST_CASE("merging inequivalent outcomes keeps the mixture", "[measurement]") {
    const double s = 1.0 / std::sqrt(2.0);
    // |x>|q H> + |y>|q V>: detecting x or y leaves different signal states.
    auto a = create_photon(one("x"), mode("q", H));
    auto b = create_photon(one("y"), mode("q", V));
    const auto state = scaled(sum(a, b), s);
    const auto d = detect_which(state, {Detector::on_path("X", "x"), Detector::on_path("Y", "y")});
    const auto m = merge_outcomes(d, "X|Y");
    CHECK_THAT(fidelity(m.state, one("q", H)), WithinAbs(0.5, 1e-14));
    CHECK_THAT(fidelity(m.state, one("q", V)), WithinAbs(0.5, 1e-14));
}

TEST_CASE("detection completeness on random states", "[measurement]") {
    testgen::for_all(200, 42, [](testgen::Gen& g) {
        const auto s = g.state({"a", "b", "c"});
        const auto b = detect_non_resolving(s, Detector::on_path("D", g.pick<std::string>({"a", "b", "c"})));
        CHECK_THAT(b.total_probability(), WithinAbs(1.0, 1e-12));
        for (const auto& o : b.outcomes) {
            if (o.probability > 0.0) CHECK_THAT(norm_squared(o.state), WithinAbs(1.0, 1e-12));
        }
    });
}
