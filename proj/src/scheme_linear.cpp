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

#include "scheme_internal.hpp"

#include "biphoton/errors.hpp"

#include <cmath>
#include <numbers>

namespace biphoton {

namespace {

constexpr auto H = Polarization::H;
constexpr auto V = Polarization::V;
constexpr auto kPlus = BsConvention::kSymmetricMinusOnSecond;

const BeamSplitterSpec kBalanced = BeamSplitterSpec::balanced(kPlus);

const std::vector<std::string> kForwardOutputs{"6", "3", "7"};
const std::vector<std::string> kInverseInputs{"0'", "1'", "2'"};

} // namespace

namespace stages {

PhotonicState linear_forward_interference(const PhotonicState& biphoton, double t) {
    detail::require_open_unit(t, "t");
    auto s = apply_beam_splitter(biphoton, "in", "vin", "2", "1", BeamSplitterSpec::with_transmissivity(t, kPlus));
    s = route_pbs(s, {"1"}, {"3", "P1"});
    s = route_pbs(s, {"2"}, {"2h", "2v"});
    s = create_photon(s, mode("aH", H));
    s = create_photon(s, mode("aV", V));
    s = apply_beam_splitter(s, "2h", "aH", "4", "D1", kBalanced);
    s = apply_beam_splitter(s, "2v", "aV", "5", "D2", kBalanced);
    s = apply_beam_splitter(s, "4", "v4", "6", "P2", kBalanced);
    s = apply_single_mode(s, OpticalTarget::on_path("P2"), SigmaX{});
    s = apply_beam_splitter(s, "5", "v5", "7", "P3", kBalanced);
    return s;
}

EraserBranches linear_forward_eraser(const PhotonicState& biphoton, double t) {
    CircuitRun run{linear_forward_interference(biphoton, t), {}, {}};
    // Path 7 leaves the splitter vertically polarized; flip it so that all
    // three outputs share H, and undo the sign the ancilla interference puts
    // on the |HH> and |VV> branches relative to |HV>.
    run.state = apply_single_mode(run.state, OpticalTarget::on_path("7"), SigmaX{});
    run.state = apply_single_mode(run.state, OpticalTarget::on_path("3"), PhaseShift{std::numbers::pi});

    run.select("ancilla detectors", "D1 click, D2 click",
               post_select_coincidence(run.state, {{detail::path_detector("D1", "D1"), Click::kClick},
                                                   {detail::path_detector("D2", "D2"), Click::kClick}}));
    run.select("single photon in output", "1 photon on 3/6/7", post_select_photon_count(run.state, kForwardOutputs, 1));

    // Which-path eraser on P1, P2, P3.
    run.state = apply_qft(run.state, {"P1", "P2", "P3"}, {"q0", "q1", "q2"});
    auto which = detect_which(run.state, {detail::path_detector("D3", "q0"), detail::path_detector("D4", "q2"),
                                          detail::path_detector("D5", "q1")});
    auto phases = [](double six, double seven) {
        return std::vector<Correction>{{OpticalTarget::on_path("6"), PhaseShift{six}},
                                       {OpticalTarget::on_path("7"), PhaseShift{seven}}};
    };
    const double third = 2.0 * std::numbers::pi / 3.0;
    FeedForwardRule rule;
    rule.corrections["D3"] = {};
    rule.corrections["D4"] = phases(third, 2.0 * third);
    rule.corrections["D5"] = phases(2.0 * third, 4.0 * third);
    rule.circuit_paths = {"3", "6", "7"};
    return {std::move(run), apply_feed_forward(which, rule)};
}

CircuitRun linear_forward(const PhotonicState& biphoton, double t) {
    auto [run, which] = linear_forward_eraser(biphoton, t);
    for (const auto& o : which.outcomes) run.diagnostics["eraser_" + o.label + "_probability"] = o.probability;
    run.take("path eraser", merge_outcomes(which, "D3|D4|D5"));
    return run;
}

PhotonicState linear_inverse_spread(const PhotonicState& spatial, double t1, double t2, double t3) {
    detail::require_open_unit(t1, "t1");
    detail::require_open_unit(t2, "t2");
    detail::require_open_unit(t3, "t3");
    auto s = apply_beam_splitter(spatial, "1'", "v1", "x", "2", BeamSplitterSpec::with_transmissivity(t1, kPlus));
    s = apply_beam_splitter(s, "0'", "x", "L2", "1", BeamSplitterSpec::with_transmissivity(t2, kPlus));
    s = apply_beam_splitter(s, "2'", "v3", "3", "L3", BeamSplitterSpec::with_transmissivity(t3, kPlus));
    return apply_single_mode(s, OpticalTarget::on_path("3"), SigmaX{});
}

CircuitRun linear_inverse(const PhotonicState& spatial, double t1, double t2, double t3) {
    auto s = linear_inverse_spread(spatial, t1, t2, t3);
    s = create_photon(s, mode("aH", H));
    s = create_photon(s, mode("aV", V));
    s = apply_beam_splitter(s, "1", "aH", "4", "P1", kBalanced);
    s = route_pbs(s, {"2", "3"}, {"5", "5x"});
    s = apply_beam_splitter(s, "5", "aV", "7", "6", kBalanced);
    s = route_pbs(s, {"6"}, {"6h", "P2"});
    s = apply_single_mode(s, OpticalTarget::on_path("P1"), SigmaX{});
    s = apply_qft(s, {"P1", "P2"}, {"E1", "E2"});

    CircuitRun run{s, {}, {}};
    const double before = run.probability();
    const auto e1 = detail::path_detector("eraser-D1", "E1");
    const auto e2 = detail::path_detector("eraser-D2", "E2");
    auto erased = detect_which(run.state, {e1, e2});

    auto finish_merge = [](const PhotonicState& in) {
        auto m = apply_beam_splitter(in, "4", "7", "out", "o2", kBalanced);
        return post_select_photon_count(m, {"out"}, 2);
    };
    // The eraser-D2 outcome carries an uncorrectable sign; record what it
    // would have contributed before dropping it.
    const auto& d2 = erased.at("eraser-D2");
    const double d2_success = d2.probability > 0.0 ? finish_merge(d2.state).probability : 0.0;
    run.diagnostics["discarded_eraser_d2_probability"] = before * d2.probability * d2_success;

    run.take("path eraser", erased.at("eraser-D1"));
    run.select("two photons in output", "2 photons on out", finish_merge(run.state));
    return run;
}

} // namespace stages

SchemeReport scheme_linear_forward(const QutritCoefficients& c, double t) {
    c.validate();
    auto run = stages::linear_forward(make_biphotonic_qutrit(c, "in"), t);
    auto report = detail::finish_report("linear-forward", std::move(run), make_spatial_qutrit(c, kForwardOutputs, H));
    report.parameters["t"] = t;
    return report;
}

SchemeReport scheme_linear_inverse(const QutritCoefficients& c, double t1, double t2, double t3) {
    c.validate();
    auto run = stages::linear_inverse(make_spatial_qutrit(c, kInverseInputs, H), t1, t2, t3);
    auto report = detail::finish_report("linear-inverse", std::move(run), make_biphotonic_qutrit(c, "out"));
    report.parameters["t1"] = t1;
    report.parameters["t2"] = t2;
    report.parameters["t3"] = t3;
    return report;
}

} // namespace biphoton
