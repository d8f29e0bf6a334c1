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
constexpr double kPi = std::numbers::pi;

const BeamSplitterSpec kBalanced = BeamSplitterSpec::balanced(kPlus);

const std::vector<std::string> kForwardOutputs{"5", "6", "7"};
const std::vector<std::string> kInverseInputs{"0", "1", "2"};

std::vector<ModeId> both_modes(std::initializer_list<const char*> paths) {
    std::vector<ModeId> out;
    for (const char* p : paths) {
        out.push_back(mode(p, H));
        out.push_back(mode(p, V));
    }
    return out;
}

// Picks the quadrature outcome whose value matches `x`.
const BranchOutcome* find_quadrature(const BranchDistribution& b, double x) {
    for (const auto& o : b.outcomes) {
        if (std::abs(o.value - x) <= kCoherentMergeTolerance) return &o;
    }
    return nullptr;
}

void take_quadrature(CircuitRun& run, const std::string& step, const BranchDistribution& b, double x) {
    if (const auto* o = find_quadrature(b, x)) {
        run.take(step, *o);
        return;
    }
    run.take(step, BranchOutcome{"x=none", 0.0, empty_branch_state(run.state)});
}

PhotonicState plus_ancilla(const PhotonicState& s, const std::string& path) {
    const double h = 1.0 / std::sqrt(2.0);
    const std::pair<ModeId, Complex> plus[] = {{mode(path, H), h}, {mode(path, V), h}};
    return create_photon(s, plus);
}

int count_in(const FockTerm& t, const std::vector<ModeId>& modes) {
    int n = 0;
    for (const auto& m : modes) n += photons_in(t, m);
    return n;
}

} // namespace

namespace stages {

CircuitRun kerr_forward(const PhotonicState& biphoton, double t, KerrVariant variant, const QubusSettings& q,
                        int first_register) {
    detail::require_open_unit(t, "t");
    detail::validate_qubus(q);
    auto s = apply_beam_splitter(biphoton, "in", "vin", "1", "2", kBalanced);
    s = apply_beam_splitter(s, "2", "v2", "4", "3", BeamSplitterSpec::with_transmissivity(t, kPlus));
    s = route_pbs(s, {"1"}, {"1", "1'"});
    s = route_pbs(s, {"3"}, {"5", "6"});
    s = route_pbs(s, {"4"}, {"4x", "7"});

    const int r1 = first_register;
    const int r2 = first_register + 1;
    const CoherentRegisterSpec regs[] = {{r1, q.qubus_alpha}, {r2, q.qubus_alpha}};
    s = add_registers(s, regs);
    CircuitRun run{s, {}, {}};

    if (variant == KerrVariant::kSeparateQnd) {
        // QND 1 compares photons on path 1 with photons on 5/6/7, QND 2
        // compares V on 1' with V on 7.
        run.state = apply_xpm(run.state, {r1, {mode("1", H), mode("1'", V)}, q.theta});
        run.state = apply_xpm(run.state, {r1, both_modes({"5", "6", "7"}), -q.theta});
        run.state = apply_xpm(run.state, {r2, {mode("1'", V)}, q.theta});
        run.state = apply_xpm(run.state, {r2, {mode("7", V)}, -q.theta});
        // Homodyne readout is always modelled as ideal.
        take_quadrature(run, "QND 1 homodyne", project_quadrature_x(run.state, r1, MeasurementMode::kIdeal), q.qubus_alpha);
        take_quadrature(run, "QND 2 homodyne", project_quadrature_x(run.state, r2, MeasurementMode::kIdeal), q.qubus_alpha);
    } else {
        run.state = apply_xpm(run.state, {r1, {mode("1", H), mode("7", V)}, q.theta});
        run.state = apply_xpm(run.state, {r2, {mode("1'", V), mode("5", H), mode("6", V)}, q.theta});
        run.state = apply_coherent_element(run.state, CoherentPhase{r1, -q.theta});
        run.state = apply_coherent_element(run.state, CoherentPhase{r2, -q.theta});
        run.state = apply_coherent_element(run.state, CoherentBalancedSplitter{r1, r2});
        run.take("qubus number readout", project_photon_number(run.state, r1, 0, q.mode).outcomes.front());
        run.select("single photon in output", "1 photon on 5/6/7", post_select_photon_count(run.state, kForwardOutputs, 1));
        run.state = release_register_if_uniform(run.state, r2);
    }

    run.state = route_pbs(run.state, {"1", "1'"}, {"1c", "1j"});
    run.state = route_pbs(run.state, {"1c"}, {"d+", "d-"}, PbsBasis::kDiagonal);
    auto which = detect_which(run.state, {detail::path_detector("+", "d+"), detail::path_detector("-", "d-")});
    FeedForwardRule rule;
    rule.corrections["-"] = {{OpticalTarget::on_path("7"), PhaseShift{kPi}}};
    rule.circuit_paths = {"5", "6", "7"};
    which = apply_feed_forward(which, rule);
    run.take("diagonal readout", merge_outcomes(which, "+|-"));

    // Rebalance path 5 against 6 and 7.
    run.state = apply_beam_splitter(run.state, "5", "v5", "5", "5x", kBalanced);
    run.select("path 5 tap", "no click",
               post_select_coincidence(run.state, {{detail::path_detector("tap-5", "5x"), Click::kNoClick}}));
    run.state = apply_single_mode(run.state, OpticalTarget::on_path("6"), SigmaX{});
    run.state = apply_single_mode(run.state, OpticalTarget::on_path("7"), SigmaX{});
    return run;
}

PhotonicState entangler_target(const PhotonicState& s, const EntanglerWiring& wiring) {
    const auto with_ancilla = plus_ancilla(s, wiring.ancilla);
    const ModeId anc_h = mode(wiring.ancilla, H);
    const ModeId anc_v = mode(wiring.ancilla, V);
    std::vector<FockTerm> kept;
    for (const auto& t : with_ancilla.terms()) {
        const int first = count_in(t, wiring.v_type) + photons_in(t, anc_h);
        const int second = count_in(t, wiring.h_type) + photons_in(t, anc_v);
        if (first == second) kept.push_back(t);
    }
    return normalized(canonicalize(PhotonicState(s.registers(), std::move(kept), s.born_weight())));
}

EntanglerBranches entangler_branches(const PhotonicState& s, const EntanglerWiring& wiring, const QubusSettings& q,
                                     int first_register, int cap) {
    detail::validate_qubus(q);
    if (wiring.ancilla.empty()) throw InvalidInput("entangler needs an ancilla path");
    if (occupied_paths(s).count(wiring.ancilla)) throw WiringError("entangler ancilla path is already occupied");
    for (const auto& m : wiring.h_type) {
        if (m.path == wiring.ancilla) throw WiringError("entangler couples the ancilla path as a signal mode");
    }
    for (const auto& m : wiring.v_type) {
        if (m.path == wiring.ancilla) throw WiringError("entangler couples the ancilla path as a signal mode");
    }

    const int r1 = first_register;
    const int r2 = first_register + 1;
    auto st = plus_ancilla(s, wiring.ancilla);
    const CoherentRegisterSpec regs[] = {{r1, q.qubus_alpha}, {r2, q.qubus_alpha}};
    st = add_registers(st, regs);
    auto first_modes = wiring.v_type;
    first_modes.push_back(mode(wiring.ancilla, H));
    auto second_modes = wiring.h_type;
    second_modes.push_back(mode(wiring.ancilla, V));
    st = apply_xpm(st, {r1, first_modes, q.theta});
    st = apply_xpm(st, {r2, second_modes, q.theta});
    st = apply_coherent_element(st, CoherentPhase{r1, -q.theta});
    st = apply_coherent_element(st, CoherentPhase{r2, -q.theta});
    st = apply_coherent_element(st, CoherentBalancedSplitter{r1, r2});

    EntanglerBranches out;
    out.raw = measure_photon_number(st, r1, cap == kAutoCutoff ? number_cutoff_for(st, r1) : cap, q.mode);
    out.corrected = out.raw;
    for (auto& o : out.corrected.outcomes) {
        const int n = static_cast<int>(o.value);
        if (n == 0 || o.probability == 0.0) continue;
        o.state = apply_single_mode(o.state, OpticalTarget::on_path(wiring.ancilla), SigmaX{});
        if (n % 2 == 1) {
            for (const auto& m : wiring.h_type) o.state = apply_single_mode(o.state, OpticalTarget::on_mode(m), PhaseShift{kPi});
        }
    }
    // The second register can be dropped once it no longer tells the
    // branches apart; it must be dropped from all outcomes or none.
    bool releasable = true;
    for (const auto& o : out.corrected.outcomes) {
        if (o.probability == 0.0) continue;
        if (release_register_if_uniform(o.state, r2).registers().size() == o.state.registers().size()) releasable = false;
    }
    for (auto& o : out.corrected.outcomes) {
        if (o.probability == 0.0) {
            o.state = empty_branch_state(releasable ? release_register_if_uniform(o.state, r2) : o.state);
            continue;
        }
        if (releasable) o.state = release_register(o.state, r2);
    }
    return out;
}

CircuitRun kerr_inverse(const PhotonicState& spatial, const QubusSettings& q, int first_register) {
    detail::validate_qubus(q);
    CircuitRun run{spatial, {}, {}};
    run.state = apply_single_mode(run.state, OpticalTarget::on_path("1"), SigmaX{});
    run.state = apply_single_mode(run.state, OpticalTarget::on_path("2"), SigmaX{});

    const EntanglerWiring first{{mode("0", H)}, {mode("1", V), mode("2", V)}, "a"};
    auto e1 = entangler_branches(run.state, first, q, first_register);
    run.take("entangler 1", merge_outcomes(e1.corrected, "n=0.." + std::to_string(e1.corrected.outcomes.size() - 1)));

    run.state = apply_single_mode(run.state, OpticalTarget::on_path("1"), SigmaX{});
    const EntanglerWiring second{{mode("0", H), mode("1", H)}, {mode("2", V)}, "b"};
    auto e2 = entangler_branches(run.state, second, q, first_register + 2);
    run.take("entangler 2", merge_outcomes(e2.corrected, "n=0.." + std::to_string(e2.corrected.outcomes.size() - 1)));

    // Attenuate the |HH> and |VV> carriers so that the merge below, which
    // favours them by HOM bunching, ends up balanced.
    run.state = apply_beam_splitter(run.state, "0", "t0v", "0", "t0", kBalanced);
    run.state = apply_beam_splitter(run.state, "2", "t2v", "2", "t2", kBalanced);
    run.select("attenuator taps", "no click",
               post_select_coincidence(run.state, {{detail::path_detector("tap-0", "t0"), Click::kNoClick},
                                                   {detail::path_detector("tap-2", "t2"), Click::kNoClick}}));

    // Erase which path the qutrit photon took.
    run.state = route_pbs(run.state, {"1", "2"}, {"12", "12x"});
    run.state = apply_beam_splitter(run.state, "0", "12", "3", "4", kBalanced);
    run.state = route_pbs(run.state, {"3"}, {"5", "6"}, PbsBasis::kDiagonal);
    run.state = route_pbs(run.state, {"4"}, {"7", "8"}, PbsBasis::kDiagonal);
    auto which = detect_which(run.state, {detail::path_detector("5", "5"), detail::path_detector("6", "6"),
                                          detail::path_detector("7", "7"), detail::path_detector("8", "8")});
    const Correction flip_a{OpticalTarget::on_mode(mode("a", V)), PhaseShift{kPi}};
    const Correction flip_b{OpticalTarget::on_mode(mode("b", V)), PhaseShift{kPi}};
    FeedForwardRule rule;
    rule.corrections["6"] = {flip_b};
    rule.corrections["7"] = {flip_a};
    rule.corrections["8"] = {flip_a, flip_b};
    rule.circuit_paths = {"a", "b"};
    which = apply_feed_forward(which, rule);
    for (const auto& o : which.outcomes) run.diagnostics["eraser_" + o.label + "_probability"] = o.probability;
    run.take("path eraser", merge_outcomes(which, "5|6|7|8"));

    // Merge both photons onto one path and keep the bunched outcomes.
    run.state = apply_beam_splitter(run.state, "a", "b", "m1", "m2", kBalanced);
    const int reg = first_register + 4;
    const CoherentRegisterSpec bus[] = {{reg, q.qubus_alpha}};
    run.state = add_registers(run.state, bus);
    run.state = apply_xpm(run.state, {reg, both_modes({"m1"}), q.theta});
    const auto x = project_quadrature_x(run.state, reg, MeasurementMode::kIdeal);
    BranchDistribution bunched;
    const double both_in_first = q.qubus_alpha * std::cos(2.0 * q.theta);
    const double split = q.qubus_alpha * std::cos(q.theta);
    for (const auto& o : x.outcomes) {
        if (std::abs(o.value - split) <= kCoherentMergeTolerance) {
            run.diagnostics["merge_split_probability"] = o.probability;
            continue;
        }
        if (std::abs(o.value - both_in_first) > kCoherentMergeTolerance &&
            std::abs(o.value - q.qubus_alpha) > kCoherentMergeTolerance) {
            continue;
        }
        BranchOutcome kept = o;
        const bool first_port = std::abs(o.value - both_in_first) <= kCoherentMergeTolerance;
        kept.state = relabel_paths(o.state, {{first_port ? "m1" : "m2", "out"}});
        bunched.outcomes.push_back(std::move(kept));
    }
    run.take("merge homodyne", merge_outcomes(bunched, "bunched"));
    return run;
}

} // namespace stages

SchemeReport scheme_kerr_forward(const QutritCoefficients& c, double t, KerrVariant variant, const QubusSettings& q) {
    c.validate();
    auto run = stages::kerr_forward(make_biphotonic_qutrit(c, "in"), t, variant, q);
    auto report = detail::finish_report("kerr-forward", std::move(run), make_spatial_qutrit(c, kForwardOutputs, H));
    report.parameters["t"] = t;
    report.parameters["theta"] = q.theta;
    report.parameters["qubus_alpha"] = q.qubus_alpha;
    report.settings["variant"] = to_string(variant);
    report.settings["meas_mode"] = to_string(q.mode);
    return report;
}

SchemeReport entangler(const PhotonicState& s, const stages::EntanglerWiring& wiring, const QubusSettings& q, int cap) {
    auto branches = stages::entangler_branches(s, wiring, q, 1000, cap);
    const auto target = stages::entangler_target(s, wiring);
    CircuitRun run;
    double deterministic = 0.0;
    for (const auto& o : branches.corrected.outcomes) {
        if (o.probability > 0.0 && fidelity(o.state, target) >= 1.0 - 1e-10) deterministic += o.probability;
    }
    run.diagnostics["fidelity_one_weight"] = deterministic;
    run.take("qubus number readout",
             merge_outcomes(branches.corrected, "n=0.." + std::to_string(branches.corrected.outcomes.size() - 1)));
    auto report = detail::finish_report("entangler", std::move(run), target);
    report.parameters["theta"] = q.theta;
    report.parameters["qubus_alpha"] = q.qubus_alpha;
    report.settings["meas_mode"] = to_string(q.mode);
    report.parameters["cap"] = static_cast<double>(branches.corrected.outcomes.size() - 1);
    return report;
}

SchemeReport scheme_kerr_inverse(const QutritCoefficients& c, const QubusSettings& q) {
    c.validate();
    auto run = stages::kerr_inverse(make_spatial_qutrit(c, kInverseInputs, H), q);
    auto report = detail::finish_report("kerr-inverse", std::move(run), make_biphotonic_qutrit(c, "out"));
    report.parameters["theta"] = q.theta;
    report.parameters["qubus_alpha"] = q.qubus_alpha;
    report.settings["meas_mode"] = to_string(q.mode);
    return report;
}

} // namespace biphoton
