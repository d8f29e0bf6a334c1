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

namespace biphoton {

double SchemeReport::logged_probability() const noexcept {
    double p = 1.0;
    for (const auto& e : branch_log) p *= e.probability;
    return p;
}

namespace balanced_parameters {

double linear_forward_t() {
    const double s = 2.0 * std::sqrt(2.0);
    return std::sqrt(s / (1.0 + s));
}

LinearInverse linear_inverse() {
    const double s17 = std::sqrt(17.0);
    const double t1 = std::sqrt((s17 - 3.0) / 2.0);
    const double r1 = std::sqrt((5.0 - s17) / 2.0);
    return {t1, r1 / t1, std::sqrt((5.0 - s17) / 4.0)};
}

double kerr_forward_t() { return 1.0 / std::sqrt(3.0); }

double linear_forward_probability() {
    const double d = 2.0 + 4.0 * std::sqrt(2.0);
    return 1.0 / (d * d);
}

double linear_inverse_probability() { return (5.0 - std::sqrt(17.0)) / 128.0; }

} // namespace balanced_parameters

void CircuitRun::select(const std::string& step, const std::string& outcome, const Selection& s) {
    log.push_back({step, outcome, s.probability});
    state = s.state;
}

void CircuitRun::take(const std::string& step, const BranchOutcome& o) {
    log.push_back({step, o.label, o.probability});
    state = o.state;
}

double CircuitRun::probability() const noexcept {
    double p = 1.0;
    for (const auto& e : log) p *= e.probability;
    return p;
}

std::string to_string(KerrVariant v) { return v == KerrVariant::kSeparateQnd ? "separate-qnd" : "double-xpm"; }

std::string to_string(MeasurementMode m) { return m == MeasurementMode::kIdeal ? "ideal" : "physical"; }

std::string to_string(Backend b) { return b == Backend::kLinear ? "linear" : "kerr"; }

KerrVariant parse_variant(const std::string& s) {
    if (s == "separate-qnd") return KerrVariant::kSeparateQnd;
    if (s == "double-xpm") return KerrVariant::kDoubleXpm;
    throw InvalidInput("unknown variant '" + s + "' (expected separate-qnd or double-xpm)");
}

MeasurementMode parse_measurement_mode(const std::string& s) {
    if (s == "ideal") return MeasurementMode::kIdeal;
    if (s == "physical") return MeasurementMode::kPhysical;
    throw InvalidInput("unknown measurement mode '" + s + "' (expected ideal or physical)");
}

Backend parse_backend(const std::string& s) {
    if (s == "linear") return Backend::kLinear;
    if (s == "kerr") return Backend::kKerr;
    throw InvalidInput("unknown backend '" + s + "' (expected linear or kerr)");
}

namespace detail {

SchemeReport finish_report(std::string scheme, CircuitRun run, const PhotonicState& target) {
    SchemeReport r;
    r.scheme = std::move(scheme);
    r.branch_log = std::move(run.log);
    r.diagnostics = std::move(run.diagnostics);
    r.success_probability = r.logged_probability();
    r.output_state = std::move(run.state);
    r.target_state = target;
    const bool empty = r.success_probability <= 0.0 || r.output_state.born_weight() <= 0.0;
    r.output_fidelity = empty ? 0.0 : fidelity(r.output_state, target);
    return r;
}

void require_open_unit(double x, const char* name) {
    if (!(x > 0.0 && x < 1.0)) throw InvalidInput(std::string(name) + " must lie strictly between 0 and 1");
}

void validate_qubus(const QubusSettings& q) {
    if (!std::isfinite(q.qubus_alpha) || q.qubus_alpha <= 0.0) throw InvalidInput("qubus amplitude must be positive");
    if (!std::isfinite(q.theta) || q.theta <= 0.0) throw InvalidInput("XPM phase theta must be positive");
}

Detector path_detector(const std::string& label, const std::string& path) { return Detector::on_path(label, path); }

} // namespace detail

} // namespace biphoton
