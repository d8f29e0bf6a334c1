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

namespace biphoton {

namespace {

void append(CircuitRun& into, const CircuitRun& stage, const std::string& prefix) {
    for (auto e : stage.log) {
        e.step = prefix + e.step;
        into.log.push_back(std::move(e));
    }
    for (const auto& [k, v] : stage.diagnostics) into.diagnostics[prefix + k] = v;
    into.state = stage.state;
}

} // namespace

SchemeReport u3_biphotonic(const QutritCoefficients& c, const Unitary3& u, const U3Options& options) {
    c.validate();
    const auto input = make_biphotonic_qutrit(c, "in");
    const auto lomi = reck_decompose(u);
    const std::array<std::string, 3> spatial{"s0", "s1", "s2"};

    CircuitRun run;
    if (options.backend == Backend::kLinear) {
        append(run, stages::linear_forward(input, options.linear_t), "forward: ");
        run.state = relabel_paths(run.state, {{"6", "s0"}, {"3", "s1"}, {"7", "s2"}});
        run.state = apply_lomi(run.state, lomi, spatial);
        run.state = relabel_paths(run.state, {{"s0", "0'"}, {"s1", "1'"}, {"s2", "2'"}});
        const auto& p = options.linear_inverse;
        append(run, stages::linear_inverse(run.state, p.t1, p.t2, p.t3), "inverse: ");
    } else {
        append(run, stages::kerr_forward(input, options.kerr_t, options.variant, options.qubus, 1), "forward: ");
        run.state = relabel_paths(run.state, {{"5", "s0"}, {"6", "s1"}, {"7", "s2"}});
        run.state = apply_lomi(run.state, lomi, spatial);
        run.state = relabel_paths(run.state, {{"s0", "0"}, {"s1", "1"}, {"s2", "2"}});
        append(run, stages::kerr_inverse(run.state, options.qubus, 11), "inverse: ");
    }

    const auto mapped = u.apply({c.alpha, c.beta, c.gamma});
    const auto target_c = QutritCoefficients::normalized(mapped[0], mapped[1], mapped[2]);
    auto report = detail::finish_report("u3", std::move(run), make_biphotonic_qutrit(target_c, "out"));
    report.settings["backend"] = to_string(options.backend);
    if (options.backend == Backend::kLinear) {
        report.parameters["t"] = options.linear_t;
        report.parameters["t1"] = options.linear_inverse.t1;
        report.parameters["t2"] = options.linear_inverse.t2;
        report.parameters["t3"] = options.linear_inverse.t3;
    } else {
        report.parameters["t"] = options.kerr_t;
        report.parameters["theta"] = options.qubus.theta;
        report.parameters["qubus_alpha"] = options.qubus.qubus_alpha;
        report.settings["variant"] = to_string(options.variant);
        report.settings["meas_mode"] = to_string(options.qubus.mode);
    }
    return report;
}

} // namespace biphoton
