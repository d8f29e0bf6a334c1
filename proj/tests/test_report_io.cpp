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
#include "biphoton/report_io.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

using namespace biphoton;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

TEST_CASE("defaults are the balanced parameters", "[io]") {
    const RunConfig c;
    CHECK(c.scheme == "kerr-forward");
    CHECK_FALSE(c.t.has_value());
    CHECK(c.t1 == balanced_parameters::linear_inverse().t1);
    CHECK(c.t3 == balanced_parameters::linear_inverse().t3);
    CHECK(c.meas_mode == MeasurementMode::kIdeal);
}

TEST_CASE("config JSON round-trips", "[io]") {
    RunConfig c;
    c.scheme = "u3";
    c.qutrit = std::array<Complex, 3>{Complex{0.6, 0.0}, Complex{0.0, 0.8}, Complex{0.0, 0.0}};
    c.seed = 99;
    c.t = 0.5;
    c.theta = 0.2;
    c.variant = KerrVariant::kDoubleXpm;
    c.backend = Backend::kLinear;
    c.random_matrix = true;
    c.format = ReportFormat::kCsv;
    c.out = "x.csv";
    const auto j = to_json(c);
    const auto back = run_config_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(back.seed == 99);
    CHECK(back.t == 0.5);
    CHECK(back.variant == KerrVariant::kDoubleXpm);
    CHECK(back.random_matrix);

    RunConfig m;
    m.scheme = "u3";
    m.matrix = Eigen::Matrix3cd::Identity();
    CHECK(to_json(run_config_from_json(to_json(m))) == to_json(m));
}

TEST_CASE("config errors are reported as invalid input", "[io]") {
    CHECK_THROWS_AS(run_config_from_json(nlohmann::json::parse(R"({"bogus": 1})")), InvalidInput);
    CHECK_THROWS_AS(run_config_from_json(nlohmann::json::parse(R"({"params": {"t9": 1}})")), InvalidInput);
    CHECK_THROWS_AS(run_config_from_json(nlohmann::json::parse(R"({"seed": "abc"})")), InvalidInput);
    CHECK_THROWS_AS(run_config_from_json(nlohmann::json::parse(R"({"alpha": 1, "random": true})")), InvalidInput);
    CHECK_THROWS_AS(run_config_from_json(nlohmann::json::parse(R"({"matrix": [[1, 0], [0, 1]]})")), InvalidInput);
    CHECK_THROWS_AS(run_config_from_json(nlohmann::json::parse(R"({"params": {"variant": "triple"}})")), InvalidInput);
    CHECK_THROWS_AS(run_config_from_json(nlohmann::json::parse("[1, 2]")), InvalidInput);
}

TEST_CASE("number parsing is strict", "[io]") {
    CHECK(parse_double(" 0.25 ") == 0.25);
    CHECK_THROWS_AS(parse_double("0.25x"), InvalidInput);
    CHECK_THROWS_AS(parse_double(""), InvalidInput);
    CHECK_THROWS_AS(parse_double("nan"), InvalidInput);
    CHECK(parse_complex("0.5,-0.25") == Complex{0.5, -0.25});
    CHECK(parse_complex("-1") == Complex{-1.0, 0.0});
}

TEST_CASE("parameters set by name", "[io]") {
    RunConfig c;
    set_parameter(c, "t", "0.3");
    set_parameter(c, "meas_mode", "physical");
    set_parameter(c, "backend", "linear");
    set_parameter(c, "theta", "0.1");
    set_parameter(c, "alpha_theta", "2");
    CHECK(c.t == 0.3);
    CHECK(c.meas_mode == MeasurementMode::kPhysical);
    CHECK(c.backend == Backend::kLinear);
    CHECK_THAT(c.qubus_alpha, WithinAbs(20.0, 1e-12));
    CHECK_THROWS_AS(set_parameter(c, "colour", "red"), InvalidInput);
    CHECK_THROWS_AS(set_parameter(c, "t", "lots"), InvalidInput);
}

TEST_CASE("execute: default kerr-forward run", "[io]") {
    const auto r = execute(RunConfig{});
    CHECK_THAT(r.report.success_probability, WithinAbs(1.0 / 6.0, 1e-10));
    const auto text = render(r);
    CHECK_THAT(text, ContainsSubstring("\"success_probability\": 0.166666666667"));
    CHECK_THAT(text, ContainsSubstring("\"seed\": 20260415"));
}

TEST_CASE("execute is deterministic in the seed", "[io]") {
    RunConfig c;
    c.scheme = "u3";
    c.random_matrix = true;
    c.seed = 7;
    CHECK(render(execute(c)) == render(execute(c)));
    RunConfig d = c;
    d.seed = 8;
    CHECK(render(execute(c)) != render(execute(d)));
}

TEST_CASE("explicit coefficients must be normalized", "[io]") {
    RunConfig c;
    c.qutrit = std::array<Complex, 3>{Complex{1.0, 0.0}, Complex{1.0, 0.0}, Complex{0.0, 0.0}};
    CHECK_THROWS_AS(execute(c), InvalidInput);
    c.qutrit = std::array<Complex, 3>{Complex{0.6, 0.0}, Complex{0.8000001, 0.0}, Complex{0.0, 0.0}};
    CHECK_NOTHROW(execute(c));
}

TEST_CASE("matrix only for u3, must be unitary", "[io]") {
    RunConfig c;
    c.random_matrix = true;
    CHECK_THROWS_AS(execute(c), InvalidInput);
    c.scheme = "u3";
    c.random_matrix = false;
    c.matrix = 2.0 * Eigen::Matrix3cd::Identity();
    CHECK_THROWS_AS(execute(c), InvalidInput);
    c.scheme = "no-such-scheme";
    CHECK_THROWS_AS(execute(c), InvalidInput);
}

TEST_CASE("forward t override reaches the linear scheme", "[io]") {
    RunConfig c;
    c.scheme = "linear-forward";
    set_parameter(c, "t", std::to_string(std::sqrt(0.5)));
    CHECK(execute(c).report.output_fidelity < 1.0 - 1e-3);
}

TEST_CASE("CSV single-run report", "[io]") {
    RunConfig c;
    c.format = ReportFormat::kCsv;
    const auto text = render(execute(c));
    std::istringstream in(text);
    std::string header;
    std::string row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "scheme,seed,success_probability,output_fidelity,logged_probability");
    CHECK(row == "kerr-forward,20260415,0.166666666667,1,0.166666666667");
}

TEST_CASE("sweeps keep value order and size", "[io]") {
    RunConfig c;
    const std::vector<double> values{0.9, 0.1, 0.5};
    const auto rows = run_sweep(c, "theta", values);
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(rows[i].value == values[i]);
    const auto csv = sweep_csv("theta", rows);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(csv.rfind("theta,success_probability,output_fidelity\n", 0) == 0);

    CHECK_THROWS_AS(run_sweep(c, "theta", {}), InvalidInput);
    CHECK_THROWS_AS(run_sweep(c, "variant", {1.0}), InvalidInput);
}

TEST_CASE("single-value sweep matches a run", "[io]") {
    RunConfig c;
    c.scheme = "linear-forward";
    const double t = balanced_parameters::linear_forward_t();
    const auto rows = run_sweep(c, "t", {t});
    c.t = t;
    const auto r = execute(c);
    CHECK(rows[0].success_probability == r.report.success_probability);
    CHECK(rows[0].output_fidelity == r.report.output_fidelity);
}

TEST_CASE("physical-mode sweep improves with |alpha| theta", "[io]") {
    RunConfig c;
    set_parameter(c, "variant", "double-xpm");
    set_parameter(c, "meas_mode", "physical");
    set_parameter(c, "theta", "0.1");
    const auto rows = run_sweep(c, "alpha_theta", {0.5, 1.0, 2.0, 4.0});
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].output_fidelity > rows[i - 1].output_fidelity);
}

TEST_CASE("decimals carry 12 significant digits", "[io]") {
    CHECK(format_decimal(1.0 / 3.0) == "0.333333333333");
    CHECK(format_decimal(1.17e-4) == "0.000117");
    CHECK(round_decimal(2.0 / 3.0) == 0.666666666667);
}
