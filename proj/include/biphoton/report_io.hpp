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

/**
 * @file report_io.hpp
 * @brief Run configuration, scheme dispatch and report serialization.
 *
 * Single runs serialize to JSON (see docs/report-schema.json), sweeps to
 * CSV. Every decimal is written with 12 significant digits.
 */

#pragma once

#include "biphoton/sampling.hpp"
#include "biphoton/schemes.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace biphoton {

inline constexpr std::uint64_t kDefaultSeed = 20260415;

/// Explicit coefficients closer than this to unit norm are renormalized.
inline constexpr double kConfigNormalizationTolerance = 1e-6;

enum class ReportFormat { kJson, kCsv };

/// Names accepted by RunConfig::scheme.
const std::vector<std::string>& scheme_names();

struct RunConfig {
    std::string scheme = "kerr-forward";
    /// Unset means "draw a random qutrit from the seed".
    std::optional<std::array<Complex, 3>> qutrit;
    std::uint64_t seed = kDefaultSeed;

    /// Forward transmissivity; unset picks the balanced value of the backend.
    std::optional<double> t;
    double t1 = balanced_parameters::linear_inverse().t1;
    double t2 = balanced_parameters::linear_inverse().t2;
    double t3 = balanced_parameters::linear_inverse().t3;
    double theta = QubusSettings{}.theta;
    double qubus_alpha = QubusSettings{}.qubus_alpha;
    KerrVariant variant = KerrVariant::kSeparateQnd;
    MeasurementMode meas_mode = MeasurementMode::kIdeal;
    Backend backend = Backend::kKerr;

    /// u3 only. Unset means the identity.
    std::optional<Eigen::Matrix3cd> matrix;
    bool random_matrix = false;

    ReportFormat format = ReportFormat::kJson;
    /// Empty writes to stdout.
    std::string out;
};

/// Sets one named parameter from text ("t", "t1", "t2", "t3", "theta",
/// "qubus_alpha", "variant", "meas_mode", "backend").
void set_parameter(RunConfig& config, const std::string& key, const std::string& value);

/// Names that set_parameter and sweeps accept for numeric values. Sweeps
/// additionally accept "alpha_theta", which sets qubus_alpha = v / theta.
const std::vector<std::string>& numeric_parameters();

/// "0.5", "0.5,-0.1" (re,im) or a JSON-style pair handled by the config reader.
Complex parse_complex(const std::string& text);

/// Strict decimal parse; InvalidInput on trailing junk or non-finite values.
double parse_double(const std::string& text);

/// 3x3 matrix as a JSON array of rows; entries are numbers or [re, im].
Eigen::Matrix3cd matrix_from_json(const nlohmann::json& j);
Eigen::Matrix3cd read_matrix_file(const std::string& path);
nlohmann::json matrix_to_json(const Eigen::Matrix3cd& m);

/// Config files mirror the command-line flags.
RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& config);

struct RunResult {
    RunConfig config;
    QutritCoefficients input;
    std::optional<Unitary3> unitary;
    SchemeReport report;
};

/// Draws any random inputs from the seed (qutrit first, then matrix) and
/// runs the named scheme.
RunResult execute(const RunConfig& config);

nlohmann::json to_json(const RunResult& result);
nlohmann::json to_json(const PhotonicState& s);

/// Serialized report in the configured format, newline-terminated.
std::string render(const RunResult& result);

struct SweepRow {
    double value = 0.0;
    double success_probability = 0.0;
    double output_fidelity = 0.0;
};

/// One run per value, fanned out over worker threads; rows come back in
/// value order. InvalidInput for an empty list or an unknown axis.
std::vector<SweepRow> run_sweep(const RunConfig& base, const std::string& axis, const std::vector<double>& values);

/// Header "<axis>,success_probability,output_fidelity" then one line per row.
std::string sweep_csv(const std::string& axis, const std::vector<SweepRow>& rows);

/// 12 significant digits.
std::string format_decimal(double v);
/// Rounds to 12 significant digits so JSON output stays short and stable.
double round_decimal(double v);

} // namespace biphoton
