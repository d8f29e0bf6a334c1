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
 * @file schemes.hpp
 * @brief The qutrit conversion circuits, wired from the element layer.
 *
 * Conversions between a polarization-encoded bi-photonic qutrit
 *     (a/sqrt2) aH^2 + b aH aV + (c/sqrt2) aV^2
 * on one path and a single photon spread over three paths, in both
 * directions, built either from linear optics with post-selection or with
 * weak cross-Kerr couplings to coherent "qubus" beams.
 *
 * Every circuit returns a SchemeReport whose success probability is the
 * product of the conditional probabilities in its branch log.
 */

#pragma once

#include "biphoton/fock.hpp"
#include "biphoton/measurement.hpp"
#include "biphoton/optics.hpp"
#include "biphoton/qubus.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace biphoton {

struct BranchLogEntry {
    std::string step;
    std::string outcome;
    /// Conditional on all earlier entries.
    double probability = 0.0;
};

struct SchemeReport {
    std::string scheme;
    double success_probability = 0.0;
    double output_fidelity = 0.0;
    PhotonicState output_state;
    PhotonicState target_state;
    std::vector<BranchLogEntry> branch_log;
    std::map<std::string, double> parameters;
    std::map<std::string, std::string> settings;
    /// Extra numbers that are not part of the success path (discarded
    /// branches, leakage, ...).
    std::map<std::string, double> diagnostics;

    double logged_probability() const noexcept;
};

/// Parameter solutions that equalize the three branch weights.
namespace balanced_parameters {
/// t^2 = 2 sqrt2 / (1 + 2 sqrt2).
double linear_forward_t();
struct LinearInverse {
    double t1, t2, t3;
};
/// t1^2 = (sqrt17 - 3)/2, t1 t2 = r1, t3^2 = (5 - sqrt17)/4.
LinearInverse linear_inverse();
/// t = 1/sqrt3.
double kerr_forward_t();
/// (t^2 / (4 sqrt2))^2 at the balanced t, i.e. 1/(2 + 4 sqrt2)^2.
double linear_forward_probability();
/// (r1/8)^2 = (5 - sqrt17)/128.
double linear_inverse_probability();
} // namespace balanced_parameters

struct QubusSettings {
    double qubus_alpha = 2.0;
    double theta = 0.3;
    MeasurementMode mode = MeasurementMode::kIdeal;
};

enum class KerrVariant { kSeparateQnd, kDoubleXpm };

/// Mutable bookkeeping for one circuit run.
struct CircuitRun {
    PhotonicState state;
    std::vector<BranchLogEntry> log;
    std::map<std::string, double> diagnostics;

    void select(const std::string& step, const std::string& outcome, const Selection& s);
    void take(const std::string& step, const BranchOutcome& o);
    double probability() const noexcept;
};

// Intermediate stages, exposed so each step can be checked separately.
namespace stages {

/// Linear forward map up to (and including) the ancilla interference and
/// the 4/5 splitters, before any detection. Input on path "in".
PhotonicState linear_forward_interference(const PhotonicState& biphoton, double t);

/// Linear forward map up to the path eraser: `run` holds the log so far,
/// `corrected` the three eraser outcomes after their phase corrections.
struct EraserBranches {
    CircuitRun run;
    BranchDistribution corrected;
};
EraserBranches linear_forward_eraser(const PhotonicState& biphoton, double t);

/// Linear forward map from a bi-photonic qutrit on "in" to one photon on
/// paths {"6", "3", "7"} (H polarized).
CircuitRun linear_forward(const PhotonicState& biphoton, double t);

/// Three splitters plus sigma_x that spread a spatial qutrit on {"0'",
/// "1'", "2'"} over paths 1, 2 (H) and 3 (V).
PhotonicState linear_inverse_spread(const PhotonicState& spatial, double t1, double t2, double t3);

/// Linear inverse map to a bi-photonic qutrit on path "out".
CircuitRun linear_inverse(const PhotonicState& spatial, double t1, double t2, double t3);

/// Kerr forward map from "in" to one H photon on {"5", "6", "7"}.
CircuitRun kerr_forward(const PhotonicState& biphoton, double t, KerrVariant variant, const QubusSettings& q,
                        int first_register = 1);

struct EntanglerWiring {
    /// Modes that must pair with an H-polarized ancilla.
    std::vector<ModeId> h_type;
    /// Modes that must pair with a V-polarized ancilla.
    std::vector<ModeId> v_type;
    std::string ancilla;
};

/// Per-outcome branches of the parity entangler, corrected and with the
/// second register released where possible.
struct EntanglerBranches {
    BranchDistribution raw;
    BranchDistribution corrected;
};

/// Cap value asking the entangler to size its readout from the register.
inline constexpr int kAutoCutoff = -1;

/// Adds a |+> ancilla on `wiring.ancilla` and runs the two-register parity
/// check with photon-number readout n = 0..cap of the first register.
EntanglerBranches entangler_branches(const PhotonicState& s, const EntanglerWiring& wiring, const QubusSettings& q,
                                     int first_register, int cap = kAutoCutoff);

/// Ideal entangler output computed directly: the component of s (x) |+>
/// in which the ancilla polarization matches the parity pattern.
PhotonicState entangler_target(const PhotonicState& s, const EntanglerWiring& wiring);

/// Kerr inverse map from one H photon on {"0", "1", "2"} to a bi-photonic
/// qutrit on "out".
CircuitRun kerr_inverse(const PhotonicState& spatial, const QubusSettings& q, int first_register = 11);

} // namespace stages

SchemeReport scheme_linear_forward(const QutritCoefficients& c, double t = balanced_parameters::linear_forward_t());

SchemeReport scheme_linear_inverse(const QutritCoefficients& c, double t1 = balanced_parameters::linear_inverse().t1,
                                   double t2 = balanced_parameters::linear_inverse().t2,
                                   double t3 = balanced_parameters::linear_inverse().t3);

SchemeReport scheme_kerr_forward(const QutritCoefficients& c, double t = balanced_parameters::kerr_forward_t(),
                                 KerrVariant variant = KerrVariant::kSeparateQnd, const QubusSettings& q = {});

/// The entangler on its own. The report's output is the merged corrected
/// state; the fidelity is against entangler_target.
SchemeReport entangler(const PhotonicState& s, const stages::EntanglerWiring& wiring, const QubusSettings& q = {},
                       int cap = stages::kAutoCutoff);

SchemeReport scheme_kerr_inverse(const QutritCoefficients& c, const QubusSettings& q = {});

enum class Backend { kLinear, kKerr };

struct U3Options {
    Backend backend = Backend::kKerr;
    double linear_t = balanced_parameters::linear_forward_t();
    balanced_parameters::LinearInverse linear_inverse = balanced_parameters::linear_inverse();
    double kerr_t = balanced_parameters::kerr_forward_t();
    KerrVariant variant = KerrVariant::kSeparateQnd;
    QubusSettings qubus;
};

/// Forward map, interferometer for u, inverse map.
SchemeReport u3_biphotonic(const QutritCoefficients& c, const Unitary3& u, const U3Options& options = {});

std::string to_string(KerrVariant v);
std::string to_string(MeasurementMode m);
std::string to_string(Backend b);
KerrVariant parse_variant(const std::string& s);
MeasurementMode parse_measurement_mode(const std::string& s);
Backend parse_backend(const std::string& s);

} // namespace biphoton
