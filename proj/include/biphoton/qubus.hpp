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
 * @file qubus.hpp
 * @brief Coherent-state registers and cross-phase-modulation couplings.
 *
 * A register is stored per term as a complex coherent amplitude. XPM only
 * rotates these amplitudes and the coherent elements are linear in them,
 * so no truncation is needed until a register is measured.
 *
 * Measurement modes:
 *   ideal    - coherent states with different amplitudes are treated as
 *              perfectly distinguishable (the |alpha| theta >> 1 limit);
 *   physical - true overlaps <n|beta> are used, leakage included.
 */

#pragma once

#include "biphoton/fock.hpp"
#include "biphoton/measurement.hpp"

#include <span>
#include <variant>
#include <vector>

namespace biphoton {

inline constexpr int kNumberCutoff = 25;

struct CoherentRegisterSpec {
    int id = 0;
    Complex alpha0{0.0, 0.0};
};

/// Appends registers to every term, each in its initial amplitude.
PhotonicState add_registers(const PhotonicState& s, std::span<const CoherentRegisterSpec> registers);

struct XpmCoupling {
    int register_id = 0;
    std::vector<ModeId> modes;
    double theta = 0.0;
};

/// Register amplitude *= exp(i n theta), n = photons in the coupled modes.
PhotonicState apply_xpm(const PhotonicState& s, const XpmCoupling& c);

struct CoherentPhase {
    int register_id = 0;
    double phi = 0.0;
};
/// (a1, a2) -> ((a1 - a2)/sqrt2, (a1 + a2)/sqrt2).
struct CoherentBalancedSplitter {
    int first = 0;
    int second = 1;
};
using CoherentElement = std::variant<CoherentPhase, CoherentBalancedSplitter>;

PhotonicState apply_coherent_element(const PhotonicState& s, const CoherentElement& e);

/// <n|beta> = exp(-|beta|^2/2) beta^n / sqrt(n!).
Complex coherent_number_overlap(Complex beta, int n);

enum class MeasurementMode { kIdeal, kPhysical };

/// Single outcome "n=<n>"; the measured register is removed from the state.
BranchDistribution project_photon_number(const PhotonicState& s, int register_id, int n, MeasurementMode mode);

/// Outcomes n = 0..cap in order.
BranchDistribution measure_photon_number(const PhotonicState& s, int register_id, int cap, MeasurementMode mode);

/// Smallest cap >= kNumberCutoff for which the photon-number tail above
/// the cap is below `tail` for every amplitude the register takes.
int number_cutoff_for(const PhotonicState& s, int register_id, double tail = 1e-14);

/// Ideal homodyne: one outcome per distinct Re(amplitude), ascending.
/// Physical mode throws Unsupported.
BranchDistribution project_quadrature_x(const PhotonicState& s, int register_id, MeasurementMode mode);

/// Removes a register that carries the same amplitude in every term
/// (InvalidInput otherwise).
PhotonicState release_register(const PhotonicState& s, int register_id);

/// release_register when possible, otherwise the state unchanged.
PhotonicState release_register_if_uniform(const PhotonicState& s, int register_id);

} // namespace biphoton
