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
 * @file measurement.hpp
 * @brief Photon detectors, post-selection and classical feed-forward.
 *
 * Detection is destructive: detected photons are moved out of the optical
 * modes into the term's measurement record, so later elements never see
 * them but interference between different detection events is still
 * suppressed correctly.
 *
 * All probabilities reported here are conditional on the input state; the
 * returned states are normalized and their born weight is multiplied by
 * the probability.
 */

#pragma once

#include "biphoton/fock.hpp"
#include "biphoton/optics.hpp"

#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace biphoton {

struct BranchOutcome {
    std::string label;
    double probability = 0.0;
    PhotonicState state;
    /// Numeric outcome where one exists (photon number, quadrature value).
    double value = std::numeric_limits<double>::quiet_NaN();
};

struct BranchDistribution {
    std::vector<BranchOutcome> outcomes;

    double total_probability() const noexcept;
    /// InvalidInput if no outcome carries `label`.
    const BranchOutcome& at(const std::string& label) const;
    bool contains(const std::string& label) const noexcept;
};

/// Photon-number non-resolving detector watching a set of modes.
struct Detector {
    std::string label;
    std::vector<ModeId> modes;

    /// Watches both polarizations of `path`.
    static Detector on_path(std::string label, const std::string& path);
};

enum class Click { kClick, kNoClick };

struct DetectorRequirement {
    Detector detector;
    Click required = Click::kClick;
};

/// Outcome of a post-selection: the conditional probability and the state.
struct Selection {
    double probability = 0.0;
    PhotonicState state;
};

/// Two outcomes, "click" then "no-click". A zero-probability outcome carries
/// the vacuum with born weight 0.
BranchDistribution detect_non_resolving(const PhotonicState& s, const Detector& d);

/// Joint pattern over disjoint detectors (WiringError if two share a mode).
Selection post_select_coincidence(const PhotonicState& s, const std::vector<DetectorRequirement>& pattern);

/// Keeps terms with exactly `count` photons on `paths`; nothing is absorbed.
Selection post_select_photon_count(const PhotonicState& s, const std::vector<std::string>& paths, int count);

/// Resolves which single detector of a set fired, with exactly one click
/// among them; one outcome per detector labelled by the detector label.
BranchDistribution detect_which(const PhotonicState& s, const std::vector<Detector>& detectors);

struct Correction {
    OpticalTarget target;
    SingleModeOp op;
};

struct FeedForwardRule {
    std::map<std::string, std::vector<Correction>> corrections;
    /// Paths the corrections may touch. Empty means "any path carrying
    /// photons in some outcome".
    std::set<std::string> circuit_paths;
};

/// InvalidInput for outcome labels absent from `b`; WiringError for targets
/// outside the circuit.
BranchDistribution apply_feed_forward(const BranchDistribution& b, const FeedForwardRule& rule);

/**
 * Combines the outcomes of `b` into one branch. Each outcome is tagged with
 * its label so that inequivalent outcomes stay an incoherent mixture; when
 * all outcomes describe the same state up to phase the tags are dropped.
 * The result is normalized and its probability is the sum of the inputs.
 */
BranchOutcome merge_outcomes(const BranchDistribution& b, const std::string& label);

/// Zero-probability placeholder used for empty branches.
PhotonicState empty_branch_state(const PhotonicState& like);

} // namespace biphoton
