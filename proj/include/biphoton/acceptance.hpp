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
 * @file acceptance.hpp
 * @brief The pass/fail suite behind `verify` and the acceptance test.
 */

#pragma once

#include "biphoton/schemes.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace biphoton {

/// Everything the suite feeds into the schemes. Defaults are the balanced
/// parameter solutions; changing one is how the suite's sensitivity is
/// checked.
struct AcceptanceOptions {
    std::uint64_t seed = 20260415;
    int samples = 50;
    double linear_forward_t = balanced_parameters::linear_forward_t();
    balanced_parameters::LinearInverse linear_inverse = balanced_parameters::linear_inverse();
    double kerr_forward_t = balanced_parameters::kerr_forward_t();
    QubusSettings qubus{};
};

struct CriterionResult {
    std::string id;
    std::string title;
    std::string expected;
    std::string measured;
    bool passed = false;
    double seconds = 0.0;
};

struct AcceptanceSummary {
    std::vector<CriterionResult> criteria;
    double seconds = 0.0;

    bool all_passed() const noexcept;
};

AcceptanceSummary run_acceptance(const AcceptanceOptions& options = {});

/// "[PASS] C1 title | expected ... | measured ... (0.12 s)"
std::string format_line(const CriterionResult& c);

nlohmann::json to_json(const AcceptanceSummary& s);

} // namespace biphoton
