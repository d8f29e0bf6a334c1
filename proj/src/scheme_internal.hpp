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

#pragma once

#include "biphoton/schemes.hpp"

#include <string>

namespace biphoton::detail {

/// Fills probability, fidelity and log from a finished run.
SchemeReport finish_report(std::string scheme, CircuitRun run, const PhotonicState& target);

/// Throws InvalidInput unless 0 < x < 1.
void require_open_unit(double x, const char* name);

/// Throws InvalidInput unless the qubus settings are usable.
void validate_qubus(const QubusSettings& q);

/// Convenience for path-wide detectors.
Detector path_detector(const std::string& label, const std::string& path);

} // namespace biphoton::detail
