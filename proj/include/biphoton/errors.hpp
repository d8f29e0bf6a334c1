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

#include <stdexcept>
#include <string>

namespace biphoton {

/// Bad arguments: non-normalized coefficients, unphysical splitter
/// parameters, unknown registers, mismatched register counts.
class InvalidInput : public std::invalid_argument {
  public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// A circuit was wired inconsistently (colliding outputs, photon cap
/// exceeded, corrections aimed at paths that are not part of the circuit).
class WiringError : public std::logic_error {
  public:
    explicit WiringError(const std::string& what) : std::logic_error(what) {}
};

/// The requested model is not implemented (e.g. physical homodyne statistics).
class Unsupported : public std::runtime_error {
  public:
    explicit Unsupported(const std::string& what) : std::runtime_error(what) {}
};

} // namespace biphoton
