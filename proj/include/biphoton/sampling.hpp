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

#include "biphoton/fock.hpp"
#include "biphoton/optics.hpp"

#include <cstdint>
#include <random>

namespace biphoton {

/// Every random draw in the library comes from one of these, seeded once.
using Rng = std::mt19937_64;

/// Uniform on the unit sphere of C^3 (normalized complex Gaussians).
QutritCoefficients random_qutrit(Rng& rng);

/// Haar-distributed U(3): QR of a complex Gaussian matrix with the
/// diagonal phases of R divided out.
Unitary3 haar_unitary3(Rng& rng);

/// Haar-distributed U(d), same construction.
Eigen::MatrixXcd haar_unitary(int d, Rng& rng);

} // namespace biphoton
