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

#include "biphoton/sampling.hpp"

#include "biphoton/errors.hpp"

#include <cmath>

namespace biphoton {

namespace {

Complex gaussian(Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    const double re = n(rng);
    const double im = n(rng);
    return {re / std::sqrt(2.0), im / std::sqrt(2.0)};
}

} // namespace

QutritCoefficients random_qutrit(Rng& rng) {
    for (;;) {
        const Complex a = gaussian(rng);
        const Complex b = gaussian(rng);
        const Complex c = gaussian(rng);
        if (std::norm(a) + std::norm(b) + std::norm(c) > 1e-300) return QutritCoefficients::normalized(a, b, c);
    }
}

Eigen::MatrixXcd haar_unitary(int d, Rng& rng) {
    if (d < 1) throw InvalidInput("unitary dimension must be positive");
    Eigen::MatrixXcd z(d, d);
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) z(i, j) = gaussian(rng);
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < d; ++k) {
        const double mag = std::abs(r(k, k));
        const Complex phase = mag > 0.0 ? r(k, k) / mag : Complex{1.0, 0.0};
        q.col(k) *= phase;
    }
    return q;
}

Unitary3 haar_unitary3(Rng& rng) { return Unitary3::from_matrix(haar_unitary(3, rng)); }

} // namespace biphoton
