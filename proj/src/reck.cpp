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
#include "biphoton/optics.hpp"

#include <cmath>

namespace biphoton {

Eigen::Matrix3cd TwoModeRotation::embedded() const {
    if (p < 0 || p > 2 || q < 0 || q > 2 || p == q) throw InvalidInput("rotation needs two distinct modes in 0..2");
    Eigen::Matrix3cd m = Eigen::Matrix3cd::Identity();
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Complex e = std::polar(1.0, phi);
    m(p, p) = e * c;
    m(p, q) = -s;
    m(q, p) = e * s;
    m(q, q) = c;
    return m;
}

Eigen::Matrix3cd ReckDecomposition::recompose() const {
    Eigen::Matrix3cd u = Eigen::Matrix3cd::Identity();
    for (const auto& r : rotations) u = r.embedded() * u;
    Eigen::Matrix3cd d = Eigen::Matrix3cd::Zero();
    for (int k = 0; k < 3; ++k) d(k, k) = std::polar(1.0, output_phases[k]);
    return d * u;
}

ReckDecomposition reck_decompose(const Unitary3& u) {
    // Null the lower triangle row by row from the bottom, multiplying on the
    // right by inverse rotations: U G1 G2 G3 = D, hence U = D R3 R2 R1.
    Eigen::Matrix3cd m = u.matrix();
    ReckDecomposition out;
    constexpr int kSteps[3][3] = {{2, 0, 1}, {2, 1, 2}, {1, 0, 1}}; // row, p, q
    for (const auto& step : kSteps) {
        const int row = step[0];
        const int p = step[1];
        const int q = step[2];
        const Complex a = m(row, p);
        const Complex b = m(row, q);
        TwoModeRotation r{p, q, 0.0, 0.0};
        if (std::abs(a) > 1e-15) {
            r.theta = std::atan2(std::abs(a), std::abs(b));
            r.phi = std::abs(b) > 1e-15 ? std::arg(a) - std::arg(b) : std::arg(a);
        }
        m = m * r.embedded().adjoint();
        m(row, p) = 0.0;
        out.rotations.push_back(r);
    }
    for (int k = 0; k < 3; ++k) out.output_phases[k] = std::arg(m(k, k));
    return out;
}

PhotonicState apply_lomi(const PhotonicState& s, const ReckDecomposition& d, const std::array<std::string, 3>& paths) {
    PhotonicState out = s;
    for (const auto& r : d.rotations) {
        const Eigen::Matrix3cd full = r.embedded();
        Eigen::MatrixXcd block(2, 2);
        block << full(r.p, r.p), full(r.p, r.q), full(r.q, r.p), full(r.q, r.q);
        out = apply_path_unitary(out, block, {paths[static_cast<std::size_t>(r.p)], paths[static_cast<std::size_t>(r.q)]});
    }
    for (std::size_t k = 0; k < 3; ++k) {
        if (d.output_phases[k] != 0.0) out = apply_single_mode(out, OpticalTarget::on_path(paths[k]), PhaseShift{d.output_phases[k]});
    }
    return out;
}

} // namespace biphoton
