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
 * @file optics.hpp
 * @brief Passive linear-optical elements acting on PhotonicState.
 *
 * Every element is a substitution of creation operators
 * a_m^dagger -> sum_k U_km a_k^dagger followed by expansion, so photon
 * number is conserved and norms are preserved whenever U is unitary.
 */

#pragma once

#include "biphoton/fock.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace biphoton {

/// Images of creation operators; modes absent from the map are left alone.
using ModeMap = std::map<ModeId, std::vector<std::pair<ModeId, Complex>>>;

PhotonicState transform_modes(const PhotonicState& s, const ModeMap& map);

/// Renames paths (both polarizations). Targets may not collide with
/// occupied paths that are not renamed themselves.
PhotonicState relabel_paths(const PhotonicState& s, const std::map<std::string, std::string>& renames);

/// Which input picks up the sign flip. With inputs (a, b) and outputs (c, d):
///   kSymmetricMinusOnSecond:  a -> t c + r d,   b -> r c - t d
///   kMinusOnReflectedAncilla: a -> t c + r d,   b -> -r c + t d
enum class BsConvention { kSymmetricMinusOnSecond, kMinusOnReflectedAncilla };

struct BeamSplitterSpec {
    double t = 1.0 / 1.4142135623730951;
    double r = 1.0 / 1.4142135623730951;
    BsConvention convention = BsConvention::kSymmetricMinusOnSecond;

    /// InvalidInput unless t, r in [0, 1] and t^2 + r^2 = 1 within 1e-12.
    void validate() const;
    static BeamSplitterSpec balanced(BsConvention convention = BsConvention::kSymmetricMinusOnSecond);
    /// r = sqrt(1 - t^2).
    static BeamSplitterSpec with_transmissivity(double t, BsConvention convention = BsConvention::kSymmetricMinusOnSecond);
};

/**
 * Two-port mixing on both polarizations. Input paths may be empty (vacuum).
 * Output paths must be fresh or coincide with one of the inputs.
 */
PhotonicState apply_beam_splitter(const PhotonicState& s, const std::string& in_a, const std::string& in_b,
                                  const std::string& out_c, const std::string& out_d, const BeamSplitterSpec& spec);

/// A whole path (both polarizations) or one polarization mode.
struct OpticalTarget {
    std::string path;
    std::optional<Polarization> pol;

    static OpticalTarget on_path(std::string path) { return {std::move(path), std::nullopt}; }
    static OpticalTarget on_mode(const ModeId& m) { return {m.path, m.pol}; }
};

struct PhaseShift {
    double phi = 0.0;
};
struct SigmaX {};
using SingleModeOp = std::variant<PhaseShift, SigmaX>;

/// phase(phi): amplitude *= exp(i n phi) for n photons on the target.
/// sigma_x: swaps H and V on the target path (path targets only).
PhotonicState apply_single_mode(const PhotonicState& s, const OpticalTarget& target, const SingleModeOp& op);

enum class PbsBasis { kHV, kDiagonal };

/**
 * Polarizing beam splitter. `in_paths` holds one or two inputs, `out_paths`
 * is {transmitted, reflected}. The first input sends H (or |+>) to the
 * transmitted port and V (or |->) to the reflected port; a second input
 * does the opposite, so two inputs can be combined into one output.
 */
PhotonicState route_pbs(const PhotonicState& s, const std::vector<std::string>& in_paths,
                        const std::array<std::string, 2>& out_paths, PbsBasis basis = PbsBasis::kHV);

/// F_kj = exp(2 pi i j k / d) / sqrt(d).
Eigen::MatrixXcd qft_matrix(int d);

/// Path j -> (1/sqrt d) sum_k exp(2 pi i j k / d) path k, on both polarizations.
PhotonicState apply_qft(const PhotonicState& s, const std::vector<std::string>& in_paths,
                        const std::vector<std::string>& out_paths);
PhotonicState apply_qft(const PhotonicState& s, const std::vector<std::string>& paths);

/// Applies an arbitrary matrix to a set of paths: path j -> sum_k m(k, j) path k.
PhotonicState apply_path_unitary(const PhotonicState& s, const Eigen::MatrixXcd& m,
                                 const std::vector<std::string>& paths);

class Unitary3 {
  public:
    /// InvalidInput unless U^dagger U = I within 1e-10.
    static Unitary3 from_matrix(const Eigen::Matrix3cd& m);
    static Unitary3 identity() { return Unitary3(Eigen::Matrix3cd::Identity()); }

    const Eigen::Matrix3cd& matrix() const noexcept { return m_; }
    std::array<Complex, 3> apply(const std::array<Complex, 3>& v) const;

  private:
    explicit Unitary3(const Eigen::Matrix3cd& m) : m_(m) {}
    Eigen::Matrix3cd m_;
};

/// [[e^{i phi} cos theta, -sin theta], [e^{i phi} sin theta, cos theta]] on modes (p, q).
struct TwoModeRotation {
    int p = 0;
    int q = 1;
    double theta = 0.0;
    double phi = 0.0;

    Eigen::Matrix3cd embedded() const;
};

/// U = diag(e^{i phases}) * R_K * ... * R_1; rotations stored in application order.
struct ReckDecomposition {
    std::vector<TwoModeRotation> rotations;
    std::array<double, 3> output_phases{0.0, 0.0, 0.0};

    Eigen::Matrix3cd recompose() const;
};

ReckDecomposition reck_decompose(const Unitary3& u);

/// Applies the interferometer described by `d` to the three paths.
PhotonicState apply_lomi(const PhotonicState& s, const ReckDecomposition& d, const std::array<std::string, 3>& paths);

} // namespace biphoton
