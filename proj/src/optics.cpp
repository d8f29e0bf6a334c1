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

#include "biphoton/optics.hpp"

#include "biphoton/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace biphoton {

namespace {

constexpr Polarization kPols[2] = {Polarization::H, Polarization::V};

// Outputs must be empty unless they are also inputs of the same element.
void require_free_outputs(const PhotonicState& s, const std::vector<std::string>& inputs,
                          const std::vector<std::string>& outputs, const char* element) {
    const auto occupied = occupied_paths(s);
    for (const auto& out : outputs) {
        if (out.empty()) throw InvalidInput(std::string(element) + ": empty output path label");
        if (std::find(inputs.begin(), inputs.end(), out) != inputs.end()) continue;
        if (occupied.count(out)) {
            throw WiringError(std::string(element) + ": output path '" + out + "' already carries photons");
        }
    }
}

void require_distinct(const std::vector<std::string>& labels, const char* element) {
    std::set<std::string> seen;
    for (const auto& l : labels) {
        if (l.empty()) throw InvalidInput(std::string(element) + ": empty path label");
        if (!seen.insert(l).second) throw WiringError(std::string(element) + ": path '" + l + "' used twice");
    }
}

} // namespace

PhotonicState transform_modes(const PhotonicState& s, const ModeMap& map) {
    std::vector<FockTerm> out;
    for (const auto& term : s.terms()) {
        std::vector<std::pair<Occupations, Complex>> partial{{Occupations{}, term.amplitude}};
        for (const auto& [m, count] : term.occupations) {
            auto it = map.find(m);
            for (int photon = 0; photon < count; ++photon) {
                std::vector<std::pair<Occupations, Complex>> next;
                if (it == map.end()) {
                    for (auto& [occ, c] : partial) {
                        occ[m] += 1;
                    }
                    continue;
                }
                next.reserve(partial.size() * it->second.size());
                for (const auto& [occ, c] : partial) {
                    for (const auto& [image, coeff] : it->second) {
                        if (coeff == Complex{0.0, 0.0}) continue;
                        auto o = occ;
                        o[image] += 1;
                        next.emplace_back(std::move(o), c * coeff);
                    }
                }
                partial = std::move(next);
            }
        }
        for (auto& [occ, c] : partial) out.push_back(FockTerm{std::move(occ), term.coherent, term.record, c});
    }
    return canonicalize(PhotonicState(s.registers(), std::move(out), s.born_weight()));
}

PhotonicState relabel_paths(const PhotonicState& s, const std::map<std::string, std::string>& renames) {
    std::vector<std::string> targets;
    std::vector<std::string> sources;
    for (const auto& [from, to] : renames) {
        sources.push_back(from);
        targets.push_back(to);
    }
    require_distinct(targets, "relabel");
    require_free_outputs(s, sources, targets, "relabel");
    auto terms = s.terms();
    for (auto& t : terms) {
        Occupations occ;
        for (const auto& [m, count] : t.occupations) {
            auto it = renames.find(m.path);
            occ[it == renames.end() ? m : ModeId{it->second, m.pol}] += count;
        }
        t.occupations = std::move(occ);
    }
    return canonicalize(PhotonicState(s.registers(), std::move(terms), s.born_weight()));
}

void BeamSplitterSpec::validate() const {
    if (!(t >= 0.0 && t <= 1.0 && r >= 0.0 && r <= 1.0)) {
        throw InvalidInput("beam splitter amplitudes must lie in [0, 1]");
    }
    if (std::abs(t * t + r * r - 1.0) > 1e-12) throw InvalidInput("beam splitter violates t^2 + r^2 = 1");
}

BeamSplitterSpec BeamSplitterSpec::balanced(BsConvention convention) {
    return {1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2, convention};
}

BeamSplitterSpec BeamSplitterSpec::with_transmissivity(double t, BsConvention convention) {
    if (!(t >= 0.0 && t <= 1.0)) throw InvalidInput("transmissivity amplitude must lie in [0, 1]");
    return {t, std::sqrt(std::max(0.0, 1.0 - t * t)), convention};
}

PhotonicState apply_beam_splitter(const PhotonicState& s, const std::string& in_a, const std::string& in_b,
                                  const std::string& out_c, const std::string& out_d, const BeamSplitterSpec& spec) {
    spec.validate();
    require_distinct({in_a, in_b}, "beam splitter");
    require_distinct({out_c, out_d}, "beam splitter");
    require_free_outputs(s, {in_a, in_b}, {out_c, out_d}, "beam splitter");

    const double t = spec.t;
    const double r = spec.r;
    const bool minus_on_second = spec.convention == BsConvention::kSymmetricMinusOnSecond;
    ModeMap map;
    for (auto pol : kPols) {
        map[{in_a, pol}] = {{{out_c, pol}, t}, {{out_d, pol}, r}};
        if (minus_on_second) {
            map[{in_b, pol}] = {{{out_c, pol}, r}, {{out_d, pol}, -t}};
        } else {
            map[{in_b, pol}] = {{{out_c, pol}, -r}, {{out_d, pol}, t}};
        }
    }
    return transform_modes(s, map);
}

PhotonicState apply_single_mode(const PhotonicState& s, const OpticalTarget& target, const SingleModeOp& op) {
    if (target.path.empty()) throw InvalidInput("single-mode element needs a path");
    if (const auto* ps = std::get_if<PhaseShift>(&op)) {
        auto terms = s.terms();
        for (auto& t : terms) {
            const int n = target.pol ? photons_in(t, ModeId{target.path, *target.pol}) : photons_on_path(t, target.path);
            if (n) t.amplitude *= std::polar(1.0, n * ps->phi);
        }
        return canonicalize(PhotonicState(s.registers(), std::move(terms), s.born_weight()));
    }
    if (target.pol) throw InvalidInput("sigma_x acts on a whole path, not a single polarization mode");
    ModeMap map;
    map[{target.path, Polarization::H}] = {{{target.path, Polarization::V}, 1.0}};
    map[{target.path, Polarization::V}] = {{{target.path, Polarization::H}, 1.0}};
    return transform_modes(s, map);
}

PhotonicState route_pbs(const PhotonicState& s, const std::vector<std::string>& in_paths,
                        const std::array<std::string, 2>& out_paths, PbsBasis basis) {
    if (in_paths.empty() || in_paths.size() > 2) throw InvalidInput("PBS takes one or two input paths");
    require_distinct(in_paths, "PBS");
    const std::vector<std::string> outs{out_paths[0], out_paths[1]};
    require_distinct(outs, "PBS");
    require_free_outputs(s, in_paths, outs, "PBS");

    const auto& tr = out_paths[0];
    const auto& rf = out_paths[1];
    constexpr auto H = Polarization::H;
    constexpr auto V = Polarization::V;
    ModeMap map;
    if (basis == PbsBasis::kHV) {
        map[{in_paths[0], H}] = {{{tr, H}, 1.0}};
        map[{in_paths[0], V}] = {{{rf, V}, 1.0}};
        if (in_paths.size() == 2) {
            map[{in_paths[1], H}] = {{{rf, H}, 1.0}};
            map[{in_paths[1], V}] = {{{tr, V}, 1.0}};
        }
    } else {
        // |+> = (H + V)/sqrt2 leaves through `first`, |-> = (H - V)/sqrt2 through `second`.
        auto route = [&](const std::string& in, const std::string& plus_out, const std::string& minus_out) {
            map[{in, H}] = {{{plus_out, H}, 0.5}, {{plus_out, V}, 0.5}, {{minus_out, H}, 0.5}, {{minus_out, V}, -0.5}};
            map[{in, V}] = {{{plus_out, H}, 0.5}, {{plus_out, V}, 0.5}, {{minus_out, H}, -0.5}, {{minus_out, V}, 0.5}};
        };
        route(in_paths[0], tr, rf);
        if (in_paths.size() == 2) route(in_paths[1], rf, tr);
    }
    return transform_modes(s, map);
}

Eigen::MatrixXcd qft_matrix(int d) {
    if (d < 2) throw InvalidInput("QFT needs at least two paths");
    Eigen::MatrixXcd f(d, d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int k = 0; k < d; ++k) {
        for (int j = 0; j < d; ++j) {
            // Reduce j*k mod d first so the angle is exact for the common cases.
            const int jk = (j * k) % d;
            f(k, j) = std::polar(scale, 2.0 * std::numbers::pi * jk / d);
        }
    }
    return f;
}

namespace {

PhotonicState apply_matrix(const PhotonicState& s, const Eigen::MatrixXcd& m, const std::vector<std::string>& in_paths,
                           const std::vector<std::string>& out_paths, const char* element) {
    if (m.rows() != static_cast<Eigen::Index>(out_paths.size()) || m.cols() != static_cast<Eigen::Index>(in_paths.size())) {
        throw InvalidInput(std::string(element) + ": matrix shape does not match the path lists");
    }
    require_distinct(in_paths, element);
    require_distinct(out_paths, element);
    require_free_outputs(s, in_paths, out_paths, element);
    ModeMap map;
    for (std::size_t j = 0; j < in_paths.size(); ++j) {
        for (auto pol : kPols) {
            auto& images = map[{in_paths[j], pol}];
            for (std::size_t k = 0; k < out_paths.size(); ++k) {
                const Complex c = m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
                if (c != Complex{0.0, 0.0}) images.push_back({{out_paths[k], pol}, c});
            }
        }
    }
    return transform_modes(s, map);
}

} // namespace

PhotonicState apply_qft(const PhotonicState& s, const std::vector<std::string>& in_paths,
                        const std::vector<std::string>& out_paths) {
    if (in_paths.size() != out_paths.size()) throw InvalidInput("QFT needs as many outputs as inputs");
    return apply_matrix(s, qft_matrix(static_cast<int>(in_paths.size())), in_paths, out_paths, "QFT");
}

PhotonicState apply_qft(const PhotonicState& s, const std::vector<std::string>& paths) {
    return apply_qft(s, paths, paths);
}

PhotonicState apply_path_unitary(const PhotonicState& s, const Eigen::MatrixXcd& m, const std::vector<std::string>& paths) {
    return apply_matrix(s, m, paths, paths, "multiport");
}

Unitary3 Unitary3::from_matrix(const Eigen::Matrix3cd& m) {
    if (!m.allFinite()) throw InvalidInput("unitary has non-finite entries");
    const double err = (m.adjoint() * m - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff();
    if (err > 1e-10) throw InvalidInput("matrix is not unitary (max |U^dagger U - I| = " + std::to_string(err) + ")");
    return Unitary3(m);
}

std::array<Complex, 3> Unitary3::apply(const std::array<Complex, 3>& v) const {
    const Eigen::Vector3cd out = m_ * Eigen::Vector3cd(v[0], v[1], v[2]);
    return {out(0), out(1), out(2)};
}

} // namespace biphoton
