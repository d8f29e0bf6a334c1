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
 * @file fock.hpp
 * @brief Symbolic few-photon states over (path, polarization) modes.
 *
 * A state is a sparse sum of creation-operator monomials acting on the
 * vacuum. Each term may additionally carry
 *   - one coherent-state amplitude per declared qubus register, and
 *   - a measurement record: an opaque label of already-detected photons.
 *
 * Terms with different records are orthogonal. Keeping detected photons
 * as records lets the state stay a pure vector even when a non-resolving
 * detector leaves a classical mixture behind; reduced quantities
 * (fidelity) trace the records out.
 */

#pragma once

#include <compare>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace biphoton {

using Complex = std::complex<double>;

inline constexpr int kPhotonCap = 4;
inline constexpr double kPruneThreshold = 1e-12;
inline constexpr double kCoherentMergeTolerance = 1e-9;
inline constexpr double kNormalizationTolerance = 1e-12;

enum class Polarization { H, V };

char to_char(Polarization pol) noexcept;
Polarization flipped(Polarization pol) noexcept;

/// One optical mode. Ordered by path label, then H before V.
struct ModeId {
    std::string path;
    Polarization pol = Polarization::H;

    auto operator<=>(const ModeId&) const = default;
};

/// Validating constructor; path labels must be non-empty.
ModeId mode(std::string path, Polarization pol);
std::string to_string(const ModeId& m);

using Occupations = std::map<ModeId, int>;

struct FockTerm {
    Occupations occupations;
    std::vector<Complex> coherent;
    std::string record;
    Complex amplitude{0.0, 0.0};
};

int total_photons(const FockTerm& term) noexcept;
int photons_in(const FockTerm& term, const ModeId& m) noexcept;
int photons_on_path(const FockTerm& term, const std::string& path) noexcept;

/// Squared norm of the monomial prod a_m^dagger^{n_m} |vac>, i.e. prod n_m!.
double monomial_norm_squared(const Occupations& occupations) noexcept;

/// <beta|gamma> for coherent states.
Complex coherent_overlap(Complex beta, Complex gamma) noexcept;

/**
 * Immutable value holding an (in general unnormalized) state together with
 * the accumulated probability of the post-selections that produced it.
 *
 * The constructor validates but does not canonicalize; every library
 * operation returns canonical states.
 */
class PhotonicState {
  public:
    PhotonicState() = default;
    PhotonicState(std::vector<int> registers, std::vector<FockTerm> terms, double born_weight = 1.0);

    /// |vac> with every register in the given amplitude (or |0> if omitted).
    static PhotonicState vacuum(std::vector<int> registers = {}, std::vector<Complex> amplitudes = {});

    const std::vector<int>& registers() const noexcept { return registers_; }
    const std::vector<FockTerm>& terms() const noexcept { return terms_; }
    double born_weight() const noexcept { return born_weight_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    bool has_register(int id) const noexcept;
    /// Position of register `id` in each term's coherent list; InvalidInput if absent.
    std::size_t register_slot(int id) const;

    PhotonicState with_born_weight(double weight) const;

  private:
    std::vector<int> registers_;
    std::vector<FockTerm> terms_;
    double born_weight_ = 1.0;
};

struct QutritCoefficients {
    Complex alpha{1.0, 0.0};
    Complex beta{0.0, 0.0};
    Complex gamma{0.0, 0.0};

    double norm_squared() const noexcept;
    /// InvalidInput unless |alpha|^2 + |beta|^2 + |gamma|^2 = 1 within 1e-12.
    void validate() const;
    static QutritCoefficients normalized(Complex alpha, Complex beta, Complex gamma);
};

/// (alpha/sqrt2) aH^2 + beta aH aV + (gamma/sqrt2) aV^2 on one path.
PhotonicState make_biphotonic_qutrit(const QutritCoefficients& c, const std::string& path);

/// One photon with polarization `pol` spread over three distinct paths.
PhotonicState make_spatial_qutrit(const QutritCoefficients& c, std::span<const std::string> paths,
                                  Polarization pol = Polarization::H);

/// Multiplies every term by sum_k c_k a_k^dagger (adds one photon).
PhotonicState create_photon(const PhotonicState& s, std::span<const std::pair<ModeId, Complex>> superposition);
PhotonicState create_photon(const PhotonicState& s, const ModeId& m);

Complex inner_product(const PhotonicState& bra, const PhotonicState& ket);
double norm_squared(const PhotonicState& s);
PhotonicState normalized(const PhotonicState& s);
PhotonicState scaled(const PhotonicState& s, Complex factor);
/// Term-wise sum; registers must agree. Born weight taken from `a`.
PhotonicState sum(const PhotonicState& a, const PhotonicState& b);

/**
 * Fidelity <target| rho |target> / (|s|^2 |target|^2) where rho = |s><s|.
 *
 * Records of `s` are always traced out. When `target` has no registers
 * the registers of `s` are traced out as well; otherwise both register
 * lists must agree and the full coherent overlaps are used.
 */
double fidelity(const PhotonicState& s, const PhotonicState& target);

/// Merges duplicate terms, prunes tiny amplitudes, sorts terms.
PhotonicState canonicalize(const PhotonicState& s);

/**
 * Drops measurement records when they carry no information, i.e. when
 * every record block is proportional to the largest one. Blocks whose
 * weight is at the rounding floor are not compared. The resulting state
 * has the same reduced density matrix.
 */
PhotonicState collapse_records(const PhotonicState& s);

std::set<std::string> occupied_paths(const PhotonicState& s);
int max_photon_number(const PhotonicState& s) noexcept;

std::string to_string(const PhotonicState& s);

} // namespace biphoton
