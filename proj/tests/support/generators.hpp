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

// Small random generators for property tests. Each case gets its own seed
// so a failure can be replayed from the printed number.

#pragma once

#include "biphoton/fock.hpp"
#include "biphoton/optics.hpp"
#include "biphoton/sampling.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace testgen {

using biphoton::Complex;

struct Gen {
    biphoton::Rng rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
    bool coin() { return integer(0, 1) == 1; }
    Complex complex() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

    biphoton::QutritCoefficients qutrit() { return biphoton::random_qutrit(rng); }
    biphoton::Unitary3 unitary3() { return biphoton::haar_unitary3(rng); }
    Eigen::MatrixXcd unitary(int d) { return biphoton::haar_unitary(d, rng); }

    biphoton::Polarization pol() { return coin() ? biphoton::Polarization::H : biphoton::Polarization::V; }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(integer(0, static_cast<int>(v.size()) - 1))];
    }

    // `photons` photons, each in a random superposition over `paths` x {H, V}.
    biphoton::PhotonicState photons_over(const std::vector<std::string>& paths, int photons) {
        auto s = biphoton::PhotonicState::vacuum();
        for (int k = 0; k < photons; ++k) {
            std::vector<std::pair<biphoton::ModeId, Complex>> sup;
            for (const auto& p : paths) {
                sup.push_back({biphoton::mode(p, biphoton::Polarization::H), complex()});
                sup.push_back({biphoton::mode(p, biphoton::Polarization::V), complex()});
            }
            s = biphoton::create_photon(s, sup);
        }
        return biphoton::normalized(s);
    }

    // Normalized state with 1..max_photons photons, sometimes a superposition
    // of two photon numbers.
    biphoton::PhotonicState state(const std::vector<std::string>& paths, int max_photons = 3) {
        auto s = photons_over(paths, integer(1, max_photons));
        if (integer(0, 3) == 0) s = biphoton::normalized(biphoton::sum(s, photons_over(paths, integer(1, max_photons))));
        return s;
    }
};

// Runs `body` for `cases` independent seeds derived from `base`.
template <typename Body>
void for_all(int cases, std::uint64_t base, Body body) {
    for (int i = 0; i < cases; ++i) {
        const std::uint64_t seed = base * 1000003ULL + static_cast<std::uint64_t>(i);
        INFO("case seed " << seed);
        Gen g(seed);
        body(g);
    }
}

} // namespace testgen
