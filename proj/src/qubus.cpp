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

#include "biphoton/qubus.hpp"

#include "biphoton/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace biphoton {

namespace {

struct AmplitudeGroup {
    Complex representative;
    std::vector<std::size_t> members;
};

// Greedy clustering of register amplitudes (or their real parts).
std::vector<AmplitudeGroup> group_terms(const PhotonicState& s, std::size_t slot, bool real_part_only) {
    std::vector<AmplitudeGroup> groups;
    for (std::size_t i = 0; i < s.terms().size(); ++i) {
        Complex a = s.terms()[i].coherent[slot];
        if (real_part_only) a = Complex{a.real(), 0.0};
        auto it = std::find_if(groups.begin(), groups.end(), [&](const AmplitudeGroup& g) {
            return std::abs(g.representative - a) <= kCoherentMergeTolerance;
        });
        if (it == groups.end()) {
            groups.push_back({a, {i}});
        } else {
            it->members.push_back(i);
        }
    }
    std::sort(groups.begin(), groups.end(), [](const AmplitudeGroup& a, const AmplitudeGroup& b) {
        if (a.representative.real() != b.representative.real()) return a.representative.real() < b.representative.real();
        return a.representative.imag() < b.representative.imag();
    });
    return groups;
}

std::vector<int> without(const std::vector<int>& ids, std::size_t slot) {
    std::vector<int> out = ids;
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(slot));
    return out;
}

FockTerm drop_slot(FockTerm t, std::size_t slot) {
    t.coherent.erase(t.coherent.begin() + static_cast<std::ptrdiff_t>(slot));
    return t;
}

// Terms of `members`, each scaled by weight(term), with the register removed.
template <typename Weight>
PhotonicState reduced(const PhotonicState& s, std::size_t slot, const std::vector<std::size_t>& members, Weight weight) {
    std::vector<FockTerm> terms;
    terms.reserve(members.size());
    for (auto i : members) {
        FockTerm t = drop_slot(s.terms()[i], slot);
        t.amplitude *= weight(s.terms()[i].coherent[slot]);
        terms.push_back(std::move(t));
    }
    return canonicalize(PhotonicState(without(s.registers(), slot), std::move(terms), s.born_weight()));
}

BranchOutcome make_outcome(const PhotonicState& s, std::string label, double value, const PhotonicState& post,
                           double reference_norm2) {
    const double n2 = post.is_zero() ? 0.0 : norm_squared(post);
    const double p = reference_norm2 > 0.0 ? std::clamp(n2 / reference_norm2, 0.0, 1.0) : 0.0;
    if (!(n2 > 0.0) || p == 0.0) return {std::move(label), 0.0, empty_branch_state(post), value};
    PhotonicState out = scaled(post, Complex{1.0 / std::sqrt(n2), 0.0}).with_born_weight(s.born_weight() * p);
    return {std::move(label), p, collapse_records(out), value};
}

// Norm of the state when distinct register amplitudes count as orthogonal.
double ideal_norm(const PhotonicState& s, std::size_t slot, const std::vector<AmplitudeGroup>& groups) {
    double n = 0.0;
    for (const auto& g : groups) n += norm_squared(reduced(s, slot, g.members, [](Complex) { return Complex{1.0, 0.0}; }));
    return n;
}

std::vector<std::size_t> all_members(const PhotonicState& s) {
    std::vector<std::size_t> out(s.terms().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
    return out;
}

std::string format_value(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

} // namespace

PhotonicState add_registers(const PhotonicState& s, std::span<const CoherentRegisterSpec> registers) {
    auto ids = s.registers();
    auto terms = s.terms();
    for (const auto& r : registers) {
        if (!std::isfinite(r.alpha0.real()) || !std::isfinite(r.alpha0.imag())) {
            throw InvalidInput("register amplitude must be finite");
        }
        if (s.has_register(r.id) || std::count(ids.begin(), ids.end(), r.id)) {
            throw InvalidInput("register " + std::to_string(r.id) + " already declared");
        }
        ids.push_back(r.id);
        for (auto& t : terms) t.coherent.push_back(r.alpha0);
    }
    return canonicalize(PhotonicState(std::move(ids), std::move(terms), s.born_weight()));
}

PhotonicState apply_xpm(const PhotonicState& s, const XpmCoupling& c) {
    if (!std::isfinite(c.theta)) throw InvalidInput("XPM phase must be finite");
    const std::size_t slot = s.register_slot(c.register_id);
    auto terms = s.terms();
    for (auto& t : terms) {
        int n = 0;
        for (const auto& m : c.modes) n += photons_in(t, m);
        if (n) t.coherent[slot] *= std::polar(1.0, n * c.theta);
    }
    return canonicalize(PhotonicState(s.registers(), std::move(terms), s.born_weight()));
}

PhotonicState apply_coherent_element(const PhotonicState& s, const CoherentElement& e) {
    auto terms = s.terms();
    if (const auto* ph = std::get_if<CoherentPhase>(&e)) {
        const std::size_t slot = s.register_slot(ph->register_id);
        for (auto& t : terms) t.coherent[slot] *= std::polar(1.0, ph->phi);
    } else {
        const auto& bs = std::get<CoherentBalancedSplitter>(e);
        if (bs.first == bs.second) throw InvalidInput("coherent beam splitter needs two different registers");
        const std::size_t a = s.register_slot(bs.first);
        const std::size_t b = s.register_slot(bs.second);
        const double h = 1.0 / std::sqrt(2.0);
        for (auto& t : terms) {
            const Complex x = t.coherent[a];
            const Complex y = t.coherent[b];
            t.coherent[a] = (x - y) * h;
            t.coherent[b] = (x + y) * h;
        }
    }
    return canonicalize(PhotonicState(s.registers(), std::move(terms), s.born_weight()));
}

Complex coherent_number_overlap(Complex beta, int n) {
    if (n < 0) throw InvalidInput("photon number must be non-negative");
    const double r = std::abs(beta);
    if (r == 0.0) return n == 0 ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
    const double log_mag = -0.5 * r * r + n * std::log(r) - 0.5 * std::lgamma(n + 1.0);
    return std::polar(std::exp(log_mag), n * std::arg(beta));
}

BranchDistribution project_photon_number(const PhotonicState& s, int register_id, int n, MeasurementMode mode) {
    if (n < 0) throw InvalidInput("photon number must be non-negative");
    const std::size_t slot = s.register_slot(register_id);
    const std::string label = "n=" + std::to_string(n);
    BranchDistribution out;
    if (mode == MeasurementMode::kPhysical) {
        const auto post = reduced(s, slot, all_members(s), [n](Complex beta) { return coherent_number_overlap(beta, n); });
        out.outcomes.push_back(make_outcome(s, label, n, post, norm_squared(s)));
        return out;
    }
    const auto groups = group_terms(s, slot, false);
    const double reference = ideal_norm(s, slot, groups);
    std::vector<std::size_t> members;
    for (const auto& g : groups) {
        const bool vacuum_group = std::abs(g.representative) <= kCoherentMergeTolerance;
        if (vacuum_group == (n == 0)) members.insert(members.end(), g.members.begin(), g.members.end());
    }
    const auto post = reduced(s, slot, members, [n](Complex beta) {
        if (n == 0) return Complex{1.0, 0.0};
        // Conditioned on the register not being in vacuum.
        return coherent_number_overlap(beta, n) / std::sqrt(-std::expm1(-std::norm(beta)));
    });
    out.outcomes.push_back(make_outcome(s, label, n, post, reference));
    return out;
}

BranchDistribution measure_photon_number(const PhotonicState& s, int register_id, int cap, MeasurementMode mode) {
    if (cap < 0) throw InvalidInput("photon-number cap must be non-negative");
    BranchDistribution out;
    for (int n = 0; n <= cap; ++n) {
        auto one = project_photon_number(s, register_id, n, mode);
        out.outcomes.push_back(std::move(one.outcomes.front()));
    }
    return out;
}

int number_cutoff_for(const PhotonicState& s, int register_id, double tail) {
    const std::size_t slot = s.register_slot(register_id);
    double mean = 0.0;
    for (const auto& t : s.terms()) mean = std::max(mean, std::norm(t.coherent[slot]));
    // Poisson tail P(N > cap), summed until the terms stop mattering.
    auto tail_above = [mean](int cap) {
        if (mean == 0.0) return 0.0;
        double sum = 0.0;
        for (int k = cap + 1;; ++k) {
            const double p = std::exp(-mean + k * std::log(mean) - std::lgamma(k + 1.0));
            sum += p;
            if (k > mean && p < 1e-18) break;
        }
        return sum;
    };
    constexpr int kLimit = 4096;
    for (int cap = kNumberCutoff; cap <= kLimit; ++cap) {
        if (tail_above(cap) < tail) return cap;
    }
    throw InvalidInput("register amplitude too large for a photon-number readout");
}

BranchDistribution project_quadrature_x(const PhotonicState& s, int register_id, MeasurementMode mode) {
    if (mode == MeasurementMode::kPhysical) {
        throw Unsupported("physical X-quadrature statistics are not modelled; use the ideal mode");
    }
    const std::size_t slot = s.register_slot(register_id);
    const auto groups = group_terms(s, slot, true);
    const double reference = ideal_norm(s, slot, groups);
    BranchDistribution out;
    for (const auto& g : groups) {
        const double x = g.representative.real();
        const auto post = reduced(s, slot, g.members, [](Complex) { return Complex{1.0, 0.0}; });
        out.outcomes.push_back(make_outcome(s, "x=" + format_value(x), x, post, reference));
    }
    return out;
}

PhotonicState release_register(const PhotonicState& s, int register_id) {
    const std::size_t slot = s.register_slot(register_id);
    if (!s.terms().empty()) {
        const Complex first = s.terms().front().coherent[slot];
        for (const auto& t : s.terms()) {
            if (std::abs(t.coherent[slot] - first) > kCoherentMergeTolerance) {
                throw InvalidInput("register " + std::to_string(register_id) + " is still entangled with the photons");
            }
        }
    }
    return reduced(s, slot, all_members(s), [](Complex) { return Complex{1.0, 0.0}; });
}

PhotonicState release_register_if_uniform(const PhotonicState& s, int register_id) {
    (void)s.register_slot(register_id);
    try {
        return release_register(s, register_id);
    } catch (const InvalidInput&) {
        return s;
    }
}

} // namespace biphoton
