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

#include "biphoton/measurement.hpp"

#include "biphoton/errors.hpp"

#include <algorithm>
#include <cmath>

namespace biphoton {

namespace {

int watched_photons(const FockTerm& t, const std::vector<ModeId>& modes) {
    int n = 0;
    for (const auto& m : modes) n += photons_in(t, m);
    return n;
}

// Moves the watched photons into the record. The monomial norm of the
// removed part is folded into the amplitude so records act as orthonormal
// labels.
FockTerm absorb(FockTerm t, const Detector& d) {
    std::string tag = "[" + d.label;
    double norm2 = 1.0;
    for (const auto& m : d.modes) {
        auto it = t.occupations.find(m);
        if (it == t.occupations.end() || it->second == 0) continue;
        tag += " " + to_string(m) + "x" + std::to_string(it->second);
        norm2 *= std::tgamma(it->second + 1.0);
        t.occupations.erase(it);
    }
    tag += "]";
    t.record += tag;
    t.amplitude *= std::sqrt(norm2);
    return t;
}

// Unnormalized projection; born weight left untouched.
PhotonicState project(const PhotonicState& s, const Detector& d, Click required) {
    std::vector<FockTerm> kept;
    for (const auto& t : s.terms()) {
        const bool fired = watched_photons(t, d.modes) > 0;
        if (required == Click::kClick && fired) kept.push_back(absorb(t, d));
        if (required == Click::kNoClick && !fired) kept.push_back(t);
    }
    return canonicalize(PhotonicState(s.registers(), std::move(kept), s.born_weight()));
}

// Normalizes `post` against the reference norm and books the probability.
Selection finish(const PhotonicState& s, const PhotonicState& post, double reference_norm2) {
    const double n2 = post.is_zero() ? 0.0 : norm_squared(post);
    const double p = reference_norm2 > 0.0 ? std::clamp(n2 / reference_norm2, 0.0, 1.0) : 0.0;
    if (!(n2 > 0.0) || p == 0.0) return {0.0, empty_branch_state(s)};
    PhotonicState out = scaled(post, Complex{1.0 / std::sqrt(n2), 0.0});
    out = collapse_records(out.with_born_weight(s.born_weight() * p));
    return {p, out};
}

void validate_detector(const Detector& d) {
    if (d.label.empty()) throw InvalidInput("detector label must be non-empty");
    if (d.modes.empty()) throw InvalidInput("detector '" + d.label + "' watches no modes");
}

void validate_pattern(const std::vector<DetectorRequirement>& pattern) {
    std::set<ModeId> seen;
    for (const auto& req : pattern) {
        validate_detector(req.detector);
        for (const auto& m : req.detector.modes) {
            if (!seen.insert(m).second) {
                throw WiringError("detectors in a coincidence pattern overlap on mode " + to_string(m));
            }
        }
    }
}

} // namespace

double BranchDistribution::total_probability() const noexcept {
    double p = 0.0;
    for (const auto& o : outcomes) p += o.probability;
    return p;
}

const BranchOutcome& BranchDistribution::at(const std::string& label) const {
    for (const auto& o : outcomes) {
        if (o.label == label) return o;
    }
    throw InvalidInput("no measurement outcome labelled '" + label + "'");
}

bool BranchDistribution::contains(const std::string& label) const noexcept {
    return std::any_of(outcomes.begin(), outcomes.end(), [&](const BranchOutcome& o) { return o.label == label; });
}

Detector Detector::on_path(std::string label, const std::string& path) {
    return {std::move(label), {mode(path, Polarization::H), mode(path, Polarization::V)}};
}

PhotonicState empty_branch_state(const PhotonicState& like) {
    return PhotonicState::vacuum(like.registers()).with_born_weight(0.0);
}

BranchDistribution detect_non_resolving(const PhotonicState& s, const Detector& d) {
    validate_detector(d);
    const double n2 = norm_squared(s);
    BranchDistribution out;
    auto click = finish(s, project(s, d, Click::kClick), n2);
    auto none = finish(s, project(s, d, Click::kNoClick), n2);
    out.outcomes.push_back({"click", click.probability, std::move(click.state)});
    out.outcomes.push_back({"no-click", none.probability, std::move(none.state)});
    return out;
}

Selection post_select_coincidence(const PhotonicState& s, const std::vector<DetectorRequirement>& pattern) {
    validate_pattern(pattern);
    PhotonicState post = s;
    for (const auto& req : pattern) post = project(post, req.detector, req.required);
    return finish(s, post, norm_squared(s));
}

Selection post_select_photon_count(const PhotonicState& s, const std::vector<std::string>& paths, int count) {
    if (count < 0) throw InvalidInput("photon count must be non-negative");
    std::vector<FockTerm> kept;
    for (const auto& t : s.terms()) {
        int n = 0;
        for (const auto& p : paths) n += photons_on_path(t, p);
        if (n == count) kept.push_back(t);
    }
    const PhotonicState post = canonicalize(PhotonicState(s.registers(), std::move(kept), s.born_weight()));
    return finish(s, post, norm_squared(s));
}

BranchDistribution detect_which(const PhotonicState& s, const std::vector<Detector>& detectors) {
    if (detectors.empty()) throw InvalidInput("detect_which needs at least one detector");
    const double n2 = norm_squared(s);
    BranchDistribution out;
    for (std::size_t k = 0; k < detectors.size(); ++k) {
        std::vector<DetectorRequirement> pattern;
        for (std::size_t j = 0; j < detectors.size(); ++j) {
            pattern.push_back({detectors[j], j == k ? Click::kClick : Click::kNoClick});
        }
        validate_pattern(pattern);
        PhotonicState post = s;
        for (const auto& req : pattern) post = project(post, req.detector, req.required);
        auto sel = finish(s, post, n2);
        out.outcomes.push_back({detectors[k].label, sel.probability, std::move(sel.state)});
    }
    return out;
}

BranchDistribution apply_feed_forward(const BranchDistribution& b, const FeedForwardRule& rule) {
    std::set<std::string> allowed = rule.circuit_paths;
    if (allowed.empty()) {
        for (const auto& o : b.outcomes) {
            const auto paths = occupied_paths(o.state);
            allowed.insert(paths.begin(), paths.end());
        }
    }
    for (const auto& [label, list] : rule.corrections) {
        if (!b.contains(label)) throw InvalidInput("feed-forward rule names unknown outcome '" + label + "'");
        for (const auto& c : list) {
            if (!allowed.count(c.target.path)) {
                throw WiringError("feed-forward correction targets path '" + c.target.path + "' outside the circuit");
            }
        }
    }
    BranchDistribution out = b;
    for (auto& o : out.outcomes) {
        auto it = rule.corrections.find(o.label);
        if (it == rule.corrections.end() || o.probability == 0.0) continue;
        for (const auto& c : it->second) o.state = apply_single_mode(o.state, c.target, c.op);
    }
    return out;
}

BranchOutcome merge_outcomes(const BranchDistribution& b, const std::string& label) {
    double total = 0.0;
    double born = 0.0;
    std::vector<FockTerm> terms;
    const PhotonicState* like = nullptr;
    for (const auto& o : b.outcomes) {
        if (o.probability <= 0.0) continue;
        if (like && like->registers() != o.state.registers()) {
            throw InvalidInput("cannot merge outcomes with different registers");
        }
        like = &o.state;
        total += o.probability;
        born += o.state.born_weight();
        const double w = std::sqrt(o.probability);
        for (auto t : o.state.terms()) {
            t.record += "{" + o.label + "}";
            t.amplitude *= w;
            terms.push_back(std::move(t));
        }
    }
    if (!like) return {label, 0.0, b.outcomes.empty() ? PhotonicState{} : empty_branch_state(b.outcomes.front().state)};
    PhotonicState merged = normalized(canonicalize(PhotonicState(like->registers(), std::move(terms), born)));
    return {label, total, collapse_records(merged)};
}

} // namespace biphoton
