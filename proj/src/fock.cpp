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

#include "biphoton/fock.hpp"

#include "biphoton/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace biphoton {

namespace {

constexpr double kNegligibleRecordWeight = 1e-16;

bool coherent_less(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](Complex x, Complex y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
}

bool coherent_close(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (std::abs(a[k] - b[k]) > kCoherentMergeTolerance) return false;
    }
    return true;
}

Complex coherent_product(const std::vector<Complex>& bra, const std::vector<Complex>& ket) {
    Complex out{1.0, 0.0};
    for (std::size_t k = 0; k < bra.size(); ++k) out *= coherent_overlap(bra[k], ket[k]);
    return out;
}

using BlockKey = std::pair<Occupations, std::string>;

std::map<BlockKey, std::vector<std::size_t>> index_blocks(const std::vector<FockTerm>& terms) {
    std::map<BlockKey, std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        blocks[{terms[i].occupations, terms[i].record}].push_back(i);
    }
    return blocks;
}

// <target_photonic | term_photonic> without coherent or record factors.
Complex photonic_overlap(const std::map<Occupations, std::vector<std::size_t>>& target_index,
                         const std::vector<FockTerm>& target_terms, const FockTerm& term) {
    auto it = target_index.find(term.occupations);
    if (it == target_index.end()) return {0.0, 0.0};
    Complex acc{0.0, 0.0};
    for (auto k : it->second) acc += std::conj(target_terms[k].amplitude);
    return acc * monomial_norm_squared(term.occupations) * term.amplitude;
}

} // namespace

char to_char(Polarization pol) noexcept { return pol == Polarization::H ? 'H' : 'V'; }

Polarization flipped(Polarization pol) noexcept { return pol == Polarization::H ? Polarization::V : Polarization::H; }

ModeId mode(std::string path, Polarization pol) {
    if (path.empty()) throw InvalidInput("mode path label must be non-empty");
    return ModeId{std::move(path), pol};
}

std::string to_string(const ModeId& m) { return m.path + to_char(m.pol); }

int total_photons(const FockTerm& term) noexcept {
    int n = 0;
    for (const auto& [m, count] : term.occupations) n += count;
    return n;
}

int photons_in(const FockTerm& term, const ModeId& m) noexcept {
    auto it = term.occupations.find(m);
    return it == term.occupations.end() ? 0 : it->second;
}

int photons_on_path(const FockTerm& term, const std::string& path) noexcept {
    return photons_in(term, ModeId{path, Polarization::H}) + photons_in(term, ModeId{path, Polarization::V});
}

double monomial_norm_squared(const Occupations& occupations) noexcept {
    double out = 1.0;
    for (const auto& [m, count] : occupations) out *= std::tgamma(count + 1.0);
    return out;
}

Complex coherent_overlap(Complex beta, Complex gamma) noexcept {
    return std::exp(-0.5 * std::norm(beta) - 0.5 * std::norm(gamma) + std::conj(beta) * gamma);
}

PhotonicState::PhotonicState(std::vector<int> registers, std::vector<FockTerm> terms, double born_weight)
    : registers_(std::move(registers)), terms_(std::move(terms)), born_weight_(born_weight) {
    std::vector<int> sorted_ids = registers_;
    std::sort(sorted_ids.begin(), sorted_ids.end());
    if (std::adjacent_find(sorted_ids.begin(), sorted_ids.end()) != sorted_ids.end()) {
        throw InvalidInput("register ids must be unique");
    }
    if (!(born_weight_ >= 0.0) || !std::isfinite(born_weight_)) {
        throw InvalidInput("born weight must be a finite non-negative number");
    }
    for (const auto& term : terms_) {
        if (term.coherent.size() != registers_.size()) {
            throw InvalidInput("term carries " + std::to_string(term.coherent.size()) + " coherent amplitudes, state declares " +
                               std::to_string(registers_.size()) + " registers");
        }
        for (const auto& [m, count] : term.occupations) {
            if (count < 0) throw InvalidInput("negative photon count on mode " + to_string(m));
            if (m.path.empty()) throw InvalidInput("mode path label must be non-empty");
        }
        if (total_photons(term) > kPhotonCap) {
            throw WiringError("photon cap exceeded: term holds " + std::to_string(total_photons(term)) + " photons (cap " +
                              std::to_string(kPhotonCap) + ")");
        }
    }
}

PhotonicState PhotonicState::vacuum(std::vector<int> registers, std::vector<Complex> amplitudes) {
    if (amplitudes.empty()) amplitudes.assign(registers.size(), Complex{0.0, 0.0});
    if (amplitudes.size() != registers.size()) throw InvalidInput("one amplitude per register required");
    FockTerm term;
    term.coherent = std::move(amplitudes);
    term.amplitude = 1.0;
    return PhotonicState(std::move(registers), {std::move(term)});
}

bool PhotonicState::has_register(int id) const noexcept {
    return std::find(registers_.begin(), registers_.end(), id) != registers_.end();
}

std::size_t PhotonicState::register_slot(int id) const {
    auto it = std::find(registers_.begin(), registers_.end(), id);
    if (it == registers_.end()) throw InvalidInput("unknown register " + std::to_string(id));
    return static_cast<std::size_t>(it - registers_.begin());
}

PhotonicState PhotonicState::with_born_weight(double weight) const {
    return PhotonicState(registers_, terms_, weight);
}

double QutritCoefficients::norm_squared() const noexcept {
    return std::norm(alpha) + std::norm(beta) + std::norm(gamma);
}

void QutritCoefficients::validate() const {
    if (std::abs(norm_squared() - 1.0) > kNormalizationTolerance) {
        std::ostringstream os;
        os.precision(17);
        os << "qutrit coefficients are not normalized: |a|^2+|b|^2+|c|^2 = " << norm_squared();
        throw InvalidInput(os.str());
    }
}

QutritCoefficients QutritCoefficients::normalized(Complex alpha, Complex beta, Complex gamma) {
    const double n = std::sqrt(std::norm(alpha) + std::norm(beta) + std::norm(gamma));
    if (!(n > 0.0) || !std::isfinite(n)) throw InvalidInput("cannot normalize a zero qutrit");
    return {alpha / n, beta / n, gamma / n};
}

PhotonicState make_biphotonic_qutrit(const QutritCoefficients& c, const std::string& path) {
    c.validate();
    const auto h = mode(path, Polarization::H);
    const auto v = mode(path, Polarization::V);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<FockTerm> terms;
    terms.push_back(FockTerm{{{h, 2}}, {}, {}, c.alpha * inv_sqrt2});
    terms.push_back(FockTerm{{{h, 1}, {v, 1}}, {}, {}, c.beta});
    terms.push_back(FockTerm{{{v, 2}}, {}, {}, c.gamma * inv_sqrt2});
    return canonicalize(PhotonicState({}, std::move(terms)));
}

PhotonicState make_spatial_qutrit(const QutritCoefficients& c, std::span<const std::string> paths, Polarization pol) {
    c.validate();
    if (paths.size() != 3) throw InvalidInput("a spatial qutrit needs exactly three paths");
    if (paths[0] == paths[1] || paths[0] == paths[2] || paths[1] == paths[2]) {
        throw InvalidInput("spatial qutrit paths must be distinct");
    }
    const Complex amps[3] = {c.alpha, c.beta, c.gamma};
    std::vector<FockTerm> terms;
    for (int k = 0; k < 3; ++k) terms.push_back(FockTerm{{{mode(paths[k], pol), 1}}, {}, {}, amps[k]});
    return canonicalize(PhotonicState({}, std::move(terms)));
}

PhotonicState create_photon(const PhotonicState& s, std::span<const std::pair<ModeId, Complex>> superposition) {
    std::vector<FockTerm> out;
    out.reserve(s.terms().size() * superposition.size());
    for (const auto& term : s.terms()) {
        for (const auto& [m, coeff] : superposition) {
            FockTerm t = term;
            t.occupations[m] += 1;
            t.amplitude *= coeff;
            out.push_back(std::move(t));
        }
    }
    return canonicalize(PhotonicState(s.registers(), std::move(out), s.born_weight()));
}

PhotonicState create_photon(const PhotonicState& s, const ModeId& m) {
    const std::pair<ModeId, Complex> single[] = {{m, Complex{1.0, 0.0}}};
    return create_photon(s, single);
}

Complex inner_product(const PhotonicState& bra, const PhotonicState& ket) {
    if (bra.registers().size() != ket.registers().size()) {
        throw InvalidInput("inner product between states with different register counts");
    }
    const auto blocks = index_blocks(ket.terms());
    Complex acc{0.0, 0.0};
    for (const auto& b : bra.terms()) {
        auto it = blocks.find({b.occupations, b.record});
        if (it == blocks.end()) continue;
        Complex block{0.0, 0.0};
        for (auto j : it->second) {
            const auto& k = ket.terms()[j];
            block += k.amplitude * coherent_product(b.coherent, k.coherent);
        }
        acc += std::conj(b.amplitude) * block * monomial_norm_squared(b.occupations);
    }
    return acc;
}

double norm_squared(const PhotonicState& s) { return std::max(0.0, inner_product(s, s).real()); }

PhotonicState normalized(const PhotonicState& s) {
    const double n2 = norm_squared(s);
    if (!(n2 > 0.0)) throw InvalidInput("cannot normalize a zero state");
    return scaled(s, Complex{1.0 / std::sqrt(n2), 0.0});
}

PhotonicState scaled(const PhotonicState& s, Complex factor) {
    auto terms = s.terms();
    for (auto& t : terms) t.amplitude *= factor;
    return canonicalize(PhotonicState(s.registers(), std::move(terms), s.born_weight()));
}

PhotonicState sum(const PhotonicState& a, const PhotonicState& b) {
    if (a.registers() != b.registers()) throw InvalidInput("cannot add states with different registers");
    auto terms = a.terms();
    terms.insert(terms.end(), b.terms().begin(), b.terms().end());
    return canonicalize(PhotonicState(a.registers(), std::move(terms), a.born_weight()));
}

double fidelity(const PhotonicState& s, const PhotonicState& target) {
    for (const auto& t : target.terms()) {
        if (!t.record.empty()) throw InvalidInput("fidelity target must not carry measurement records");
    }
    const bool trace_registers = target.registers().empty();
    if (!trace_registers && target.registers().size() != s.registers().size()) {
        throw InvalidInput("fidelity target and state declare different register counts");
    }
    const double ns = norm_squared(s);
    const double nt = norm_squared(target);
    if (!(ns > 0.0) || !(nt > 0.0)) throw InvalidInput("fidelity of a zero state is undefined");

    // u_i = c_i <target | m_i (, beta_i)>
    std::vector<Complex> u(s.terms().size());
    if (trace_registers) {
        std::map<Occupations, std::vector<std::size_t>> index;
        for (std::size_t k = 0; k < target.terms().size(); ++k) index[target.terms()[k].occupations].push_back(k);
        for (std::size_t i = 0; i < s.terms().size(); ++i) u[i] = photonic_overlap(index, target.terms(), s.terms()[i]);
    } else {
        for (std::size_t i = 0; i < s.terms().size(); ++i) {
            const auto& term = s.terms()[i];
            Complex acc{0.0, 0.0};
            for (const auto& t : target.terms()) {
                if (t.occupations != term.occupations) continue;
                acc += std::conj(t.amplitude) * coherent_product(t.coherent, term.coherent);
            }
            u[i] = acc * term.amplitude * monomial_norm_squared(term.occupations);
        }
    }

    std::map<std::string, std::vector<std::size_t>> by_record;
    for (std::size_t i = 0; i < s.terms().size(); ++i) {
        if (std::abs(u[i]) > 0.0) by_record[s.terms()[i].record].push_back(i);
    }
    double acc = 0.0;
    for (const auto& [record, idx] : by_record) {
        if (!trace_registers) {
            Complex block{0.0, 0.0};
            for (auto i : idx) block += u[i];
            acc += std::norm(block);
            continue;
        }
        Complex block{0.0, 0.0};
        for (auto i : idx) {
            for (auto j : idx) {
                block += u[i] * std::conj(u[j]) * coherent_product(s.terms()[j].coherent, s.terms()[i].coherent);
            }
        }
        acc += block.real();
    }
    return std::clamp(acc / (ns * nt), 0.0, 1.0);
}

PhotonicState canonicalize(const PhotonicState& s) {
    std::vector<FockTerm> terms;
    terms.reserve(s.terms().size());
    for (auto t : s.terms()) {
        std::erase_if(t.occupations, [](const auto& kv) { return kv.second == 0; });
        terms.push_back(std::move(t));
    }
    std::sort(terms.begin(), terms.end(), [](const FockTerm& a, const FockTerm& b) {
        if (a.occupations != b.occupations) return a.occupations < b.occupations;
        if (a.record != b.record) return a.record < b.record;
        return coherent_less(a.coherent, b.coherent);
    });

    std::vector<FockTerm> merged;
    merged.reserve(terms.size());
    std::size_t block_start = 0;
    for (auto& t : terms) {
        if (merged.empty() || merged.back().occupations != t.occupations || merged.back().record != t.record) {
            block_start = merged.size();
            merged.push_back(std::move(t));
            continue;
        }
        bool absorbed = false;
        for (std::size_t k = block_start; k < merged.size(); ++k) {
            if (coherent_close(merged[k].coherent, t.coherent)) {
                merged[k].amplitude += t.amplitude;
                absorbed = true;
                break;
            }
        }
        if (!absorbed) merged.push_back(std::move(t));
    }
    std::erase_if(merged, [](const FockTerm& t) { return std::abs(t.amplitude) < kPruneThreshold; });
    return PhotonicState(s.registers(), std::move(merged), s.born_weight());
}

PhotonicState collapse_records(const PhotonicState& s) {
    std::map<std::string, std::vector<FockTerm>> blocks;
    for (const auto& t : s.terms()) blocks[t.record].push_back(t);
    if (blocks.empty() || (blocks.size() == 1 && blocks.begin()->first.empty())) return s;

    auto strip = [&](std::vector<FockTerm> terms) {
        for (auto& t : terms) t.record.clear();
        return PhotonicState(s.registers(), std::move(terms), s.born_weight());
    };
    std::vector<PhotonicState> parts;
    std::vector<double> norms;
    double total = 0.0;
    std::size_t largest = 0;
    for (auto& [record, terms] : blocks) {
        parts.push_back(strip(std::move(terms)));
        norms.push_back(norm_squared(parts.back()));
        total += norms.back();
        if (norms.back() > norms[largest]) largest = norms.size() - 1;
    }
    const PhotonicState& reference = parts[largest];
    const double n_ref = norms[largest];
    if (!(n_ref > 0.0)) return s;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        // Blocks at the rounding floor have lost terms to pruning; they
        // cannot be compared but also cannot matter.
        if (k == largest || norms[k] <= kNegligibleRecordWeight * total) continue;
        const double overlap = std::norm(inner_product(reference, parts[k]));
        if (overlap < (1.0 - 1e-10) * n_ref * norms[k]) return s;
    }
    return scaled(reference, Complex{std::sqrt(total / n_ref), 0.0});
}

std::set<std::string> occupied_paths(const PhotonicState& s) {
    std::set<std::string> out;
    for (const auto& t : s.terms()) {
        for (const auto& [m, count] : t.occupations) {
            if (count > 0) out.insert(m.path);
        }
    }
    return out;
}

int max_photon_number(const PhotonicState& s) noexcept {
    int n = 0;
    for (const auto& t : s.terms()) n = std::max(n, total_photons(t));
    return n;
}

std::string to_string(const PhotonicState& s) {
    std::ostringstream os;
    os.precision(6);
    if (s.is_zero()) return "0";
    bool first = true;
    for (const auto& t : s.terms()) {
        if (!first) os << "\n+ ";
        first = false;
        os << "(" << t.amplitude.real() << (t.amplitude.imag() < 0 ? "-" : "+") << std::abs(t.amplitude.imag()) << "i)";
        if (t.occupations.empty()) os << " |vac>";
        for (const auto& [m, count] : t.occupations) {
            os << " a+[" << to_string(m) << "]";
            if (count > 1) os << "^" << count;
        }
        if (!t.coherent.empty()) {
            os << " {";
            for (std::size_t k = 0; k < t.coherent.size(); ++k) {
                if (k) os << ", ";
                os << t.coherent[k];
            }
            os << "}";
        }
        if (!t.record.empty()) os << " <" << t.record << ">";
    }
    return os.str();
}

} // namespace biphoton
