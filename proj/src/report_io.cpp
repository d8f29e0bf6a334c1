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

#include "biphoton/report_io.hpp"

#include "biphoton/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

namespace biphoton {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

json complex_to_json(Complex z) { return json::array({round_decimal(z.real()), round_decimal(z.imag())}); }

Complex complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    if (j.is_string()) return parse_complex(j.get<std::string>());
    throw InvalidInput("expected a number or [re, im], got " + j.dump());
}

std::string format_name(ReportFormat f) { return f == ReportFormat::kJson ? "json" : "csv"; }

ReportFormat parse_format(const std::string& s) {
    if (s == "json") return ReportFormat::kJson;
    if (s == "csv") return ReportFormat::kCsv;
    throw InvalidInput("unknown format '" + s + "' (json|csv)");
}

QutritCoefficients resolve_qutrit(const std::array<Complex, 3>& q) {
    const double n2 = std::norm(q[0]) + std::norm(q[1]) + std::norm(q[2]);
    if (std::abs(n2 - 1.0) > kConfigNormalizationTolerance) {
        throw InvalidInput("qutrit coefficients are not normalized (|a|^2+|b|^2+|c|^2 = " + format_decimal(n2) + ")");
    }
    return QutritCoefficients::normalized(q[0], q[1], q[2]);
}

SchemeReport dispatch(const RunConfig& c, const QutritCoefficients& q, const std::optional<Unitary3>& u) {
    const QubusSettings qubus{c.qubus_alpha, c.theta, c.meas_mode};
    if (c.scheme == "linear-forward") return scheme_linear_forward(q, c.t.value_or(balanced_parameters::linear_forward_t()));
    if (c.scheme == "linear-inverse") return scheme_linear_inverse(q, c.t1, c.t2, c.t3);
    if (c.scheme == "kerr-forward") {
        return scheme_kerr_forward(q, c.t.value_or(balanced_parameters::kerr_forward_t()), c.variant, qubus);
    }
    if (c.scheme == "kerr-inverse") return scheme_kerr_inverse(q, qubus);
    if (c.scheme == "u3") {
        U3Options o;
        o.backend = c.backend;
        if (c.t) {
            o.linear_t = *c.t;
            o.kerr_t = *c.t;
        }
        o.linear_inverse = {c.t1, c.t2, c.t3};
        o.variant = c.variant;
        o.qubus = qubus;
        return u3_biphotonic(q, u.value_or(Unitary3::identity()), o);
    }
    throw InvalidInput("unknown scheme '" + c.scheme + "'");
}

void set_numeric(RunConfig& c, const std::string& key, double v) {
    if (key == "t") {
        c.t = v;
    } else if (key == "t1") {
        c.t1 = v;
    } else if (key == "t2") {
        c.t2 = v;
    } else if (key == "t3") {
        c.t3 = v;
    } else if (key == "theta") {
        c.theta = v;
    } else if (key == "qubus_alpha") {
        c.qubus_alpha = v;
    } else if (key == "alpha_theta") {
        if (!(c.theta > 0.0)) throw InvalidInput("alpha_theta needs a positive theta");
        c.qubus_alpha = v / c.theta;
    } else {
        throw InvalidInput("unknown parameter '" + key + "'");
    }
}

} // namespace

const std::vector<std::string>& scheme_names() {
    static const std::vector<std::string> names{"linear-forward", "linear-inverse", "kerr-forward", "kerr-inverse",
                                                "u3"};
    return names;
}

const std::vector<std::string>& numeric_parameters() {
    static const std::vector<std::string> names{"t", "t1", "t2", "t3", "theta", "qubus_alpha"};
    return names;
}

double parse_double(const std::string& text) {
    const std::string s = trim(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw InvalidInput("not a number: '" + text + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw InvalidInput("not a finite number: '" + text + "'");
    return v;
}

Complex parse_complex(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return {parse_double(text), 0.0};
    return {parse_double(text.substr(0, comma)), parse_double(text.substr(comma + 1))};
}

void set_parameter(RunConfig& config, const std::string& key, const std::string& value) {
    if (key == "variant") {
        config.variant = parse_variant(value);
    } else if (key == "meas_mode") {
        config.meas_mode = parse_measurement_mode(value);
    } else if (key == "backend") {
        config.backend = parse_backend(value);
    } else if (key == "alpha_theta" || std::count(numeric_parameters().begin(), numeric_parameters().end(), key)) {
        set_numeric(config, key, parse_double(value));
    } else {
        throw InvalidInput("unknown parameter '" + key + "'");
    }
}

Eigen::Matrix3cd matrix_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) throw InvalidInput("matrix must be an array of 3 rows");
    Eigen::Matrix3cd m;
    for (int r = 0; r < 3; ++r) {
        const auto& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || row.size() != 3) throw InvalidInput("matrix row " + std::to_string(r) + " needs 3 entries");
        for (int c = 0; c < 3; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
    }
    return m;
}

Eigen::Matrix3cd read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open matrix file '" + path + "'");
    try {
        return matrix_from_json(json::parse(in));
    } catch (const json::exception& e) {
        throw InvalidInput("malformed matrix file '" + path + "': " + e.what());
    }
}

json matrix_to_json(const Eigen::Matrix3cd& m) {
    json rows = json::array();
    for (int r = 0; r < 3; ++r) {
        json row = json::array();
        for (int c = 0; c < 3; ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

RunConfig run_config_from_json(const json& j) {
    if (!j.is_object()) throw InvalidInput("config must be a JSON object");
    static const std::vector<std::string> known{"scheme", "alpha", "beta", "gamma", "random", "seed",
                                                "params", "matrix", "format", "out"};
    for (const auto& [k, v] : j.items()) {
        (void)v;
        if (!std::count(known.begin(), known.end(), k)) throw InvalidInput("unknown config key '" + k + "'");
    }
    RunConfig c;
    try {
        if (j.contains("scheme")) c.scheme = j.at("scheme").get<std::string>();
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        const int given = static_cast<int>(j.contains("alpha")) + j.contains("beta") + j.contains("gamma");
        if (given) {
            if (j.value("random", false)) throw InvalidInput("config sets both explicit coefficients and random");
            c.qutrit = std::array<Complex, 3>{j.contains("alpha") ? complex_from_json(j["alpha"]) : Complex{},
                                              j.contains("beta") ? complex_from_json(j["beta"]) : Complex{},
                                              j.contains("gamma") ? complex_from_json(j["gamma"]) : Complex{}};
        }
        if (j.contains("params")) {
            for (const auto& [k, v] : j.at("params").items()) {
                set_parameter(c, k, v.is_string() ? v.get<std::string>() : v.dump());
            }
        }
        if (j.contains("matrix")) {
            const auto& m = j.at("matrix");
            if (m.is_string() && m.get<std::string>() == "random") {
                c.random_matrix = true;
            } else if (m.is_string()) {
                c.matrix = read_matrix_file(m.get<std::string>());
            } else {
                c.matrix = matrix_from_json(m);
            }
        }
        if (j.contains("format")) c.format = parse_format(j.at("format").get<std::string>());
        if (j.contains("out")) c.out = j.at("out").get<std::string>();
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed config: ") + e.what());
    }
    return c;
}

json to_json(const RunConfig& c) {
    json j;
    j["scheme"] = c.scheme;
    j["seed"] = c.seed;
    if (c.qutrit) {
        j["alpha"] = complex_to_json((*c.qutrit)[0]);
        j["beta"] = complex_to_json((*c.qutrit)[1]);
        j["gamma"] = complex_to_json((*c.qutrit)[2]);
    } else {
        j["random"] = true;
    }
    json p;
    if (c.t) p["t"] = *c.t;
    p["t1"] = c.t1;
    p["t2"] = c.t2;
    p["t3"] = c.t3;
    p["theta"] = c.theta;
    p["qubus_alpha"] = c.qubus_alpha;
    p["variant"] = to_string(c.variant);
    p["meas_mode"] = to_string(c.meas_mode);
    p["backend"] = to_string(c.backend);
    j["params"] = p;
    if (c.random_matrix) {
        j["matrix"] = "random";
    } else if (c.matrix) {
        j["matrix"] = matrix_to_json(*c.matrix);
    }
    j["format"] = format_name(c.format);
    if (!c.out.empty()) j["out"] = c.out;
    return j;
}

RunResult execute(const RunConfig& config) {
    if (!std::count(scheme_names().begin(), scheme_names().end(), config.scheme)) {
        throw InvalidInput("unknown scheme '" + config.scheme + "'");
    }
    if ((config.matrix || config.random_matrix) && config.scheme != "u3") {
        throw InvalidInput("a matrix only applies to the u3 scheme");
    }
    Rng rng(config.seed);
    RunResult r{config, {}, std::nullopt, {}};
    r.input = config.qutrit ? resolve_qutrit(*config.qutrit) : random_qutrit(rng);
    if (config.random_matrix) {
        r.unitary = haar_unitary3(rng);
    } else if (config.matrix) {
        r.unitary = Unitary3::from_matrix(*config.matrix);
    } else if (config.scheme == "u3") {
        r.unitary = Unitary3::identity();
    }
    r.report = dispatch(config, r.input, r.unitary);
    return r;
}

json to_json(const PhotonicState& s) {
    json terms = json::array();
    for (const auto& t : s.terms()) {
        json modes = json::object();
        for (const auto& [m, n] : t.occupations) modes[to_string(m)] = n;
        json registers = json::array();
        for (const auto& a : t.coherent) registers.push_back(complex_to_json(a));
        json term{{"amplitude", complex_to_json(t.amplitude)}, {"modes", modes}};
        if (!registers.empty()) term["registers"] = registers;
        if (!t.record.empty()) term["record"] = t.record;
        terms.push_back(term);
    }
    return terms;
}

json to_json(const RunResult& r) {
    const auto& rep = r.report;
    json j;
    j["scheme"] = rep.scheme;
    j["seed"] = r.config.seed;
    j["input"] = {{"alpha", complex_to_json(r.input.alpha)},
                  {"beta", complex_to_json(r.input.beta)},
                  {"gamma", complex_to_json(r.input.gamma)}};
    j["unitary"] = r.unitary ? matrix_to_json(r.unitary->matrix()) : json(nullptr);
    j["success_probability"] = round_decimal(rep.success_probability);
    j["output_fidelity"] = round_decimal(rep.output_fidelity);
    json params = json::object();
    for (const auto& [k, v] : rep.parameters) params[k] = round_decimal(v);
    j["parameters"] = params;
    j["settings"] = rep.settings;
    json log = json::array();
    for (const auto& e : rep.branch_log) {
        log.push_back({{"step", e.step}, {"outcome", e.outcome}, {"probability", round_decimal(e.probability)}});
    }
    j["branch_log"] = log;
    json diag = json::object();
    for (const auto& [k, v] : rep.diagnostics) diag[k] = round_decimal(v);
    j["diagnostics"] = diag;
    j["output_state"] = to_json(rep.output_state);
    j["target_state"] = to_json(rep.target_state);
    return j;
}

std::string render(const RunResult& r) {
    if (r.config.format == ReportFormat::kJson) return to_json(r).dump(2) + "\n";
    std::ostringstream os;
    os << "scheme,seed,success_probability,output_fidelity,logged_probability\n";
    os << r.report.scheme << ',' << r.config.seed << ',' << format_decimal(r.report.success_probability) << ','
       << format_decimal(r.report.output_fidelity) << ',' << format_decimal(r.report.logged_probability()) << '\n';
    return os.str();
}

std::vector<SweepRow> run_sweep(const RunConfig& base, const std::string& axis, const std::vector<double>& values) {
    if (values.empty()) throw InvalidInput("sweep needs at least one value");
    if (axis != "alpha_theta" && !std::count(numeric_parameters().begin(), numeric_parameters().end(), axis)) {
        throw InvalidInput("cannot sweep '" + axis + "'");
    }
    std::vector<RunConfig> configs;
    for (double v : values) {
        RunConfig c = base;
        set_numeric(c, axis, v);
        configs.push_back(std::move(c));
    }
    const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<SweepRow> rows(values.size());
    for (std::size_t start = 0; start < configs.size(); start += workers) {
        const std::size_t stop = std::min(configs.size(), start + workers);
        std::vector<std::future<SchemeReport>> pending;
        for (std::size_t i = start; i < stop; ++i) {
            pending.push_back(std::async(std::launch::async, [&configs, i] { return execute(configs[i]).report; }));
        }
        for (std::size_t i = start; i < stop; ++i) {
            const auto rep = pending[i - start].get();
            rows[i] = {values[i], rep.success_probability, rep.output_fidelity};
        }
    }
    return rows;
}

std::string sweep_csv(const std::string& axis, const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << axis << ",success_probability,output_fidelity\n";
    for (const auto& r : rows) {
        os << format_decimal(r.value) << ',' << format_decimal(r.success_probability) << ','
           << format_decimal(r.output_fidelity) << '\n';
    }
    return os.str();
}

std::string format_decimal(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double round_decimal(double v) {
    if (!std::isfinite(v)) return v;
    return std::strtod(format_decimal(v).c_str(), nullptr);
}

} // namespace biphoton
