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

// biphoton: run the qutrit conversion circuits from the command line.

#include "biphoton/acceptance.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/report_io.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace biphoton;

namespace {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kBadInput = 2, kBadWiring = 3, kUnsupported = 4 };

// Flags shared by run and sweep. Strings stay empty when not given so that
// config-file values survive.
struct CommonFlags {
    std::string config;
    std::string scheme;
    std::string alpha, beta, gamma;
    bool random = false;
    std::uint64_t seed = 0;
    std::vector<std::string> params;
    std::string matrix;
    std::string out;
    std::string format;
    CLI::Option* seed_opt = nullptr;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config, "JSON file with the same keys as the flags");
    cmd->add_option("--scheme", f.scheme, "linear-forward | linear-inverse | kerr-forward | kerr-inverse | u3");
    cmd->add_option("--alpha", f.alpha, "|HH> coefficient: re or re,im");
    cmd->add_option("--beta", f.beta, "|HV> coefficient");
    cmd->add_option("--gamma", f.gamma, "|VV> coefficient");
    cmd->add_flag("--random", f.random, "draw the qutrit from the seed");
    f.seed_opt = cmd->add_option("--seed", f.seed, "64-bit seed for every random draw");
    cmd->add_option("--param", f.params, "k=v; t, t1, t2, t3, theta, qubus_alpha, variant, meas_mode, backend");
    cmd->add_option("--matrix", f.matrix, "u3 only: JSON file with a 3x3 matrix, or 'random'");
    cmd->add_option("--out", f.out, "output file (default stdout)");
}

RunConfig build_config(const CommonFlags& f) {
    RunConfig c;
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        if (!in) throw InvalidInput("cannot open config '" + f.config + "'");
        try {
            c = run_config_from_json(nlohmann::json::parse(in));
        } catch (const nlohmann::json::exception& e) {
            throw InvalidInput("malformed config '" + f.config + "': " + e.what());
        }
    }
    if (!f.scheme.empty()) c.scheme = f.scheme;
    if (*f.seed_opt) c.seed = f.seed;
    const bool explicit_qutrit = !f.alpha.empty() || !f.beta.empty() || !f.gamma.empty();
    if (explicit_qutrit && f.random) throw InvalidInput("--random conflicts with explicit coefficients");
    if (explicit_qutrit) {
        auto value = [](const std::string& s) { return s.empty() ? Complex{} : parse_complex(s); };
        c.qutrit = std::array<Complex, 3>{value(f.alpha), value(f.beta), value(f.gamma)};
    }
    if (f.random) c.qutrit.reset();
    for (const auto& kv : f.params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw InvalidInput("--param expects k=v, got '" + kv + "'");
        set_parameter(c, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (f.matrix == "random") {
        c.random_matrix = true;
        c.matrix.reset();
    } else if (!f.matrix.empty()) {
        c.matrix = read_matrix_file(f.matrix);
        c.random_matrix = false;
    }
    if (!f.out.empty()) c.out = f.out;
    if (f.format == "json") c.format = ReportFormat::kJson;
    if (f.format == "csv") c.format = ReportFormat::kCsv;
    return c;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write '" + path + "'");
    out << text;
}

std::vector<double> parse_values(const std::string& list) {
    std::vector<double> v;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) v.push_back(parse_double(item));
    }
    return v;
}

void apply_override(AcceptanceOptions& o, const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw InvalidInput("--override expects k=v, got '" + kv + "'");
    const std::string k = kv.substr(0, eq);
    const double v = parse_double(kv.substr(eq + 1));
    if (k == "linear_t") {
        o.linear_forward_t = v;
    } else if (k == "t1") {
        o.linear_inverse.t1 = v;
    } else if (k == "t2") {
        o.linear_inverse.t2 = v;
    } else if (k == "t3") {
        o.linear_inverse.t3 = v;
    } else if (k == "kerr_t") {
        o.kerr_forward_t = v;
    } else if (k == "theta") {
        o.qubus.theta = v;
    } else if (k == "qubus_alpha") {
        o.qubus.qubus_alpha = v;
    } else {
        throw InvalidInput("unknown override '" + k + "'");
    }
}

nlohmann::json decomposition_json(const Unitary3& u) {
    const auto d = reck_decompose(u);
    nlohmann::json rot = nlohmann::json::array();
    for (const auto& r : d.rotations) {
        rot.push_back({{"modes", {r.p, r.q}}, {"theta", round_decimal(r.theta)}, {"phi", round_decimal(r.phi)}});
    }
    nlohmann::json phases = nlohmann::json::array();
    for (double p : d.output_phases) phases.push_back(round_decimal(p));
    return {{"matrix", matrix_to_json(u.matrix())},
            {"rotations", rot},
            {"output_phases", phases},
            {"recomposition_error", round_decimal((d.recompose() - u.matrix()).cwiseAbs().maxCoeff())}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bi-photonic / spatial qutrit conversion simulator"};
    app.require_subcommand(1);

    CommonFlags run_flags;
    auto* run = app.add_subcommand("run", "run one scheme and write its report");
    add_common(run, run_flags);
    run->add_option("--format", run_flags.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

    CommonFlags sweep_flags;
    std::string axis;
    std::string values;
    auto* sweep = app.add_subcommand("sweep", "run one scheme over a list of parameter values (CSV)");
    add_common(sweep, sweep_flags);
    sweep->add_option("--axis", axis, "t, t1, t2, t3, theta, qubus_alpha or alpha_theta")->required();
    sweep->add_option("--values", values, "comma-separated values")->required();

    bool verify_json = false;
    std::uint64_t verify_seed = AcceptanceOptions{}.seed;
    std::vector<std::string> overrides;
    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    verify->add_flag("--json", verify_json, "print the summary as JSON");
    verify->add_option("--seed", verify_seed, "suite seed");
    verify->add_option("--override", overrides, "k=v: linear_t, t1, t2, t3, kerr_t, theta, qubus_alpha");

    std::string decompose_matrix = "random";
    std::uint64_t decompose_seed = kDefaultSeed;
    auto* decompose = app.add_subcommand("decompose", "Reck decomposition of a 3x3 unitary (JSON)");
    decompose->add_option("--matrix", decompose_matrix, "JSON file with a 3x3 matrix, or 'random'");
    decompose->add_option("--seed", decompose_seed, "seed for 'random'");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            const auto config = build_config(run_flags);
            emit(render(execute(config)), config.out);
        } else if (*sweep) {
            const auto config = build_config(sweep_flags);
            const auto rows = run_sweep(config, axis, parse_values(values));
            emit(sweep_csv(axis, rows), config.out);
        } else if (*verify) {
            AcceptanceOptions o;
            o.seed = verify_seed;
            for (const auto& kv : overrides) apply_override(o, kv);
            const auto summary = run_acceptance(o);
            if (verify_json) {
                std::cout << to_json(summary).dump(2) << "\n";
            } else {
                for (const auto& c : summary.criteria) std::cout << format_line(c) << "\n";
                std::cout << (summary.all_passed() ? "all criteria passed" : "some criteria FAILED") << "\n";
            }
            return summary.all_passed() ? kOk : kVerifyFailed;
        } else if (*decompose) {
            Unitary3 u = Unitary3::identity();
            if (decompose_matrix == "random") {
                Rng rng(decompose_seed);
                u = haar_unitary3(rng);
            } else {
                u = Unitary3::from_matrix(read_matrix_file(decompose_matrix));
            }
            std::cout << decomposition_json(u).dump(2) << "\n";
        }
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const WiringError& e) {
        std::cerr << "wiring error: " << e.what() << "\n";
        return kBadWiring;
    } catch (const Unsupported& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kUnsupported;
    }
    return kOk;
}
