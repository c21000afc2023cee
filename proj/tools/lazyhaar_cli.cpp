// Copyright 2026 The lazyhaar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Experiment driver. Exit status: 0 pass, 1 a check failed, 2 bad configuration,
// 3 a cap or domain limit was hit.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lazyhaar/harness.hpp"

namespace {

using nlohmann::json;

struct Options {
    std::string experiment;
    std::string config_file;
    std::optional<std::uint64_t> seed;
    std::optional<double> tolerance_scale;
    std::optional<double> epsilon;
    std::optional<std::size_t> n;
    std::optional<std::size_t> t;
    std::string out;
    std::vector<std::string> params;
    std::string script_file;
    std::string builtin;
    bool quiet = false;
};

json load_config(const Options &o) {
    json j = json::object();
    if (!o.config_file.empty()) {
        std::ifstream in(o.config_file);
        if (!in) {
            throw lazyhaar::ConfigError("--config: cannot open '" + o.config_file + "'");
        }
        try {
            j = json::parse(in);
        } catch (const json::exception &e) {
            throw lazyhaar::ConfigError(o.config_file + ": " + e.what());
        }
        if (!j.is_object()) {
            throw lazyhaar::ConfigError(o.config_file + ": expected an object");
        }
    }
    if (!o.experiment.empty()) {
        j["experiment"] = o.experiment;
    }
    if (o.seed) {
        j["seed"] = *o.seed;
    }
    if (o.tolerance_scale) {
        j["tolerance_scale"] = *o.tolerance_scale;
    }
    if (o.epsilon) {
        j["epsilon"] = *o.epsilon;
    }
    if (o.n) {
        j["n"] = *o.n;
    }
    if (o.t) {
        j["t"] = *o.t;
    }
    if (!o.out.empty()) {
        j["out"] = o.out;
    }
    if (!j.contains("params")) {
        j["params"] = json::object();
    }
    for (const auto &kv : o.params) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw lazyhaar::ConfigError("--param: expected key=value, got '" + kv + "'");
        }
        std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
        // Values are JSON when they parse, strings otherwise.
        json v = json::parse(value, nullptr, false);
        j["params"][key] = v.is_discarded() ? json(value) : v;
    }
    if (!o.script_file.empty()) {
        j["params"]["script_file"] = o.script_file;
    }
    if (!o.builtin.empty()) {
        j["params"]["builtin"] = o.builtin;
    }
    return j;
}

int execute(const Options &o) {
    try {
        auto cfg = lazyhaar::ExperimentConfig::from_json(load_config(o));
        auto report = lazyhaar::run(cfg);
        json j = report.to_json();
        if (!cfg.out.empty()) {
            std::ofstream f(cfg.out);
            if (!f) {
                throw lazyhaar::ConfigError("--out: cannot write '" + cfg.out + "'");
            }
            f << j.dump(2) << "\n";
        }
        if (!o.quiet) {
            std::cout << j.dump(2) << "\n";
        }
        for (const auto &c : report.checks) {
            if (!c.pass) {
                std::cerr << "FAIL " << c.name << ": " << c.value << " > " << c.tolerance << "\n";
            }
        }
        std::cerr << cfg.experiment << ": " << (report.pass() ? "pass" : "FAIL") << " (" << report.checks.size()
                  << " checks, " << report.seconds << " s)\n";
        return report.pass() ? 0 : 1;
    } catch (const lazyhaar::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const lazyhaar::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

void add_common(CLI::App *app, Options &o) {
    app->add_option("--config", o.config_file, "JSON experiment config");
    app->add_option("--seed", o.seed, "RNG seed");
    app->add_option("--out", o.out, "write the JSON report here");
    app->add_option("--tolerance-scale", o.tolerance_scale, "multiply every tolerance");
    app->add_option("--epsilon", o.epsilon, "sampler precision");
    app->add_option("--n", o.n, "qubits per register");
    app->add_option("--t", o.t, "order or copy count");
    app->add_option("--param", o.params, "experiment parameter key=value (value parsed as JSON when possible)");
    app->add_flag("--quiet", o.quiet, "do not print the report to stdout");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"lazyhaar experiment driver"};
    app.set_version_flag("--version", lazyhaar::library_version());
    Options o;
    add_common(&app, o);
    app.add_option("--experiment", o.experiment, "experiment name (alternative to a subcommand)");
    app.require_subcommand(0, 1);

    std::vector<std::pair<CLI::App *, std::string>> subs;
    for (const auto &name : lazyhaar::experiment_names()) {
        auto *sub = app.add_subcommand(name, "run the " + name + " experiment");
        add_common(sub, o);
        if (name == "state-distinguish" || name == "unitary-distinguish") {
            sub->add_option("--script", o.script_file, "JSON script file");
        }
        if (name == "design-check") {
            sub->add_option("--builtin", o.builtin, "built-in design name");
        }
        subs.emplace_back(sub, name);
    }
    auto *list = app.add_subcommand("list", "list experiments");

    CLI11_PARSE(app, argc, argv);

    if (list->parsed()) {
        for (const auto &name : lazyhaar::experiment_names()) {
            std::cout << name << "\n";
        }
        return 0;
    }
    for (const auto &[sub, name] : subs) {
        if (sub->parsed()) {
            if (!o.experiment.empty() && o.experiment != name) {
                std::cerr << "config error: --experiment '" << o.experiment << "' conflicts with subcommand '" << name
                          << "'\n";
                return 2;
            }
            o.experiment = name;
        }
    }
    if (o.experiment.empty() && o.config_file.empty()) {
        std::cerr << app.help();
        return 2;
    }
    return execute(o);
}
