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

// Runs the acceptance criteria from the configs/ directory and prints one PASS/FAIL
// line per criterion. Usage: acceptance [all | 1..8] [config-dir]

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lazyhaar/harness.hpp"

#ifndef LAZYHAAR_CONFIG_DIR
#define LAZYHAAR_CONFIG_DIR "configs"
#endif

namespace {

struct Criterion {
    int id;
    const char *title;
    const char *config;
    double time_limit;
};

const std::vector<Criterion> kCriteria = {
    {1, "symmetric basis suite", "criterion1_sym_selftest.json", 10},
    {2, "symmetric increment isometry", "criterion2_sym_increment.json", 30},
    {3, "state sampler indistinguishability", "criterion3_state_distinguish.json", 600},
    {4, "state preparation bounds", "criterion4_prep_check.json", 10},
    {5, "design verification", "criterion5_design_check.json", 300},
    {6, "unitary sampler equivalence", "criterion6_unitary_distinguish.json", 600},
    {7, "money suite", "criterion7_money_suite.json", 120},
    {8, "determinism", "criterion8_determinism.json", 600},
};

bool run_one(const Criterion &c, const std::string &dir) {
    std::string path = dir + "/" + c.config;
    std::string summary;
    bool ok = false;
    try {
        std::ifstream in(path);
        if (!in) {
            throw lazyhaar::ConfigError("cannot open " + path);
        }
        auto cfg = lazyhaar::ExperimentConfig::from_json(nlohmann::json::parse(in));
        auto report = lazyhaar::run(cfg);
        std::size_t failed = 0;
        std::string first;
        for (const auto &ch : report.checks) {
            if (!ch.pass) {
                if (failed++ == 0) {
                    char buf[256];
                    std::snprintf(buf, sizeof buf, "%s=%.6g > %.3g", ch.name.c_str(), ch.value, ch.tolerance);
                    first = buf;
                }
            }
        }
        bool in_time = report.seconds <= c.time_limit;
        ok = failed == 0 && in_time;
        char buf[160];
        std::snprintf(buf, sizeof buf, "%zu/%zu checks, %.2f s (limit %.0f s)", report.checks.size() - failed,
                      report.checks.size(), report.seconds, c.time_limit);
        summary = buf;
        if (failed) {
            summary += "; first failure " + first;
        }
        if (!in_time) {
            summary += "; over time limit";
        }
    } catch (const std::exception &e) {
        summary = std::string("error: ") + e.what();
    }
    std::cout << "criterion " << c.id << " " << (ok ? "PASS" : "FAIL") << " " << c.title << ": " << summary
              << std::endl;
    return ok;
}

}  // namespace

int main(int argc, char **argv) {
    std::string which = argc > 1 ? argv[1] : "all";
    std::string dir = argc > 2 ? argv[2] : LAZYHAAR_CONFIG_DIR;
    bool all_ok = true, matched = false;
    for (const auto &c : kCriteria) {
        if (which == "all" || which == std::to_string(c.id)) {
            matched = true;
            all_ok = run_one(c, dir) && all_ok;
        }
    }
    if (!matched) {
        std::cerr << "unknown criterion '" << which << "'\n";
        return 2;
    }
    return all_ok ? 0 : 1;
}
