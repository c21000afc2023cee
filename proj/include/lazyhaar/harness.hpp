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

#ifndef LAZYHAAR_HARNESS_HPP
#define LAZYHAAR_HARNESS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lazyhaar/common.hpp"

namespace lazyhaar {

/// Malformed experiment configuration; the message starts with the offending location.
class ConfigError : public Error {
   public:
    using Error::Error;
};

struct ExperimentConfig {
    std::string experiment;
    std::size_t n = 1;
    /// Experiment-specific order or copy count; unset means the experiment's default sweep.
    std::optional<std::size_t> t;
    double epsilon = 1e-8;
    std::uint64_t seed = 1;
    double tolerance_scale = 1;
    /// Per-check tolerance overrides, by check name.
    std::map<std::string, double> tolerances;
    /// Experiment parameters (scripts, adversaries, sample counts).
    nlohmann::json params = nlohmann::json::object();
    std::string out;

    static ExperimentConfig from_json(const nlohmann::json &j);
    nlohmann::json to_json() const;
};

struct Check {
    std::string name;
    double value = 0;
    double tolerance = 0;
    bool pass = false;
};

struct Report {
    ExperimentConfig config;
    std::vector<Check> checks;
    nlohmann::json details = nlohmann::json::object();
    double seconds = 0;
    std::string version;
    bool pass() const;
    /// Everything except timing; identical for identical configs.
    nlohmann::json payload() const;
    nlohmann::json to_json() const;
};

std::vector<std::string> experiment_names();
/// Runs the named experiment. Checks pass when value <= tolerance, with tolerance the
/// override (if any) or the default, times tolerance_scale.
Report run(const ExperimentConfig &config);

std::string library_version();

}  // namespace lazyhaar

#endif
