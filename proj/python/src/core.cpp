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

// Thin bindings; reports cross the boundary as JSON text.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lazyhaar/harness.hpp"
#include "lazyhaar/symmetric.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
    m.doc() = "lazyhaar native core";
    m.attr("__version__") = lazyhaar::library_version();

    static py::exception<lazyhaar::ConfigError> config_error(m, "ConfigError", PyExc_ValueError);
    static py::exception<lazyhaar::Error> lazyhaar_error(m, "LazyhaarError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const lazyhaar::ConfigError &e) {
            py::set_error(config_error, e.what());
        } catch (const lazyhaar::Error &e) {
            py::set_error(lazyhaar_error, e.what());
        }
    });

    m.def("experiment_names", &lazyhaar::experiment_names);
    m.def(
        "run_experiment",
        [](const std::string &config_json) {
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(config_json);
            } catch (const nlohmann::json::exception &e) {
                throw lazyhaar::ConfigError(std::string("config: ") + e.what());
            }
            lazyhaar::Report r;
            {
                py::gil_scoped_release release;
                r = lazyhaar::run(lazyhaar::ExperimentConfig::from_json(j));
            }
            return r.to_json().dump();
        },
        py::arg("config_json"), "Run an experiment from a JSON config string; returns the JSON report.");
    m.def("sym_dim", &lazyhaar::sym_dim, py::arg("n"), py::arg("t"));
}
