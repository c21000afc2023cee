# Copyright 2026 The lazyhaar Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python front end for the lazyhaar experiment harness."""

import json

from lazyhaar._core import (
    ConfigError,
    LazyhaarError,
    __version__,
    experiment_names,
    sym_dim,
)
from lazyhaar._core import run_experiment as _run_experiment

__all__ = ["ConfigError", "LazyhaarError", "__version__", "experiment_names", "run", "sym_dim"]


def run(config=None, **fields):
    """Runs one experiment and returns the report as a dict.

    `config` is a dict (or JSON string); keyword fields override its top-level keys.
    """
    if isinstance(config, str):
        config = json.loads(config)
    merged = dict(config or {})
    merged.update(fields)
    return json.loads(_run_experiment(json.dumps(merged)))
