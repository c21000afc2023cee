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

import math

import pytest

import lazyhaar


def test_experiments_listed():
    names = lazyhaar.experiment_names()
    for name in ("sym-selftest", "state-distinguish", "unitary-distinguish", "money-suite"):
        assert name in names


def test_sym_dim():
    # C(2^n + t - 1, t)
    assert lazyhaar.sym_dim(1, 3) == 4
    assert lazyhaar.sym_dim(2, 2) == math.comb(5, 2)


def test_sym_selftest_passes():
    report = lazyhaar.run(experiment="sym-selftest", n=1, t=2)
    assert report["schema"] == "lazyhaar.report/1"
    assert report["pass"]
    assert all(c["pass"] for c in report["checks"])


def test_money_suite_is_deterministic():
    a = lazyhaar.run({"experiment": "money-suite", "seed": 3})
    b = lazyhaar.run({"experiment": "money-suite", "seed": 3})
    a.pop("timing")
    b.pop("timing")
    assert a == b


def test_config_error():
    with pytest.raises(lazyhaar.ConfigError, match="config.bogus"):
        lazyhaar.run(experiment="sym-selftest", bogus=1)
    with pytest.raises(ValueError):
        lazyhaar.run("{not json")
