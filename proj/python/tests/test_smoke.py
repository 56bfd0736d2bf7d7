# Copyright 2026 The ldpfreq Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import pytest

import ldpfreq


def test_oracle_params_closed_form():
    p = ldpfreq.oracle_params("DE", math.log(3), 4)
    assert p["p_star"] == pytest.approx(0.5)
    assert p["q_star"] == pytest.approx(1 / 6)
    assert ldpfreq.oracle_params("OLH", 3.0, 100)["g"] == round(math.exp(3)) + 1


def test_theoretical_variance_oue():
    e = math.exp(1.0)
    assert ldpfreq.theoretical_variance("OUE", 1.0, 10) == pytest.approx(
        4 * e / (e - 1) ** 2)


def test_bad_arguments_raise_value_error():
    with pytest.raises(ValueError):
        ldpfreq.oracle_params("XYZ", 1.0, 10)
    with pytest.raises(ValueError):
        ldpfreq.Stack(oracle="OLH", eps=-1.0, d=10)


def test_audit_is_tight():
    audit = ldpfreq.audit_privacy("OUE", 1.0, 5)
    assert audit["ok"]
    assert audit["max_ratio"] == pytest.approx(math.exp(1.0))


def test_stack_estimates_track_truth():
    items, truth = ldpfreq.gen_zipf(20000, 64, 1.1, seed=5)
    assert sum(truth) == 20000 and len(items) == 20000
    stack = ldpfreq.Stack(oracle="OUE", eps=4.0, d=64)
    est = stack.estimate(items, seed=9)
    assert len(est) == 64
    assert abs(est[0] - truth[0]) < 6 * math.sqrt(
        20000 * ldpfreq.theoretical_variance("OUE", 4.0, 64))
    # Same seed, same estimates.
    assert stack.estimate(items, seed=9) == est


def test_sketched_stack_and_queries():
    items, truth = ldpfreq.gen_zipf(20000, 5000, 1.3, seed=1)
    stack = ldpfreq.Stack(oracle="OLH", eps=4.0, d=5000, sketch="cm", r=8, c=256,
                          combine="mean")
    assert stack.sketched
    top = stack.estimate_items(items, [0, 1], seed=2)
    assert top[0] > top[1] > 0


def test_post_process_simplex():
    out = ldpfreq.post_process([5.0, -1.0, 1.0], 4.0, "simplex")
    assert sum(out) == pytest.approx(4.0)
    assert min(out) >= 0.0


def test_run_experiment_rows():
    rows = ldpfreq.run_experiment(oracle="OLH", d=64, n=2000, trials=2, seed=3)
    assert len(rows) == 3
    assert rows[-1]["mse"] > 0
    assert "oue" not in ldpfreq.oracle_names()
    assert "OUE" in ldpfreq.oracle_names()
    assert ldpfreq.figure_names()


def test_heavy_hitters_finds_dominant_word():
    population = ["hello"] * 3000 + ["world"] * 2000 + ["other"] * 50
    found = ldpfreq.heavy_hitters(population, protocol="pem", eps=5.0,
                                  alphabet="dehlorwt", max_len=5, top=3,
                                  oracle="OLH", seed=11)
    assert "hello" in [value for value, _ in found]
