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

"""Locally private frequency estimation: oracles, sketches, heavy hitters."""

from ._core import (
    Stack,
    audit_privacy,
    evaluate,
    figure_names,
    gen_zipf,
    heavy_hitters,
    hm_optimal_t,
    oracle_names,
    oracle_params,
    post_process,
    run_experiment,
    theoretical_variance,
    zipf_weights,
)

__all__ = [
    "Stack",
    "audit_privacy",
    "evaluate",
    "figure_names",
    "gen_zipf",
    "heavy_hitters",
    "hm_optimal_t",
    "oracle_names",
    "oracle_params",
    "post_process",
    "run_experiment",
    "theoretical_variance",
    "zipf_weights",
]
