// Copyright 2026 The ldpfreq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python bindings for the ldpfreq core. Domain objects are exposed directly;
// experiment and heavy-hitter entry points take keyword arguments mirroring
// the CLI flags.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ldpfreq/bench.h"
#include "ldpfreq/hashing.h"
#include "ldpfreq/heavy_hitters.h"
#include "ldpfreq/oracles.h"
#include "ldpfreq/postprocess.h"
#include "ldpfreq/privacy_audit.h"
#include "ldpfreq/sketch.h"
#include "ldpfreq/stack.h"

namespace py = pybind11;
using namespace py::literals;

namespace ldpfreq {
namespace {

OracleOptions MakeOptions(int t, uint64_t k_prime, uint64_t hash_seed) {
  OracleOptions options;
  options.t = t;
  options.k_prime = k_prime;
  options.hash_seed = hash_seed;
  return options;
}

StackSpec MakeSpec(const std::string& oracle, int t, uint64_t k_prime,
                   uint64_t hash_seed, const std::optional<std::string>& sketch,
                   uint64_t r, uint64_t c, const std::string& combine,
                   uint64_t cohorts, uint64_t row_seed, double bloom_alpha) {
  StackSpec spec;
  spec.oracle = ParseOracleKind(oracle);
  spec.oracle_options = MakeOptions(t, k_prime, hash_seed);
  spec.bloom_alpha = bloom_alpha;
  if (sketch) {
    SketchOptions s;
    s.kind = ParseSketchKind(*sketch);
    s.r = r;
    s.c = c;
    s.combine = ParseCombine(combine);
    s.cohorts = cohorts;
    s.row_seed = row_seed;
    spec.sketch = s;
  }
  return spec;
}

py::dict ParamsDict(const PureParams& p) {
  return py::dict("oracle"_a = std::string(OracleName(p.kind)), "eps"_a = p.eps,
                  "d"_a = p.d, "p_star"_a = p.p_star, "q_star"_a = p.q_star,
                  "g"_a = p.g, "t"_a = p.t, "k_prime"_a = p.k_prime,
                  "hadamard_dim"_a = p.hadamard_dim);
}

py::dict MetricsDict(const Metrics& m) {
  return py::dict("mse"_a = m.mse, "k_mse"_a = m.k_mse,
                  "precision"_a = m.precision, "recall"_a = m.recall,
                  "f1"_a = m.f1, "time_client_ms"_a = m.time_client_ms,
                  "time_server_ms"_a = m.time_server_ms);
}

// Encodes every item with one client each and returns the decoded state.
StackState Collect(const FrequencyStack& stack,
                   const std::vector<uint64_t>& items, uint64_t seed) {
  StackState state(stack);
  Rng rng(seed);
  for (uint64_t x : items) state.Add(stack.Encode(x, rng));
  state.Finalize();
  return state;
}

py::list ResultRows(const ExperimentResult& result) {
  py::list rows;
  for (const TrialResult& row : result.rows) {
    py::dict d = MetricsDict(row.metrics);
    d["trial"] = row.trial;
    d["mse_sd"] = row.mse_sd;
    d["f1_sd"] = row.f1_sd;
    rows.append(d);
  }
  return rows;
}

}  // namespace
}  // namespace ldpfreq

PYBIND11_MODULE(_core, m) {
  using namespace ldpfreq;  // NOLINT
  m.doc() = "Locally private frequency estimation";

  // Argument errors surface as ValueError.
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const std::invalid_argument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("oracle_names", [] {
    std::vector<std::string> names;
    for (OracleKind kind : kAllOracleKinds) names.emplace_back(OracleName(kind));
    return names;
  });

  m.def(
      "oracle_params",
      [](const std::string& oracle, double eps, uint64_t d, int t,
         uint64_t k_prime, uint64_t hash_seed) {
        return ParamsDict(MakeOracleParams(ParseOracleKind(oracle), eps, d,
                                           MakeOptions(t, k_prime, hash_seed)));
      },
      "oracle"_a, "eps"_a, "d"_a, "t"_a = 0, "k_prime"_a = 10000,
      "hash_seed"_a = 0);

  m.def(
      "theoretical_variance",
      [](const std::string& oracle, double eps, uint64_t d, int t) {
        return TheoreticalVariance(ParseOracleKind(oracle), eps, d, t);
      },
      "oracle"_a, "eps"_a, "d"_a, "t"_a = 1);

  m.def("hm_optimal_t", &HmOptimalT, "eps"_a);

  m.def(
      "audit_privacy",
      [](const std::string& oracle, double eps, uint64_t d, int t,
         uint64_t k_prime, uint64_t max_hash_members) {
        const PureParams params = MakeOracleParams(
            ParseOracleKind(oracle), eps, d, MakeOptions(t, k_prime, 0));
        const PrivacyAudit a = AuditPrivacy(params, max_hash_members);
        return py::dict("max_ratio"_a = a.max_ratio, "bound"_a = a.bound,
                        "outputs"_a = a.outputs, "ok"_a = a.Satisfies());
      },
      "oracle"_a, "eps"_a, "d"_a, "t"_a = 0, "k_prime"_a = 16,
      "max_hash_members"_a = 16);

  m.def(
      "post_process",
      [](const std::vector<double>& estimates, double n, const std::string& method) {
        return PostProcess(estimates, n, ParsePostMethod(method));
      },
      "estimates"_a, "n"_a, "method"_a);

  py::class_<FrequencyStack>(m, "Stack")
      .def(py::init([](const std::string& oracle, double eps, uint64_t d, int t,
                       uint64_t k_prime, uint64_t hash_seed,
                       std::optional<std::string> sketch, uint64_t r, uint64_t c,
                       const std::string& combine, uint64_t cohorts,
                       uint64_t row_seed, double bloom_alpha) {
             return FrequencyStack(MakeSpec(oracle, t, k_prime, hash_seed, sketch,
                                            r, c, combine, cohorts, row_seed,
                                            bloom_alpha),
                                   eps, d);
           }),
           "oracle"_a = "OLH", "eps"_a = 3.0, "d"_a = 1024, "t"_a = 0,
           "k_prime"_a = 10000, "hash_seed"_a = 0, "sketch"_a = py::none(),
           "r"_a = 32, "c"_a = 1024, "combine"_a = "median", "cohorts"_a = 1,
           "row_seed"_a = 0, "bloom_alpha"_a = 0.005)
      .def_property_readonly("d", &FrequencyStack::d)
      .def_property_readonly("eps", &FrequencyStack::eps)
      .def_property_readonly("sketched", &FrequencyStack::sketched)
      .def("describe", &FrequencyStack::Describe)
      .def("__repr__", [](const FrequencyStack& s) {
        return "<ldpfreq.Stack " + s.Describe() + ">";
      })
      .def(
          "estimate",
          [](const FrequencyStack& stack, const std::vector<uint64_t>& items,
             uint64_t seed) { return Collect(stack, items, seed).EstimateAll(); },
          "items"_a, "seed"_a = 0, py::call_guard<py::gil_scoped_release>())
      .def(
          "estimate_items",
          [](const FrequencyStack& stack, const std::vector<uint64_t>& items,
             const std::vector<uint64_t>& queries, uint64_t seed) {
            return Collect(stack, items, seed).EstimateMany(queries);
          },
          "items"_a, "queries"_a, "seed"_a = 0,
          py::call_guard<py::gil_scoped_release>());

  m.def("zipf_weights", &ZipfWeights, "d"_a, "s"_a);
  m.def(
      "gen_zipf",
      [](uint64_t n, uint64_t d, double s, uint64_t seed) {
        Dataset data = GenZipf(n, d, s, seed);
        return py::make_tuple(std::move(data.items), std::move(data.true_freqs));
      },
      "n"_a, "d"_a, "s"_a = 1.1, "seed"_a = 0);

  m.def(
      "evaluate",
      [](const std::vector<double>& estimates, const std::vector<uint64_t>& truth,
         uint64_t k) { return MetricsDict(EvaluateFrequencies(estimates, truth, k)); },
      "estimates"_a, "truth"_a, "k"_a = 50);

  m.def(
      "heavy_hitters",
      [](const std::vector<std::string>& population, const std::string& protocol,
         double eps, const std::string& alphabet, int max_len, int top,
         const std::string& oracle, uint64_t k_prime, uint64_t seed) {
        HHConfig cfg;
        cfg.alphabet = alphabet;
        cfg.max_len = max_len;
        cfg.T = top;
        cfg.eps = eps;
        cfg.stack = DefaultHHStack();
        cfg.stack.oracle = ParseOracleKind(oracle);
        cfg.stack.oracle_options.k_prime = k_prime;
        cfg.seed = DeriveSeed(seed, 3);
        py::gil_scoped_release release;
        const HeavyHitters hh(ParseHHProtocol(protocol), cfg);
        const HHResult result = RunHeavyHitters(hh, population, DeriveSeed(seed, 2));
        std::vector<std::pair<std::string, double>> out;
        for (const HHItem& item : result.items) out.emplace_back(item.value, item.estimate);
        return out;
      },
      "population"_a, "protocol"_a = "pem", "eps"_a = 3.0,
      "alphabet"_a = "abcdefghijklmnopqrstuvwxyz", "max_len"_a = 6, "top"_a = 10,
      "oracle"_a = "FLH", "k_prime"_a = 500, "seed"_a = 0);

  m.def(
      "run_experiment",
      [](const std::string& oracle, double eps, uint64_t d, uint64_t n,
         int trials, uint64_t seed, uint64_t k, double zipf_s,
         const std::string& post, int t, uint64_t k_prime,
         std::optional<std::string> sketch, uint64_t r, uint64_t c,
         const std::string& combine, int threads) {
        ExperimentConfig cfg;
        cfg.stack = MakeSpec(oracle, t, k_prime, 0, sketch, r, c, combine, 1, 0,
                             0.005);
        cfg.post = ParsePostMethod(post);
        cfg.eps = eps;
        cfg.d = d;
        cfg.n = n;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.k = k;
        cfg.zipf_s = zipf_s;
        cfg.threads = threads;
        ExperimentResult result;
        {
          py::gil_scoped_release release;
          result = RunExperiment(cfg);
        }
        return ResultRows(result);
      },
      "oracle"_a = "OLH", "eps"_a = 3.0, "d"_a = 1024, "n"_a = 100000,
      "trials"_a = 5, "seed"_a = 0, "k"_a = 50, "zipf_s"_a = 1.1,
      "post"_a = "none", "t"_a = 0, "k_prime"_a = 10000,
      "sketch"_a = py::none(), "r"_a = 32, "c"_a = 1024, "combine"_a = "median",
      "threads"_a = 1);

  m.def("figure_names", &FigureNames);
}
