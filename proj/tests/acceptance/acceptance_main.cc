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

// Acceptance suite: one PASS/FAIL line per criterion. Criteria can be
// selected by number on the command line; all run by default.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ldpfreq/bench.h"
#include "ldpfreq/hadamard.h"
#include "ldpfreq/heavy_hitters.h"
#include "ldpfreq/oracles.h"
#include "ldpfreq/postprocess.h"
#include "ldpfreq/privacy_audit.h"
#include "ldpfreq/sketch.h"
#include "ldpfreq/stack.h"

namespace ldpfreq {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

ExperimentConfig FreqConfig(OracleKind kind, double eps, uint64_t d, uint64_t n) {
  ExperimentConfig cfg;
  cfg.stack.oracle = kind;
  cfg.eps = eps;
  cfg.d = d;
  cfg.n = n;
  cfg.trials = 5;
  cfg.seed = 2026;
  cfg.zipf_s = 1.1;
  return cfg;
}

Metrics MeanMetrics(const ExperimentConfig& cfg) { return RunExperiment(cfg).rows.back().metrics; }

// 1. Exhaustive LDP ratio for every oracle.
Outcome LdpExactness() {
  const auto start = std::chrono::steady_clock::now();
  Outcome out{true, ""};
  double worst = 0.0;
  int audits = 0;
  for (uint64_t d : {2u, 3u, 4u}) {
    for (double eps : {0.5, std::log(3.0), 2.0}) {
      for (OracleKind kind : kAllOracleKinds) {
        OracleOptions o;
        o.k_prime = 16;
        const PrivacyAudit audit = AuditPrivacy(MakeOracleParams(kind, eps, d, o));
        ++audits;
        const double bound = std::exp(eps);
        worst = std::max(worst, audit.max_ratio / bound);
        if (audit.max_ratio > bound + 1e-9 || std::abs(audit.max_ratio - bound) > 1e-9) {
          out.pass = false;
          out.detail += std::string(OracleName(kind)) + " d=" + std::to_string(d) +
                        " eps=" + Fmt(eps) + " ratio=" + Fmt(audit.max_ratio) + "; ";
        }
      }
    }
  }
  const double secs = Seconds(start);
  if (secs >= 10.0) out.pass = false;
  out.detail += std::to_string(audits) + " audits, max ratio/e^eps=" + Fmt(worst) +
                ", " + Fmt(secs) + "s";
  return out;
}

// 2. Empirical MSE against n * theoretical variance.
Outcome VarianceToTheory() {
  Outcome out{true, ""};
  for (OracleKind kind : {OracleKind::kOUE, OracleKind::kOLH, OracleKind::kBLH, OracleKind::kHR}) {
    const auto start = std::chrono::steady_clock::now();
    for (double eps : {1.0, 3.0}) {
      const ExperimentConfig cfg = FreqConfig(kind, eps, 1024, 100000);
      const double ratio = MeanMetrics(cfg).mse / (cfg.n * TheoreticalVariance(kind, eps, cfg.d));
      if (ratio < 0.8 || ratio > 1.2) out.pass = false;
      out.detail += std::string(OracleName(kind)) + "@" + Fmt(eps) + "=" + Fmt(ratio) + " ";
    }
    const double secs = Seconds(start);
    if (secs >= 120.0) {
      out.pass = false;
      out.detail += "(" + Fmt(secs) + "s) ";
    }
  }
  return out;
}

// 3. DE against OUE across the domain-size sweep.
Outcome DeCrossover() {
  Outcome out{true, ""};
  uint64_t last_win = 0, first_loss = 0;
  bool consistent = true;
  for (int b = 2; b <= 11; ++b) {
    const uint64_t d = uint64_t{1} << b;
    ExperimentConfig cfg = FreqConfig(OracleKind::kDE, 3.0, d, 100000);
    cfg.k = std::min<uint64_t>(cfg.k, d);
    const double de = MeanMetrics(cfg).mse;
    cfg.stack.oracle = OracleKind::kOUE;
    const double oue = MeanMetrics(cfg).mse;
    const bool wins = de < oue;
    if (wins) {
      last_win = d;
      if (first_loss != 0) consistent = false;
    } else if (first_loss == 0) {
      first_loss = d;
    }
    if (d <= 32 && !wins) out.pass = false;
    if (d >= 128 && wins) out.pass = false;
  }
  const double theory = 3 * std::exp(3.0) + 2;
  if (!consistent || first_loss == 0 || !(last_win < theory && theory < first_loss)) {
    out.pass = false;
  }
  out.detail = "DE wins up to d=" + std::to_string(last_win) + ", loses from d=" +
               std::to_string(first_loss) + "; 3e^eps+2=" + Fmt(theory) +
               (consistent ? "" : " (curves cross more than once)");
  return out;
}

// 4. FLH accuracy and server time against OLH.
Outcome FlhConvergence() {
  ExperimentConfig olh = FreqConfig(OracleKind::kOLH, 3.0, 500, 100000);
  olh.timing = true;
  ExperimentConfig flh = olh;
  flh.stack.oracle = OracleKind::kFLH;
  flh.stack.oracle_options.k_prime = 10000;
  const Metrics a = MeanMetrics(olh);
  const Metrics b = MeanMetrics(flh);
  const double mse_ratio = b.mse / a.mse;
  const double speedup = a.time_server_ms / b.time_server_ms;
  return {mse_ratio <= 1.1 && speedup >= 2.0,
          "MSE(FLH)/MSE(OLH)=" + Fmt(mse_ratio) + ", server " + Fmt(a.time_server_ms) +
              "ms vs " + Fmt(b.time_server_ms) + "ms (" + Fmt(speedup) + "x)"};
}

// 5. Best number of HM coefficients.
Outcome HmOptimalCoefficients() {
  Outcome out{true, ""};
  for (double eps : {1.0, 3.0}) {
    std::vector<double> mse;
    for (int t = 1; t <= 5; ++t) {
      ExperimentConfig cfg = FreqConfig(OracleKind::kHM, eps, 1024, 100000);
      cfg.stack.oracle_options.t = t;
      mse.push_back(MeanMetrics(cfg).mse);
    }
    const int best = static_cast<int>(std::min_element(mse.begin(), mse.end()) - mse.begin()) + 1;
    const int want = static_cast<int>(std::ceil(eps));
    const bool ok = best == want || mse[want - 1] <= 1.05 * mse[best - 1];
    out.pass = out.pass && ok;
    out.detail += "eps=" + Fmt(eps) + ": argmin t=" + std::to_string(best) + " (MSE ";
    for (size_t i = 0; i < mse.size(); ++i) out.detail += (i ? "/" : "") + Fmt(mse[i]);
    out.detail += ") ";
  }
  return out;
}

ExperimentConfig SketchConfigFor(Combine combine, uint64_t r) {
  ExperimentConfig cfg = FreqConfig(OracleKind::kFLH, 3.0, 10000, 100000);
  cfg.stack.oracle_options.k_prime = 500;
  SketchOptions s;
  s.kind = SketchKind::kCountMin;
  s.r = r;
  s.c = 1024;
  s.combine = combine;
  cfg.stack.sketch = s;
  return cfg;
}

// 6. k-MSE trend of CM(MIN) and CM(MEDIAN) in r.
Outcome SketchMinTrend() {
  const double min4 = MeanMetrics(SketchConfigFor(Combine::kMin, 4)).k_mse;
  const double min128 = MeanMetrics(SketchConfigFor(Combine::kMin, 128)).k_mse;
  const double med4 = MeanMetrics(SketchConfigFor(Combine::kMedian, 4)).k_mse;
  const double med128 = MeanMetrics(SketchConfigFor(Combine::kMedian, 128)).k_mse;
  return {min128 > min4 && med128 <= 2 * med4,
          "MIN k-MSE r=4 " + Fmt(min4) + " -> r=128 " + Fmt(min128) + "; MEDIAN " + Fmt(med4) +
              " -> " + Fmt(med128)};
}

// 7. Bloom regularization sweet spot.
Outcome BloomRegularization() {
  ExperimentConfig cfg = FreqConfig(OracleKind::kOUE, 3.0, 10000, 100000);
  SketchOptions s;
  s.kind = SketchKind::kBloom;
  s.r = 2;
  s.c = 128;
  s.cohorts = 8;
  cfg.stack.sketch = s;
  std::map<double, double> mse;
  for (double alpha : {5e-4, 5e-3, 5e-2, 0.5}) {
    cfg.stack.bloom_alpha = alpha;
    mse[alpha] = MeanMetrics(cfg).mse;
  }
  double best = std::numeric_limits<double>::infinity();
  std::string detail;
  for (const auto& [alpha, v] : mse) {
    best = std::min(best, v);
    detail += "alpha=" + Fmt(alpha) + ":" + Fmt(v) + " ";
  }
  return {mse[5e-3] <= 1.2 * best, detail + "ratio=" + Fmt(mse[5e-3] / best)};
}

// Exact simplex projection by trying every support set.
std::vector<double> BruteForceProjection(const std::vector<double>& v, double n) {
  const size_t d = v.size();
  std::vector<double> best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (uint32_t mask = 1; mask < (1u << d); ++mask) {
    double sum = 0.0;
    int size = 0;
    for (size_t i = 0; i < d; ++i) {
      if (mask >> i & 1) {
        sum += v[i];
        ++size;
      }
    }
    const double tau = (sum - n) / size;
    std::vector<double> f(d, 0.0);
    bool feasible = true;
    double dist = 0.0;
    for (size_t i = 0; i < d; ++i) {
      if (mask >> i & 1) {
        f[i] = v[i] - tau;
        feasible = feasible && f[i] >= -1e-12;
      }
      dist += (f[i] - v[i]) * (f[i] - v[i]);
    }
    if (feasible && dist < best_dist) {
      best_dist = dist;
      best = f;
    }
  }
  return best;
}

// 8. Post-processing.
Outcome PostProcessing() {
  ExperimentConfig cfg = FreqConfig(OracleKind::kFLH, 3.0, 10000, 100000);
  cfg.stack.oracle_options.k_prime = 500;
  const double none = MeanMetrics(cfg).mse;
  cfg.post = PostMethod::kNonNeg;
  const double nonneg = MeanMetrics(cfg).mse;

  const Dataset data = GenZipf(cfg.n, cfg.d, cfg.zipf_s, 7);
  StackSpec spec = cfg.stack;
  spec.oracle_options.hash_seed = 11;
  const FrequencyStack stack(spec, cfg.eps, cfg.d);
  StackState state(stack);
  Rng rng(13);
  for (uint64_t x : data.items) state.Add(stack.Encode(x, rng));
  state.Finalize();
  const auto additive = PostProcess(state.EstimateAll(), static_cast<double>(cfg.n),
                                    PostMethod::kAdditive);
  const double sum = std::accumulate(additive.begin(), additive.end(), 0.0);
  const double sum_err = std::abs(sum - static_cast<double>(cfg.n));

  Rng vr(3);
  double qp_err = 0.0;
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> v(1 + vr.UniformInt(5));
    for (double& x : v) x = 20 * vr.UniformDouble() - 8;
    const double n = 10 * vr.UniformDouble();
    const auto got = PostProcess(v, n, PostMethod::kSimplex);
    const auto want = BruteForceProjection(v, n);
    for (size_t i = 0; i < v.size(); ++i) qp_err = std::max(qp_err, std::abs(got[i] - want[i]));
  }
  return {nonneg <= none && sum_err <= 1e-6 * cfg.n && qp_err <= 1e-6,
          "MSE none=" + Fmt(none) + " nonneg=" + Fmt(nonneg) + "; additive |sum-n|=" +
              Fmt(sum_err) + "; simplex max err vs QP=" + Fmt(qp_err)};
}

// 9. Heavy-hitter protocol ordering.
Outcome HeavyHitterOrdering() {
  std::map<HHProtocol, double> f1;
  for (HHProtocol p : {HHProtocol::kPEM, HHProtocol::kSFP, HHProtocol::kTH}) {
    ExperimentConfig cfg;
    cfg.protocol = p;
    cfg.stack = DefaultHHStack();
    cfg.eps = 3.0;
    cfg.n = 100000;
    cfg.trials = 5;
    cfg.seed = 2026;
    cfg.distinct_strings = 200;
    cfg.hh.T = 10;
    f1[p] = MeanMetrics(cfg).f1;
  }
  const double pem = f1[HHProtocol::kPEM];
  return {pem >= f1[HHProtocol::kSFP] && pem >= f1[HHProtocol::kTH] && pem >= 0.7,
          "mean F1 PEM=" + Fmt(pem) + " SFP=" + Fmt(f1[HHProtocol::kSFP]) +
              " TH=" + Fmt(f1[HHProtocol::kTH])};
}

// 10. Exact answers with the noise switched off.
std::vector<uint64_t> Histogram(const std::vector<uint64_t>& items, uint64_t d) {
  std::vector<uint64_t> h(d, 0);
  for (uint64_t x : items) ++h[x];
  return h;
}

double MaxError(const std::vector<double>& est, const std::vector<uint64_t>& truth,
                double scale = 1.0) {
  double err = 0.0;
  for (size_t x = 0; x < truth.size(); ++x) {
    err = std::max(err, std::abs(est[x] / scale - static_cast<double>(truth[x])));
  }
  return err;
}

Outcome NoiselessEquivalence() {
  const uint64_t d = 16;
  Rng data_rng(5);
  std::vector<uint64_t> items;
  for (int i = 0; i < 3000; ++i) items.push_back(std::min<uint64_t>(data_rng.Geometric(0.25), d - 1));
  const auto truth = Histogram(items, d);
  OracleOptions o;
  o.noiseless = true;
  o.injective_hash = true;
  o.k_prime = 7;
  o.t = 1;
  std::vector<std::string> failures;
  int checks = 0;
  auto check = [&](const std::string& name, double err, double tol = 1e-9) {
    ++checks;
    if (!(err <= tol)) failures.push_back(name + "(" + Fmt(err) + ")");
  };

  // Plain oracles. Hadamard decoders see every coefficient of every user.
  for (OracleKind kind : kAllOracleKinds) {
    const PureParams params = MakeOracleParams(kind, 1.0, d, o);
    AggState state(params);
    Rng rng(1);
    double scale = 1.0;
    if (kind == OracleKind::kHM || kind == OracleKind::kHR) {
      for (uint64_t x : items) {
        for (uint64_t j = 0; j < params.hadamard_dim; ++j) {
          if (kind == OracleKind::kHM) {
            state.Add({kind, HadamardMechReport{{{j, HadamardSign(x, j)}}}});
          } else if (HadamardSign(x + 1, j) > 0) {
            state.Add({kind, HadamardRespReport{j}});
          }
        }
      }
      scale = kind == OracleKind::kHM ? params.hadamard_dim : params.hadamard_dim / 2.0;
    } else {
      for (uint64_t x : items) state.Add(Encode(params, x, rng));
    }
    check(std::string(OracleName(kind)), MaxError(state.EstimateAll(), truth, scale));
  }

  // Count-Min and Count sketches with collision-free rows; every user is
  // counted in every row so MIN and MEDIAN see identical rows.
  for (SketchKind kind : {SketchKind::kCountMin, SketchKind::kCountSketch}) {
    for (Combine combine : {Combine::kMin, Combine::kMean, Combine::kMedian}) {
      if (kind == SketchKind::kCountSketch && combine == Combine::kMin) continue;
      for (OracleKind inner : {OracleKind::kDE, OracleKind::kOUE, OracleKind::kOLH,
                               OracleKind::kFLH, OracleKind::kHM}) {
        SketchOptions s;
        s.kind = kind;
        s.r = 3;
        s.c = 16;
        s.combine = combine;
        s.injective_rows = true;
        const SketchConfig cfg = MakeSketchConfig(s, d, inner, 1.0, o);
        SketchState state(cfg);
        Rng rng(2);
        double scale = cfg.r;
        for (uint64_t x : items) {
          for (uint64_t row = 0; row < cfg.r; ++row) {
            const uint64_t cell = SketchCell(cfg, row, x);
            const int sign = SketchSign(cfg, row, x);
            if (inner == OracleKind::kHM) {
              for (uint64_t j = 0; j < cfg.inner.hadamard_dim; ++j) {
                state.Add({row, {inner, HadamardMechReport{{{j, sign * HadamardSign(cell, j)}}}}});
              }
            } else {
              const uint64_t v = cfg.split_signs() && sign < 0 ? cell + cfg.c : cell;
              state.Add({row, Encode(cfg.inner, v, rng)});
            }
          }
        }
        if (inner == OracleKind::kHM) scale *= cfg.inner.hadamard_dim;
        state.Finalize();
        check(DescribeSketch(cfg) + "+" + std::string(OracleName(inner)),
              MaxError(state.EstimateAll(), truth, scale));
      }
    }
  }

  // Bloom filter with collision-free positions, every hash of every user.
  {
    SketchOptions s;
    s.kind = SketchKind::kBloom;
    s.r = 2;
    s.c = 32;
    s.cohorts = 2;
    s.injective_rows = true;
    const SketchConfig cfg = MakeSketchConfig(s, d, OracleKind::kDE, 1.0, o);
    SketchState state(cfg);
    Rng rng(3);
    for (uint64_t x : items) {
      for (uint64_t b = 0; b < cfg.cohorts; ++b) {
        for (uint64_t p : BloomPositions(cfg, b, x)) state.Add({b, Encode(cfg.inner, p, rng)});
      }
    }
    state.Finalize();
    std::vector<uint64_t> candidates(d);
    std::iota(candidates.begin(), candidates.end(), 0);
    BloomDecodeOptions bo;
    bo.alpha = 0.0;
    bo.max_sweeps = 100000;
    bo.tolerance = 1e-13;
    // Each user contributed k * cohorts reports.
    check(DescribeSketch(cfg),
          MaxError(BloomDecode(state, candidates, bo), truth,
                   static_cast<double>(cfg.r * cfg.cohorts)),
          1e-6 * items.size());
  }

  // Heavy hitters on a tiny alphabet.
  std::vector<std::string> population;
  const std::vector<std::pair<std::string, int>> strings = {
      {"abba", 900}, {"ab", 700}, {"cab", 500}, {"b", 300}, {"ca", 200}, {"bcca", 100},
      {"a", 40},     {"ccc", 20}};
  for (const auto& [s, c] : strings) population.insert(population.end(), c, s);
  for (HHProtocol p : {HHProtocol::kSFP, HHProtocol::kPEM, HHProtocol::kTH}) {
    HHConfig hc;
    hc.alphabet = "abc";
    hc.max_len = 4;
    hc.fragment_len = 2;
    hc.hash_bits = 8;
    hc.start_len = 1;
    hc.prefix_step = 1;
    hc.T = 5;
    hc.seed = 4;
    hc.stack.oracle = OracleKind::kDE;
    hc.stack.oracle_options = o;
    const HeavyHitters hh(p, hc);
    const HHResult result = RunHeavyHitters(hh, population, 9);
    std::vector<std::string> got;
    for (const auto& item : result.items) got.push_back(item.value);
    const std::vector<std::string> want = {"abba", "ab", "cab", "b", "ca"};
    ++checks;
    if (got != want) failures.push_back(std::string(HHProtocolName(p)));
  }

  Outcome out{failures.empty(), std::to_string(checks) + " stacks checked"};
  for (const auto& f : failures) out.detail += "; mismatch " + f;
  return out;
}

// 11. Same seed, same CSV bytes.
Outcome Reproducibility() {
  std::vector<ExperimentConfig> configs;
  configs.push_back(FreqConfig(OracleKind::kOLH, 2.0, 200, 20000));
  configs.push_back(FreqConfig(OracleKind::kHM, 2.0, 256, 20000));
  ExperimentConfig sketch = SketchConfigFor(Combine::kMedian, 8);
  sketch.n = 20000;
  sketch.post = PostMethod::kAdditive;
  configs.push_back(sketch);
  ExperimentConfig bloom = FreqConfig(OracleKind::kOUE, 3.0, 1000, 20000);
  SketchOptions s;
  s.kind = SketchKind::kBloom;
  s.r = 2;
  s.c = 128;
  s.cohorts = 4;
  bloom.stack.sketch = s;
  configs.push_back(bloom);
  ExperimentConfig hh;
  hh.protocol = HHProtocol::kSFP;
  hh.stack = DefaultHHStack();
  hh.n = 20000;
  hh.trials = 2;
  configs.push_back(hh);

  int identical = 0;
  for (ExperimentConfig cfg : configs) {
    cfg.trials = 2;
    std::string csv[3];
    for (int run = 0; run < 3; ++run) {
      cfg.threads = run == 2 ? 2 : 1;
      std::ostringstream out;
      WriteCsvHeader(out);
      WriteCsvRows(out, RunExperiment(cfg));
      csv[run] = out.str();
    }
    if (csv[0] == csv[1] && csv[1] == csv[2]) ++identical;
  }
  return {identical == static_cast<int>(configs.size()),
          std::to_string(identical) + "/" + std::to_string(configs.size()) +
              " configurations byte-identical across reruns and thread counts"};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace ldpfreq

int main(int argc, char** argv) {
  using namespace ldpfreq;
  const std::vector<Criterion> criteria = {
      {1, "LDP exactness", LdpExactness},
      {2, "variance-to-theory ratio", VarianceToTheory},
      {3, "DE crossover", DeCrossover},
      {4, "FLH convergence and speed", FlhConvergence},
      {5, "HM optimal t", HmOptimalCoefficients},
      {6, "sketch min-vs-median k-MSE trend", SketchMinTrend},
      {7, "Bloom regularization sweet spot", BloomRegularization},
      {8, "post-processing dominance", PostProcessing},
      {9, "heavy-hitter ordering", HeavyHitterOrdering},
      {10, "noiseless equivalence", NoiselessEquivalence},
      {11, "reproducibility", Reproducibility},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::printf("[%s] %2d %s: %s (%.1fs)\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name,
                outcome.detail.c_str(), Seconds(start));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
