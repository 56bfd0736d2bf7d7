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

#include "ldpfreq/bench.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

#include "ldpfreq/hashing.h"

namespace ldpfreq {
namespace {

using Clock = std::chrono::steady_clock;

constexpr double kNa = std::numeric_limits<double>::quiet_NaN();
constexpr size_t kChunk = 4096;

double MillisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string Format(double v) {
  if (std::isnan(v)) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

// Cumulative Zipf table sampled by binary search.
class ZipfSampler {
 public:
  ZipfSampler(uint64_t d, double s) : cumulative_(ZipfWeights(d, s)) {
    std::partial_sum(cumulative_.begin(), cumulative_.end(), cumulative_.begin());
  }
  uint64_t operator()(Rng& rng) const {
    const double u = rng.UniformDouble() * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min<uint64_t>(it - cumulative_.begin(), cumulative_.size() - 1);
  }

 private:
  std::vector<double> cumulative_;
};

template <typename T>
SetMetrics CompareGeneric(std::span<const T> found, std::span<const T> expected) {
  const std::set<T> want(expected.begin(), expected.end());
  const std::set<T> got(found.begin(), found.end());
  uint64_t hits = 0;
  for (const T& x : got) hits += want.count(x);
  SetMetrics m;
  m.precision = got.empty() ? 0.0 : static_cast<double>(hits) / got.size();
  m.recall = want.empty() ? 0.0 : static_cast<double>(hits) / want.size();
  m.f1 = m.precision + m.recall > 0.0
             ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
             : 0.0;
  return m;
}

StackSpec SeededStack(const StackSpec& base, uint64_t trial_seed) {
  StackSpec spec = base;
  spec.oracle_options.hash_seed = DeriveSeed(trial_seed, 3);
  if (spec.sketch) spec.sketch->row_seed = DeriveSeed(trial_seed, 4);
  return spec;
}

Metrics RunFrequencyTrial(const ExperimentConfig& cfg, uint64_t trial_seed,
                          const Dataset* fixed) {
  const Dataset data =
      fixed != nullptr ? *fixed : GenZipf(cfg.n, cfg.d, cfg.zipf_s, DeriveSeed(trial_seed, 1));
  double client_ms = 0.0;
  double server_ms = 0.0;

  auto start = Clock::now();
  const FrequencyStack stack(SeededStack(cfg.stack, trial_seed), cfg.eps, data.d);
  StackState state(stack);
  server_ms += MillisSince(start);

  Rng rng(DeriveSeed(trial_seed, 2));
  std::vector<SketchReport> chunk;
  chunk.reserve(kChunk);
  for (size_t begin = 0; begin < data.items.size(); begin += kChunk) {
    const size_t end = std::min(data.items.size(), begin + kChunk);
    chunk.clear();
    start = Clock::now();
    for (size_t i = begin; i < end; ++i) chunk.push_back(stack.Encode(data.items[i], rng));
    client_ms += MillisSince(start);
    start = Clock::now();
    for (const auto& report : chunk) state.Add(report);
    server_ms += MillisSince(start);
  }

  start = Clock::now();
  state.Finalize();
  std::vector<double> est = state.EstimateAll();
  server_ms += MillisSince(start);

  est = PostProcess(est, static_cast<double>(data.items.size()), cfg.post);
  Metrics m = EvaluateFrequencies(est, data.true_freqs, cfg.k);
  m.time_client_ms = client_ms;
  m.time_server_ms = server_ms;
  return m;
}

Metrics RunHeavyHitterTrial(const ExperimentConfig& cfg, uint64_t trial_seed,
                            const StringDataset* fixed) {
  const StringDataset data =
      fixed != nullptr
          ? *fixed
          : GenZipfStrings(cfg.n, cfg.distinct_strings, cfg.hh.max_len, cfg.hh.alphabet,
                           cfg.zipf_s, DeriveSeed(trial_seed, 1));
  double client_ms = 0.0;
  double server_ms = 0.0;

  HHConfig hh_cfg = cfg.hh;
  hh_cfg.eps = cfg.eps;
  hh_cfg.stack = cfg.stack;
  hh_cfg.seed = DeriveSeed(trial_seed, 3);
  hh_cfg.trace = false;

  auto start = Clock::now();
  const HeavyHitters hh(*cfg.protocol, hh_cfg);
  HHState state(hh);
  server_ms += MillisSince(start);

  Rng rng(DeriveSeed(trial_seed, 2));
  std::vector<HHReport> chunk;
  chunk.reserve(kChunk);
  for (size_t begin = 0; begin < data.items.size(); begin += kChunk) {
    const size_t end = std::min(data.items.size(), begin + kChunk);
    chunk.clear();
    start = Clock::now();
    for (size_t i = begin; i < end; ++i) chunk.push_back(hh.Encode(data.items[i], rng));
    client_ms += MillisSince(start);
    start = Clock::now();
    for (const auto& report : chunk) state.Add(report);
    server_ms += MillisSince(start);
  }
  start = Clock::now();
  const HHResult result = state.Decode();
  server_ms += MillisSince(start);

  Metrics m = EvaluateHeavyHitters(result, data, static_cast<uint64_t>(hh_cfg.T));
  m.time_client_ms = client_ms;
  m.time_server_ms = server_ms;
  return m;
}

double SampleSd(const std::vector<double>& v) {
  if (v.size() < 2) return kNa;
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (v.size() - 1));
}

}  // namespace

std::vector<double> ZipfWeights(uint64_t d, double s) {
  std::vector<double> w(d);
  for (uint64_t j = 0; j < d; ++j) w[j] = std::pow(static_cast<double>(j + 1), -s);
  return w;
}

Dataset GenZipf(uint64_t n, uint64_t d, double s, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (d < 2) throw std::invalid_argument("d must be >= 2");
  if (!(s > 0.0)) throw std::invalid_argument("Zipf exponent must be positive");
  const ZipfSampler sampler(d, s);
  Rng rng(seed);
  std::vector<uint64_t> items(n);
  for (auto& x : items) x = sampler(rng);
  return MakeDataset(std::move(items), d);
}

Dataset MakeDataset(std::vector<uint64_t> items, uint64_t d) {
  Dataset data;
  data.d = d;
  data.true_freqs.assign(d, 0);
  for (uint64_t x : items) {
    if (x >= d) throw std::out_of_range("item outside domain");
    ++data.true_freqs[x];
  }
  data.items = std::move(items);
  return data;
}

StringDataset GenZipfStrings(uint64_t n, uint64_t distinct, int len,
                             std::string_view alphabet, double s, uint64_t seed) {
  if (distinct < 1) throw std::invalid_argument("need at least one distinct string");
  if (len < 1 || alphabet.empty()) throw std::invalid_argument("empty string space");
  const double space = std::pow(static_cast<double>(alphabet.size()), len);
  if (space < static_cast<double>(distinct)) {
    throw std::invalid_argument("not enough distinct strings of that length");
  }
  Rng rng(seed);
  std::vector<std::string> ranked;
  std::set<std::string> seen;
  while (ranked.size() < distinct) {
    std::string s_str(static_cast<size_t>(len), ' ');
    for (char& ch : s_str) ch = alphabet[rng.UniformInt(alphabet.size())];
    if (seen.insert(s_str).second) ranked.push_back(std::move(s_str));
  }
  if (distinct == 1) return MakeStringDataset(std::vector<std::string>(n, ranked[0]));
  const ZipfSampler sampler(distinct, s);
  std::vector<std::string> items(n);
  for (auto& item : items) item = ranked[sampler(rng)];
  return MakeStringDataset(std::move(items));
}

StringDataset MakeStringDataset(std::vector<std::string> items) {
  std::map<std::string, uint64_t> counts;
  for (const auto& s : items) ++counts[s];
  StringDataset data;
  data.histogram.assign(counts.begin(), counts.end());
  std::stable_sort(data.histogram.begin(), data.histogram.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  data.items = std::move(items);
  return data;
}

std::string CleanString(std::string_view line, int max_len, std::string_view alphabet) {
  std::string lower(line);
  for (char& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  std::string_view rest = lower;
  for (std::string_view prefix : {"https://", "http://"}) {
    if (rest.substr(0, prefix.size()) == prefix) {
      rest.remove_prefix(prefix.size());
      break;
    }
  }
  if (rest.substr(0, 4) == "www.") rest.remove_prefix(4);
  std::string out;
  for (char ch : rest) {
    if (out.size() >= static_cast<size_t>(max_len)) break;
    if (alphabet.find(ch) != std::string_view::npos) out.push_back(ch);
  }
  return out;
}

StringDataset IngestStrings(const std::string& path, int max_len,
                            std::string_view alphabet) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<std::string> items;
  std::string line;
  while (std::getline(in, line)) {
    std::string cleaned = CleanString(line, max_len, alphabet);
    if (!cleaned.empty()) items.push_back(std::move(cleaned));
  }
  return MakeStringDataset(std::move(items));
}

Dataset IngestItems(const std::string& path, uint64_t min_d) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) throw std::runtime_error(path + " has no items");
  std::vector<std::string> distinct = lines;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<uint64_t> items(lines.size());
  for (size_t i = 0; i < lines.size(); ++i) {
    items[i] = std::lower_bound(distinct.begin(), distinct.end(), lines[i]) - distinct.begin();
  }
  return MakeDataset(std::move(items), std::max<uint64_t>({min_d, distinct.size(), 2}));
}

std::vector<uint64_t> TopK(std::span<const uint64_t> truth, uint64_t k) {
  if (k > truth.size()) throw std::invalid_argument("k exceeds the domain size");
  std::vector<uint64_t> idx(truth.size());
  std::iota(idx.begin(), idx.end(), uint64_t{0});
  std::partial_sort(idx.begin(), idx.begin() + k, idx.end(), [&](uint64_t a, uint64_t b) {
    return truth[a] != truth[b] ? truth[a] > truth[b] : a < b;
  });
  idx.resize(k);
  return idx;
}

std::vector<uint64_t> TopKEstimates(std::span<const double> estimates, uint64_t k) {
  if (k > estimates.size()) throw std::invalid_argument("k exceeds the domain size");
  std::vector<uint64_t> idx(estimates.size());
  std::iota(idx.begin(), idx.end(), uint64_t{0});
  std::partial_sort(idx.begin(), idx.begin() + k, idx.end(), [&](uint64_t a, uint64_t b) {
    return estimates[a] != estimates[b] ? estimates[a] > estimates[b] : a < b;
  });
  idx.resize(k);
  return idx;
}

double Mse(std::span<const double> estimates, std::span<const uint64_t> truth) {
  if (estimates.size() != truth.size() || truth.empty()) {
    throw std::invalid_argument("estimate and truth lengths differ");
  }
  double sum = 0.0;
  for (size_t i = 0; i < truth.size(); ++i) {
    const double diff = estimates[i] - static_cast<double>(truth[i]);
    sum += diff * diff;
  }
  return sum / static_cast<double>(truth.size());
}

double KMse(std::span<const double> estimates, std::span<const uint64_t> truth,
            uint64_t k) {
  if (estimates.size() != truth.size()) {
    throw std::invalid_argument("estimate and truth lengths differ");
  }
  if (k == 0) throw std::invalid_argument("k must be >= 1");
  double sum = 0.0;
  for (uint64_t x : TopK(truth, k)) {
    const double diff = estimates[x] - static_cast<double>(truth[x]);
    sum += diff * diff;
  }
  return sum / static_cast<double>(k);
}

SetMetrics CompareSets(std::span<const std::string> found,
                       std::span<const std::string> expected) {
  return CompareGeneric<std::string>(found, expected);
}

Metrics EvaluateFrequencies(std::span<const double> estimates,
                            std::span<const uint64_t> truth, uint64_t k) {
  Metrics m;
  m.mse = Mse(estimates, truth);
  m.k_mse = KMse(estimates, truth, k);
  const std::vector<uint64_t> found = TopKEstimates(estimates, k);
  const std::vector<uint64_t> expected = TopK(truth, k);
  const SetMetrics set = CompareGeneric<uint64_t>(found, expected);
  m.precision = set.precision;
  m.recall = set.recall;
  m.f1 = set.f1;
  return m;
}

Metrics EvaluateHeavyHitters(const HHResult& result, const StringDataset& truth,
                             uint64_t k) {
  std::vector<std::string> found;
  for (const auto& item : result.items) found.push_back(item.value);
  std::vector<std::string> expected;
  for (size_t i = 0; i < truth.histogram.size() && i < k; ++i) {
    expected.push_back(truth.histogram[i].first);
  }
  const SetMetrics set = CompareSets(found, expected);
  Metrics m;
  m.mse = kNa;
  m.k_mse = kNa;
  m.precision = set.precision;
  m.recall = set.recall;
  m.f1 = set.f1;
  return m;
}

void ValidateExperiment(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (!(cfg.eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (!(cfg.zipf_s > 0.0)) throw std::invalid_argument("Zipf exponent must be positive");
  if (cfg.input_path.empty() && cfg.n < 1) throw std::invalid_argument("n must be >= 1");
  if (cfg.protocol) {
    HHConfig hh = cfg.hh;
    hh.eps = cfg.eps;
    hh.stack = cfg.stack;
    HeavyHitters check(*cfg.protocol, hh);
    if (cfg.input_path.empty()) {
      GenZipfStrings(1, cfg.distinct_strings, hh.max_len, hh.alphabet, cfg.zipf_s, 0);
    }
    return;
  }
  if (cfg.k < 1) throw std::invalid_argument("k must be >= 1");
  if (cfg.input_path.empty()) {
    if (cfg.d < 2) throw std::invalid_argument("d must be >= 2");
    if (cfg.k > cfg.d) throw std::invalid_argument("k exceeds d");
    FrequencyStack check(cfg.stack, cfg.eps, cfg.d);
  }
}

std::string DescribeStack(const ExperimentConfig& cfg) {
  if (cfg.protocol) {
    HHConfig hh = cfg.hh;
    hh.eps = cfg.eps;
    hh.stack = cfg.stack;
    return HeavyHitters(*cfg.protocol, hh).Describe();
  }
  std::string out = FrequencyStack(cfg.stack, cfg.eps, std::max<uint64_t>(cfg.d, 2)).Describe();
  if (cfg.stack.sketch && cfg.stack.sketch->kind == SketchKind::kBloom) {
    out += "(alpha=" + Format(cfg.stack.bloom_alpha) + ")";
  }
  return out;
}

Metrics RunTrial(const ExperimentConfig& cfg, int trial) {
  const uint64_t trial_seed = DeriveSeed(cfg.seed, static_cast<uint64_t>(trial));
  if (cfg.protocol) {
    std::optional<StringDataset> fixed;
    if (!cfg.input_path.empty()) {
      fixed = IngestStrings(cfg.input_path, cfg.hh.max_len, cfg.hh.alphabet);
    }
    return RunHeavyHitterTrial(cfg, trial_seed, fixed ? &*fixed : nullptr);
  }
  std::optional<Dataset> fixed;
  if (!cfg.input_path.empty()) fixed = IngestItems(cfg.input_path, cfg.d);
  return RunFrequencyTrial(cfg, trial_seed, fixed ? &*fixed : nullptr);
}

ExperimentResult RunExperiment(const ExperimentConfig& cfg) {
  ValidateExperiment(cfg);
  ExperimentResult result;
  result.config = cfg;

  std::optional<Dataset> items;
  std::optional<StringDataset> strings;
  if (!cfg.input_path.empty()) {
    if (cfg.protocol) {
      strings = IngestStrings(cfg.input_path, cfg.hh.max_len, cfg.hh.alphabet);
      if (strings->items.empty()) throw std::runtime_error(cfg.input_path + " has no usable strings");
      result.config.n = strings->items.size();
    } else {
      items = IngestItems(cfg.input_path, cfg.d);
      result.config.d = items->d;
      result.config.n = items->items.size();
      if (cfg.k > items->d) throw std::invalid_argument("k exceeds d");
      FrequencyStack check(cfg.stack, cfg.eps, items->d);
    }
  }

  std::vector<Metrics> metrics(static_cast<size_t>(cfg.trials));
  auto run = [&](int trial) {
    const uint64_t trial_seed = DeriveSeed(cfg.seed, static_cast<uint64_t>(trial));
    metrics[trial] = cfg.protocol
                         ? RunHeavyHitterTrial(cfg, trial_seed, strings ? &*strings : nullptr)
                         : RunFrequencyTrial(cfg, trial_seed, items ? &*items : nullptr);
  };
  const int workers = std::min(cfg.threads, cfg.trials);
  if (workers <= 1) {
    for (int trial = 0; trial < cfg.trials; ++trial) run(trial);
  } else {
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int trial = next++; trial < cfg.trials; trial = next++) run(trial);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  Metrics mean;
  std::vector<double> mses;
  std::vector<double> f1s;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const Metrics& m = metrics[trial];
    TrialResult row;
    row.trial = trial;
    row.metrics = m;
    row.mse_sd = kNa;
    row.f1_sd = kNa;
    result.rows.push_back(row);
    mean.mse += m.mse;
    mean.k_mse += m.k_mse;
    mean.precision += m.precision;
    mean.recall += m.recall;
    mean.f1 += m.f1;
    mean.time_client_ms += m.time_client_ms;
    mean.time_server_ms += m.time_server_ms;
    mses.push_back(m.mse);
    f1s.push_back(m.f1);
  }
  const double t = cfg.trials;
  mean.mse /= t;
  mean.k_mse /= t;
  mean.precision /= t;
  mean.recall /= t;
  mean.f1 /= t;
  mean.time_client_ms /= t;
  mean.time_server_ms /= t;
  TrialResult avg;
  avg.trial = -1;
  avg.metrics = mean;
  avg.mse_sd = cfg.protocol ? kNa : SampleSd(mses);
  avg.f1_sd = SampleSd(f1s);
  result.rows.push_back(avg);

  if (!cfg.protocol && cfg.trials >= 5 && mean.mse > 0.0) {
    const double rse = avg.mse_sd / std::sqrt(t) / mean.mse;
    if (rse >= 0.25) {
      result.warnings.push_back(DescribeStack(cfg) + ": relative standard error of MSE is " +
                                Format(rse) + " (>= 0.25)");
    }
  }
  return result;
}

void WriteCsvHeader(std::ostream& out) {
  out << "trial,stack,eps,d,n,r,c,k_prime,t,T,post,mse,k_mse,precision,recall,f1,"
         "time_client_ms,time_server_ms,mse_sd,f1_sd\n";
}

void WriteCsvRows(std::ostream& out, const ExperimentResult& result) {
  const ExperimentConfig& cfg = result.config;
  const std::string stack = DescribeStack(cfg);
  std::string r = "NA";
  std::string c = "NA";
  if (cfg.stack.sketch) {
    r = std::to_string(cfg.stack.sketch->r);
    c = std::to_string(cfg.stack.sketch->c);
  }
  const std::string k_prime =
      cfg.stack.oracle == OracleKind::kFLH ? std::to_string(cfg.stack.oracle_options.k_prime) : "NA";
  const int hm_t = cfg.stack.oracle_options.t == 0 ? HmOptimalT(cfg.eps)
                                                    : cfg.stack.oracle_options.t;
  const std::string t = cfg.stack.oracle == OracleKind::kHM ? std::to_string(hm_t) : "NA";
  const std::string big_t = cfg.protocol ? std::to_string(cfg.hh.T) : "NA";
  const std::string d = cfg.protocol ? "NA" : std::to_string(cfg.d);

  for (const TrialResult& row : result.rows) {
    const Metrics& m = row.metrics;
    out << (row.trial < 0 ? std::string("mean") : std::to_string(row.trial)) << ",\"" << stack
        << "\"," << Format(cfg.eps) << ',' << d << ',' << cfg.n << ',' << r << ',' << c << ','
        << k_prime << ',' << t << ',' << big_t << ',' << PostMethodName(cfg.post) << ','
        << Format(m.mse) << ',' << Format(m.k_mse) << ',' << Format(m.precision) << ','
        << Format(m.recall) << ',' << Format(m.f1) << ','
        << (cfg.timing ? Format(m.time_client_ms) : "NA") << ','
        << (cfg.timing ? Format(m.time_server_ms) : "NA") << ',' << Format(row.mse_sd) << ','
        << Format(row.f1_sd) << '\n';
  }
}

std::vector<std::string> FigureNames() {
  return {"1b", "2", "3a", "4", "6", "7", "8", "hh-table"};
}

std::vector<ExperimentConfig> FigurePreset(std::string_view figure, bool full,
                                           uint64_t seed, int trials) {
  ExperimentConfig base;
  base.seed = seed;
  base.trials = trials;
  base.eps = 3.0;
  base.n = full ? 1000000 : 100000;

  auto oracle = [](OracleKind kind, uint64_t k_prime = 0, int t = 0) {
    StackSpec spec;
    spec.oracle = kind;
    spec.oracle_options.k_prime = k_prime;
    spec.oracle_options.t = t;
    return spec;
  };

  std::vector<ExperimentConfig> out;
  if (figure == "1b") {
    for (OracleKind kind : {OracleKind::kDE, OracleKind::kOUE, OracleKind::kSUE}) {
      for (int log_d = 2; log_d <= 11; ++log_d) {
        ExperimentConfig cfg = base;
        cfg.stack = oracle(kind);
        cfg.d = uint64_t{1} << log_d;
        cfg.k = std::min<uint64_t>(50, cfg.d);
        out.push_back(cfg);
      }
    }
  } else if (figure == "2") {
    ExperimentConfig cfg = base;
    cfg.d = 500;
    cfg.stack = oracle(OracleKind::kOLH);
    out.push_back(cfg);
    for (uint64_t k_prime : {10, 50, 100, 500, 1000, 5000, 10000}) {
      cfg.stack = oracle(OracleKind::kFLH, k_prime);
      out.push_back(cfg);
    }
  } else if (figure == "3a") {
    const std::vector<double> eps_values =
        full ? std::vector<double>{1, 2, 3, 4, 5} : std::vector<double>{1, 3};
    for (double eps : eps_values) {
      for (int t = 1; t <= 5; ++t) {
        ExperimentConfig cfg = base;
        cfg.eps = eps;
        cfg.d = 1024;
        cfg.stack = oracle(OracleKind::kHM, 0, t);
        out.push_back(cfg);
      }
    }
  } else if (figure == "4") {
    const std::vector<double> eps_values =
        full ? std::vector<double>{1, 2, 3, 4, 5} : std::vector<double>{1, 3};
    for (double eps : eps_values) {
      for (const StackSpec& spec :
           {oracle(OracleKind::kOUE), oracle(OracleKind::kOLH), oracle(OracleKind::kBLH),
            oracle(OracleKind::kHR), oracle(OracleKind::kFLH, 10000),
            oracle(OracleKind::kHM)}) {
        ExperimentConfig cfg = base;
        cfg.eps = eps;
        cfg.d = 1024;
        cfg.stack = spec;
        out.push_back(cfg);
      }
    }
  } else if (figure == "6") {
    for (double alpha : {5e-4, 1e-3, 5e-3, 1e-2, 5e-2, 0.5}) {
      ExperimentConfig cfg = base;
      cfg.d = full ? 100000 : 10000;
      cfg.stack = oracle(OracleKind::kOUE);
      SketchOptions bloom;
      bloom.kind = SketchKind::kBloom;
      bloom.r = 2;
      bloom.c = 128;
      bloom.cohorts = 8;
      cfg.stack.sketch = bloom;
      cfg.stack.bloom_alpha = alpha;
      out.push_back(cfg);
    }
  } else if (figure == "7") {
    for (Combine combine : {Combine::kMin, Combine::kMean, Combine::kMedian}) {
      for (uint64_t r : {4, 8, 16, 32, 64, 128}) {
        ExperimentConfig cfg = base;
        cfg.d = full ? 100000 : 10000;
        cfg.stack = oracle(OracleKind::kFLH, 500);
        SketchOptions cm;
        cm.kind = SketchKind::kCountMin;
        cm.r = r;
        cm.c = 1024;
        cm.combine = combine;
        cfg.stack.sketch = cm;
        out.push_back(cfg);
      }
    }
  } else if (figure == "8") {
    for (PostMethod post : {PostMethod::kNone, PostMethod::kNonNeg, PostMethod::kAdditive,
                            PostMethod::kSimplex, PostMethod::kThreshold}) {
      ExperimentConfig cfg = base;
      cfg.d = full ? 100000 : 10000;
      cfg.stack = oracle(OracleKind::kFLH, 500);
      cfg.post = post;
      out.push_back(cfg);
    }
  } else if (figure == "hh-table") {
    for (HHProtocol protocol : {HHProtocol::kPEM, HHProtocol::kSFP, HHProtocol::kTH}) {
      for (int big_t : {10, 20}) {
        ExperimentConfig cfg = base;
        cfg.protocol = protocol;
        cfg.stack = DefaultHHStack();
        cfg.hh.T = big_t;
        cfg.distinct_strings = full ? 2000 : 200;
        out.push_back(cfg);
      }
    }
  } else {
    throw std::invalid_argument("unknown figure '" + std::string(figure) + "'");
  }
  return out;
}

}  // namespace ldpfreq
