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

#ifndef LDPFREQ_BENCH_H_
#define LDPFREQ_BENCH_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ldpfreq/heavy_hitters.h"
#include "ldpfreq/postprocess.h"
#include "ldpfreq/stack.h"

namespace ldpfreq {

struct Dataset {
  uint64_t d = 0;
  std::vector<uint64_t> items;
  // Exact histogram over [d].
  std::vector<uint64_t> true_freqs;
};

struct StringDataset {
  std::vector<std::string> items;
  // Distinct strings by count descending, ties lexicographic.
  std::vector<std::pair<std::string, uint64_t>> histogram;
};

// Unnormalized weights j^-s for ranks j = 1..d.
std::vector<double> ZipfWeights(uint64_t d, double s);

// n i.i.d. draws with Pr[item j-1] proportional to j^-s; item 0 is the most
// frequent. Throws std::invalid_argument for n < 1, d < 2 or s <= 0.
Dataset GenZipf(uint64_t n, uint64_t d, double s, uint64_t seed);

// Builds the histogram for `items` over [d].
Dataset MakeDataset(std::vector<uint64_t> items, uint64_t d);

// `distinct` different random strings of length `len` over `alphabet`, then
// n Zipf(s) draws among them.
StringDataset GenZipfStrings(uint64_t n, uint64_t distinct, int len,
                             std::string_view alphabet, double s, uint64_t seed);

StringDataset MakeStringDataset(std::vector<std::string> items);

// Strips a leading scheme ("http://", "https://") and "www.", lowercases,
// drops characters outside `alphabet` and truncates to max_len.
std::string CleanString(std::string_view line, int max_len, std::string_view alphabet);

// One string per line; lines that are empty after cleaning are skipped.
// Throws std::runtime_error if the file cannot be read.
StringDataset IngestStrings(const std::string& path, int max_len,
                            std::string_view alphabet);

// Reads one item per line and numbers the distinct lines in lexicographic
// order; d is the larger of min_d and the number of distinct lines.
Dataset IngestItems(const std::string& path, uint64_t min_d);

struct SetMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Indices of the k largest counts, ties to the smaller index. Throws
// std::invalid_argument if k > truth.size().
std::vector<uint64_t> TopK(std::span<const uint64_t> truth, uint64_t k);
std::vector<uint64_t> TopKEstimates(std::span<const double> estimates, uint64_t k);
double Mse(std::span<const double> estimates, std::span<const uint64_t> truth);
double KMse(std::span<const double> estimates, std::span<const uint64_t> truth,
            uint64_t k);
SetMetrics CompareSets(std::span<const std::string> found,
                       std::span<const std::string> expected);

struct Metrics {
  double mse = 0.0;
  double k_mse = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double time_client_ms = 0.0;
  double time_server_ms = 0.0;
};

// Frequency metrics; precision/recall/F1 compare the top-k of the estimates
// with the true top-k.
Metrics EvaluateFrequencies(std::span<const double> estimates,
                            std::span<const uint64_t> truth, uint64_t k);
// Discovered strings against the true top-k strings.
Metrics EvaluateHeavyHitters(const HHResult& result, const StringDataset& truth,
                             uint64_t k);

struct ExperimentConfig {
  StackSpec stack;
  PostMethod post = PostMethod::kNone;
  double eps = 3.0;
  uint64_t d = 1024;
  uint64_t n = 100000;
  int trials = 5;
  uint64_t seed = 0;
  // Top-k for k-MSE and the frequency-mode set metrics.
  uint64_t k = 50;
  double zipf_s = 1.1;
  // Item (frequency mode) or string (heavy-hitter mode) file; synthetic
  // Zipf data otherwise.
  std::string input_path;
  // Heavy-hitter mode when set. Set metrics use the true top-T strings.
  std::optional<HHProtocol> protocol;
  HHConfig hh;
  uint64_t distinct_strings = 200;
  // Records wall times; otherwise the timing columns read NA so reruns are
  // byte-identical.
  bool timing = false;
  int threads = 1;
};

// Throws std::invalid_argument before doing any work.
void ValidateExperiment(const ExperimentConfig& cfg);

// "OLH", "CM(MEDIAN,r=32,c=1024)+FLH(k'=500)", "PEM[...]", ...
std::string DescribeStack(const ExperimentConfig& cfg);

struct TrialResult {
  // Trial number, or -1 for the averaged row.
  int trial = 0;
  Metrics metrics;
  // Sample standard deviations over trials (averaged row only).
  double mse_sd = 0.0;
  double f1_sd = 0.0;
};

Metrics RunTrial(const ExperimentConfig& cfg, int trial);

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialResult> rows;  // one per trial, then the average
  std::vector<std::string> warnings;
};

ExperimentResult RunExperiment(const ExperimentConfig& cfg);

void WriteCsvHeader(std::ostream& out);
void WriteCsvRows(std::ostream& out, const ExperimentResult& result);

// Sweep reproducing one figure or table: "1b", "2", "3a", "4", "6", "7", "8"
// or "hh-table". `full` switches to the larger, slower settings. Throws
// std::invalid_argument for unknown names.
std::vector<ExperimentConfig> FigurePreset(std::string_view figure, bool full,
                                           uint64_t seed, int trials);
std::vector<std::string> FigureNames();

}  // namespace ldpfreq

#endif  // LDPFREQ_BENCH_H_
