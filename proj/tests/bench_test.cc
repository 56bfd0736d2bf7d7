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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"

namespace ldpfreq {
namespace {

std::string Csv(const ExperimentResult& result) {
  std::ostringstream out;
  WriteCsvHeader(out);
  WriteCsvRows(out, result);
  return out.str();
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::vector<std::string> Split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
    } else if (ch == ',' && !quoted) {
      out.push_back(field);
      field.clear();
    } else {
      field += ch;
    }
  }
  out.push_back(field);
  return out;
}

ExperimentConfig SmallConfig() {
  ExperimentConfig cfg;
  cfg.stack.oracle = OracleKind::kOUE;
  cfg.eps = 2.0;
  cfg.d = 64;
  cfg.n = 5000;
  cfg.trials = 2;
  cfg.k = 10;
  cfg.seed = 42;
  return cfg;
}

TEST(ZipfTest, WeightsAreRankPowers) {
  const auto w = ZipfWeights(4, 1.1);
  ASSERT_EQ(w.size(), 4u);
  EXPECT_DOUBLE_EQ(w[0], 1.0);
  // Published four-digit values; 3^-1.1 is 0.29865.
  EXPECT_NEAR(w[1], 0.4665, 2e-4);
  EXPECT_NEAR(w[2], 0.2988, 2e-4);
  EXPECT_NEAR(w[3], 0.2176, 2e-4);
  for (uint64_t j = 1; j <= 4; ++j) EXPECT_DOUBLE_EQ(w[j - 1], std::pow(j, -1.1));
}

TEST(ZipfTest, EmpiricalFrequenciesMatchWeights) {
  const uint64_t n = 1000000;
  const Dataset data = GenZipf(n, 4, 1.1, 7);
  const auto w = ZipfWeights(4, 1.1);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  ASSERT_EQ(data.items.size(), n);
  EXPECT_EQ(std::accumulate(data.true_freqs.begin(), data.true_freqs.end(), uint64_t{0}), n);
  for (size_t j = 0; j < 4; ++j) {
    EXPECT_NEAR(data.true_freqs[j] / static_cast<double>(n), w[j] / total, 0.005);
  }
}

TEST(ZipfTest, TinyExponentIsNearlyUniform) {
  const uint64_t n = 200000, d = 50;
  const Dataset data = GenZipf(n, d, 1e-9, 3);
  double chi2 = 0.0;
  const double expected = static_cast<double>(n) / d;
  for (uint64_t c : data.true_freqs) chi2 += (c - expected) * (c - expected) / expected;
  // 0.001 critical value, 49 degrees of freedom.
  EXPECT_LT(chi2, 85.35);
}

TEST(ZipfTest, DeterministicAndValidated) {
  EXPECT_EQ(GenZipf(1000, 100, 1.1, 5).items, GenZipf(1000, 100, 1.1, 5).items);
  EXPECT_NE(GenZipf(1000, 100, 1.1, 5).items, GenZipf(1000, 100, 1.1, 6).items);
  EXPECT_THROW(GenZipf(0, 100, 1.1, 5), std::invalid_argument);
  EXPECT_THROW(GenZipf(10, 1, 1.1, 5), std::invalid_argument);
  EXPECT_THROW(GenZipf(10, 100, 0.0, 5), std::invalid_argument);
}

TEST(ZipfTest, StringPopulation) {
  const StringDataset data = GenZipfStrings(20000, 50, 6, "abc", 1.1, 9);
  EXPECT_EQ(data.items.size(), 20000u);
  EXPECT_LE(data.histogram.size(), 50u);
  for (size_t i = 1; i < data.histogram.size(); ++i) {
    EXPECT_GE(data.histogram[i - 1].second, data.histogram[i].second);
  }
  for (const auto& s : data.items) {
    EXPECT_EQ(s.size(), 6u);
    EXPECT_EQ(s.find_first_not_of("abc"), std::string::npos);
  }
}

TEST(IngestTest, CleansUrls) {
  const std::string az = "abcdefghijklmnopqrstuvwxyz";
  EXPECT_EQ(CleanString("https://www.Google.com/search", 6, az), "google");
  EXPECT_EQ(CleanString("http://a.com", 6, az), "acom");
  EXPECT_EQ(CleanString("WWW.Example.org", 6, az), "exampl");
  EXPECT_EQ(CleanString("12345", 6, az), "");
}

TEST(IngestTest, ReadsFilesDeterministically) {
  const std::string path = ::testing::TempDir() + "ldpfreq_ingest.txt";
  {
    std::ofstream out(path);
    out << "https://www.Google.com/search\nhttp://a.com\n\n123\ngoogle.co.uk\nA.COM\n";
  }
  const std::string az = "abcdefghijklmnopqrstuvwxyz";
  const StringDataset a = IngestStrings(path, 6, az);
  const StringDataset b = IngestStrings(path, 6, az);
  EXPECT_EQ(a.items, (std::vector<std::string>{"google", "acom", "google", "acom"}));
  EXPECT_EQ(a.histogram, b.histogram);
  ASSERT_EQ(a.histogram.size(), 2u);
  EXPECT_EQ(a.histogram[0], (std::pair<std::string, uint64_t>{"acom", 2}));

  {
    std::ofstream out(path);
    out << "pear\napple\npear\nfig\n";
  }
  const Dataset items = IngestItems(path, 2);
  EXPECT_EQ(items.d, 3u);
  EXPECT_EQ(items.items, (std::vector<uint64_t>{2, 0, 2, 1}));
  EXPECT_EQ(items.true_freqs, (std::vector<uint64_t>{1, 1, 2}));
  std::remove(path.c_str());
  EXPECT_THROW(IngestStrings(path, 6, az), std::runtime_error);
}

TEST(MetricsTest, WorkedExamples) {
  const std::vector<uint64_t> truth = {10, 5, 1};
  const std::vector<double> est = {8, 5, 1};
  EXPECT_DOUBLE_EQ(KMse(est, truth, 2), 2.0);
  EXPECT_DOUBLE_EQ(Mse(est, truth), 4.0 / 3.0);
  const std::vector<double> exact = {10, 5, 1};
  const Metrics m = EvaluateFrequencies(exact, truth, 2);
  EXPECT_EQ(m.mse, 0.0);
  EXPECT_EQ(m.k_mse, 0.0);
  EXPECT_EQ(m.f1, 1.0);
  EXPECT_THROW(KMse(est, truth, 4), std::invalid_argument);

  const std::vector<std::string> found = {"a", "b", "c"}, expected = {"a", "b", "d"};
  const SetMetrics s = CompareSets(found, expected);
  EXPECT_DOUBLE_EQ(s.precision, 2.0 / 3);
  EXPECT_DOUBLE_EQ(s.recall, 2.0 / 3);
  EXPECT_DOUBLE_EQ(s.f1, 2.0 / 3);
  const SetMetrics none = CompareSets({}, expected);
  EXPECT_EQ(none.f1, 0.0);
}

TEST(MetricsTest, F1IsTheHarmonicMean) {
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> a, b;
    for (int j = 0; j < 10; ++j) {
      if (rng.Bernoulli(0.5)) a.push_back(std::to_string(j));
      if (rng.Bernoulli(0.5)) b.push_back(std::to_string(j));
    }
    const SetMetrics s = CompareSets(a, b);
    EXPECT_GE(s.precision, 0.0);
    EXPECT_LE(s.precision, 1.0);
    EXPECT_GE(s.recall, 0.0);
    EXPECT_LE(s.recall, 1.0);
    const double want = s.precision + s.recall > 0
                            ? 2 * s.precision * s.recall / (s.precision + s.recall)
                            : 0.0;
    EXPECT_DOUBLE_EQ(s.f1, want);
  }
}

TEST(MetricsTest, TopKBreaksTiesBySmallerIndex) {
  const std::vector<uint64_t> truth = {3, 7, 7, 1, 3};
  EXPECT_EQ(TopK(truth, 3), (std::vector<uint64_t>{1, 2, 0}));
  const std::vector<double> est = {0.5, 2.0, 2.0, -1.0};
  EXPECT_EQ(TopKEstimates(est, 2), (std::vector<uint64_t>{1, 2}));
}

TEST(ExperimentTest, OneRowPerTrialPlusMean) {
  ExperimentConfig cfg = SmallConfig();
  cfg.trials = 5;
  const ExperimentResult result = RunExperiment(cfg);
  ASSERT_EQ(result.rows.size(), 6u);
  EXPECT_EQ(result.rows.back().trial, -1);
  double mean = 0.0;
  for (int i = 0; i < 5; ++i) mean += result.rows[i].metrics.mse / 5;
  EXPECT_NEAR(result.rows.back().metrics.mse, mean, 1e-9 * mean);
  EXPECT_GT(result.rows.back().mse_sd, 0.0);
  const auto lines = Lines(Csv(result));
  ASSERT_EQ(lines.size(), 7u);
  EXPECT_EQ(lines[0],
            "trial,stack,eps,d,n,r,c,k_prime,t,T,post,mse,k_mse,precision,recall,f1,"
            "time_client_ms,time_server_ms,mse_sd,f1_sd");
  const auto mean_row = Split(lines.back());
  ASSERT_EQ(mean_row.size(), 20u);
  EXPECT_EQ(mean_row[0], "mean");
  EXPECT_EQ(mean_row[1], "OUE");
  EXPECT_EQ(mean_row[16], "NA");
  EXPECT_EQ(mean_row[17], "NA");
}

TEST(ExperimentTest, EmpiricalMseTracksTheory) {
  ExperimentConfig cfg = SmallConfig();
  cfg.n = 20000;
  cfg.trials = 5;
  const double mse = RunExperiment(cfg).rows.back().metrics.mse;
  const double theory = cfg.n * TheoreticalVariance(OracleKind::kOUE, cfg.eps, cfg.d);
  EXPECT_GT(mse / theory, 0.8);
  EXPECT_LT(mse / theory, 1.2);
}

TEST(ExperimentTest, RerunsAreByteIdentical) {
  ExperimentConfig cfg = SmallConfig();
  cfg.stack.oracle = OracleKind::kFLH;
  cfg.stack.oracle_options.k_prime = 50;
  SketchOptions sketch;
  sketch.r = 4;
  sketch.c = 32;
  cfg.stack.sketch = sketch;
  cfg.d = 500;
  cfg.post = PostMethod::kAdditive;
  const std::string a = Csv(RunExperiment(cfg));
  EXPECT_EQ(a, Csv(RunExperiment(cfg)));
  cfg.threads = 3;
  EXPECT_EQ(a, Csv(RunExperiment(cfg)));
  cfg.seed = 43;
  EXPECT_NE(a, Csv(RunExperiment(cfg)));
}

TEST(ExperimentTest, HeavyHitterRows) {
  ExperimentConfig cfg;
  cfg.protocol = HHProtocol::kPEM;
  cfg.stack = DefaultHHStack();
  cfg.n = 20000;
  cfg.trials = 2;
  cfg.distinct_strings = 50;
  const ExperimentResult result = RunExperiment(cfg);
  const auto row = Split(Lines(Csv(result)).back());
  EXPECT_EQ(row[1], "PEM[CM(MEDIAN,r=32,c=1024)+FLH(k'=500)]");
  EXPECT_EQ(row[9], "10");
  EXPECT_EQ(row[11], "NA");
  const double f1 = result.rows.back().metrics.f1;
  EXPECT_GE(f1, 0.0);
  EXPECT_LE(f1, 1.0);
}

TEST(ExperimentTest, TimingIsNonNegative) {
  ExperimentConfig cfg = SmallConfig();
  cfg.timing = true;
  const ExperimentResult result = RunExperiment(cfg);
  for (const auto& row : result.rows) {
    EXPECT_GE(row.metrics.time_client_ms, 0.0);
    EXPECT_GE(row.metrics.time_server_ms, 0.0);
  }
  EXPECT_NE(Split(Lines(Csv(result)).back())[16], "NA");
}

TEST(ExperimentTest, ValidationHappensUpFront) {
  ExperimentConfig cfg = SmallConfig();
  cfg.trials = 0;
  EXPECT_THROW(ValidateExperiment(cfg), std::invalid_argument);
  cfg = SmallConfig();
  cfg.k = 100;
  EXPECT_THROW(RunExperiment(cfg), std::invalid_argument);
  cfg = SmallConfig();
  cfg.eps = -1;
  EXPECT_THROW(RunExperiment(cfg), std::invalid_argument);
  cfg = SmallConfig();
  cfg.stack.oracle = OracleKind::kFLH;
  EXPECT_THROW(ValidateExperiment(cfg), std::invalid_argument);
}

TEST(FigurePresetTest, EveryPresetValidates) {
  for (const std::string& name : FigureNames()) {
    for (bool full : {false, true}) {
      const auto configs = FigurePreset(name, full, 1, 2);
      EXPECT_FALSE(configs.empty()) << name;
      for (const auto& cfg : configs) {
        EXPECT_NO_THROW(ValidateExperiment(cfg)) << name;
        EXPECT_EQ(cfg.trials, 2);
      }
    }
  }
  EXPECT_THROW(FigurePreset("9z", false, 1, 1), std::invalid_argument);
}

}  // namespace
}  // namespace ldpfreq
