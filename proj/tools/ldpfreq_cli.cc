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

// ldpfreq: command-line front end for the frequency-estimation library.
//
//   ldpfreq freq   --oracle OLH --eps 3 -d 1024 -n 100000
//   ldpfreq sketch --sketch 32,1024 --combine median --oracle FLH --kprime 500
//   ldpfreq hh     --protocol pem --eps 3 -T 10 --input urls.txt
//   ldpfreq bench  --figure 1b --seed 7 --out fig1b.csv
//   ldpfreq verify --eps 1.0986 -d 4
//
// Exit status: 0 on success, 2 on a configuration error, 1 on failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ldpfreq/bench.h"
#include "ldpfreq/heavy_hitters.h"
#include "ldpfreq/oracles.h"
#include "ldpfreq/postprocess.h"
#include "ldpfreq/privacy_audit.h"
#include "ldpfreq/report_codec.h"
#include "ldpfreq/sketch.h"
#include "ldpfreq/stack.h"

namespace {

using namespace ldpfreq;

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

struct Options {
  std::string oracle = "OLH";
  double eps = 3.0;
  uint64_t d = 1024;
  uint64_t n = 100000;
  int trials = 5;
  uint64_t seed = 0;
  uint64_t k = 50;
  double zipf = 1.1;
  uint64_t kprime = 10000;
  int t = 0;
  std::string post = "none";
  std::string input;
  std::string out;
  bool timing = false;
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  // sketch
  std::string sketch = "32,1024";
  std::string sketch_type = "cm";
  std::string combine = "median";
  double alpha = 0.005;
  uint64_t cohorts = 1;

  // hh
  std::string protocol = "pem";
  std::string hh_oracle = "FLH";
  uint64_t hh_kprime = 500;
  int top = 10;
  int fragment_len = 2;
  int hash_bits = 8;
  std::string alphabet = "abcdefghijklmnopqrstuvwxyz";
  int max_len = 6;
  int start_len = 2;
  int step = 2;
  double split = 0.5;
  uint64_t distinct = 200;
  std::string trace;
  bool plain = false;

  // bench
  std::string figure;
  bool full = false;

  // report files (freq)
  std::string reports_out;
  std::string reports_in;
};

std::pair<uint64_t, uint64_t> ParseGeometry(const std::string& text) {
  const size_t comma = text.find(',');
  if (comma == std::string::npos) {
    throw std::invalid_argument("--sketch expects r,c (e.g. 32,1024)");
  }
  try {
    return {std::stoull(text.substr(0, comma)), std::stoull(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw std::invalid_argument("--sketch expects r,c (e.g. 32,1024)");
  }
}

StackSpec OracleSpec(const Options& o) {
  StackSpec spec;
  spec.oracle = ParseOracleKind(o.oracle);
  spec.oracle_options.k_prime = o.kprime;
  spec.oracle_options.t = o.t;
  return spec;
}

SketchOptions SketchSpec(const Options& o) {
  SketchOptions sketch;
  sketch.kind = ParseSketchKind(o.sketch_type);
  std::tie(sketch.r, sketch.c) = ParseGeometry(o.sketch);
  sketch.combine = ParseCombine(o.combine);
  sketch.cohorts = o.cohorts;
  return sketch;
}

ExperimentConfig FrequencyConfig(const Options& o) {
  ExperimentConfig cfg;
  cfg.stack = OracleSpec(o);
  cfg.post = ParsePostMethod(o.post);
  cfg.eps = o.eps;
  cfg.d = o.d;
  cfg.n = o.n;
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.k = o.k;
  cfg.zipf_s = o.zipf;
  cfg.input_path = o.input;
  cfg.timing = o.timing;
  cfg.threads = o.threads;
  return cfg;
}

// Output stream for --out, or stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void PrintWarnings(const ExperimentResult& result) {
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
}

int RunExperimentCommand(const ExperimentConfig& cfg, const std::string& out_path) {
  const ExperimentResult result = RunExperiment(cfg);
  Output out(out_path);
  WriteCsvHeader(out.stream());
  WriteCsvRows(out.stream(), result);
  PrintWarnings(result);
  return 0;
}

// Encodes one pass of synthetic data and writes the reports to a file.
int WriteReports(const Options& o) {
  const ExperimentConfig cfg = FrequencyConfig(o);
  const Dataset data = o.input.empty() ? GenZipf(cfg.n, cfg.d, cfg.zipf_s, DeriveSeed(o.seed, 1))
                                       : IngestItems(o.input, cfg.d);
  StackSpec spec = cfg.stack;
  spec.oracle_options.hash_seed = o.seed;
  const PureParams params = MakeOracleParams(spec.oracle, o.eps, data.d, spec.oracle_options);
  Rng rng(DeriveSeed(o.seed, 2));
  std::vector<Report> reports;
  reports.reserve(data.items.size());
  for (uint64_t x : data.items) reports.push_back(Encode(params, x, rng));
  WriteReportFile(o.reports_out, reports);
  std::cerr << "wrote " << reports.size() << " " << OracleName(params.kind)
            << " reports to " << o.reports_out << "\n";
  return 0;
}

// Aggregates a report file and prints one estimate per item.
int DecodeReports(const Options& o) {
  StackSpec spec = OracleSpec(o);
  spec.oracle_options.hash_seed = o.seed;
  const PureParams params = MakeOracleParams(spec.oracle, o.eps, o.d, spec.oracle_options);
  const std::vector<Report> reports = ReadReportFile(o.reports_in);
  AggState state(params);
  for (const auto& report : reports) state.Add(report);
  std::vector<double> est = state.EstimateAll();
  est = PostProcess(est, static_cast<double>(state.n_reports()), ParsePostMethod(o.post));
  Output out(o.out);
  out.stream() << "item,estimate\n";
  char buf[64];
  for (uint64_t x = 0; x < est.size(); ++x) {
    std::snprintf(buf, sizeof(buf), "%.9g", est[x]);
    out.stream() << x << ',' << buf << '\n';
  }
  return 0;
}

int RunFreq(const Options& o) {
  if (!o.reports_out.empty() && !o.reports_in.empty()) {
    throw std::invalid_argument("--reports-out and --reports-in are exclusive");
  }
  if (!o.reports_out.empty()) return WriteReports(o);
  if (!o.reports_in.empty()) return DecodeReports(o);
  return RunExperimentCommand(FrequencyConfig(o), o.out);
}

int RunSketch(const Options& o) {
  ExperimentConfig cfg = FrequencyConfig(o);
  cfg.stack.sketch = SketchSpec(o);
  cfg.stack.bloom_alpha = o.alpha;
  return RunExperimentCommand(cfg, o.out);
}

HHConfig HeavyHitterConfig(const Options& o) {
  HHConfig cfg;
  cfg.alphabet = o.alphabet;
  cfg.max_len = o.max_len;
  cfg.fragment_len = o.fragment_len;
  cfg.hash_bits = o.hash_bits;
  cfg.start_len = o.start_len;
  cfg.prefix_step = o.step;
  cfg.T = o.top;
  cfg.eps = o.eps;
  cfg.budget_split = o.split;
  cfg.stack = DefaultHHStack();
  cfg.stack.oracle = ParseOracleKind(o.hh_oracle);
  cfg.stack.oracle_options.k_prime = o.hh_kprime;
  cfg.stack.oracle_options.t = o.t;
  if (o.plain) {
    cfg.stack.sketch.reset();
  } else {
    cfg.stack.sketch->kind = ParseSketchKind(o.sketch_type);
    std::tie(cfg.stack.sketch->r, cfg.stack.sketch->c) = ParseGeometry(o.sketch);
    cfg.stack.sketch->combine = ParseCombine(o.combine);
  }
  cfg.seed = DeriveSeed(o.seed, 3);
  cfg.trace = !o.trace.empty();
  return cfg;
}

int RunHh(const Options& o) {
  const HHProtocol protocol = ParseHHProtocol(o.protocol);
  const HeavyHitters hh(protocol, HeavyHitterConfig(o));
  const StringDataset data =
      o.input.empty()
          ? GenZipfStrings(o.n, o.distinct, o.max_len, o.alphabet, o.zipf, DeriveSeed(o.seed, 1))
          : IngestStrings(o.input, o.max_len, o.alphabet);
  if (data.items.empty()) throw std::runtime_error("no usable strings in " + o.input);

  const HHResult result = RunHeavyHitters(hh, data.items, DeriveSeed(o.seed, 2));
  const Metrics m = EvaluateHeavyHitters(result, data, static_cast<uint64_t>(o.top));

  Output out(o.out);
  out.stream() << "rank,string,estimate\n";
  char buf[64];
  for (size_t i = 0; i < result.items.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.9g", result.items[i].estimate);
    out.stream() << i + 1 << ',' << result.items[i].value << ',' << buf << '\n';
  }
  std::fprintf(stderr, "%s n=%zu precision=%.4f recall=%.4f f1=%.4f\n", hh.Describe().c_str(),
               data.items.size(), m.precision, m.recall, m.f1);

  if (!o.trace.empty()) {
    std::ofstream trace(o.trace);
    if (!trace) throw std::runtime_error("cannot write " + o.trace);
    trace << "phase,candidate,estimate\n";
    for (const auto& row : result.trace) {
      std::snprintf(buf, sizeof(buf), "%.9g", row.estimate);
      trace << row.phase << ',' << row.candidate << ',' << buf << '\n';
    }
  }
  return 0;
}

int RunBench(const Options& o) {
  if (o.figure.empty()) throw std::invalid_argument("bench needs --figure");
  std::vector<ExperimentConfig> configs = FigurePreset(o.figure, o.full, o.seed, o.trials);
  Output out(o.out);
  WriteCsvHeader(out.stream());
  for (auto& cfg : configs) {
    cfg.timing = o.timing;
    cfg.threads = o.threads;
    const ExperimentResult result = RunExperiment(cfg);
    WriteCsvRows(out.stream(), result);
    out.stream().flush();
    PrintWarnings(result);
    std::cerr << "done: " << DescribeStack(cfg) << " eps=" << cfg.eps << "\n";
  }
  return 0;
}

int RunVerify(const Options& o) {
  bool all_ok = true;
  std::printf("oracle,max_ratio,bound,outputs,ok\n");
  for (OracleKind kind : kAllOracleKinds) {
    OracleOptions options;
    options.k_prime = 16;
    const PureParams params = MakeOracleParams(kind, o.eps, o.d, options);
    const PrivacyAudit audit = AuditPrivacy(params);
    const bool ok = audit.Satisfies();
    all_ok = all_ok && ok;
    std::printf("%s,%.6f,%.6f,%llu,%s\n", std::string(OracleName(kind)).c_str(),
                audit.max_ratio, audit.bound,
                static_cast<unsigned long long>(audit.outputs), ok ? "yes" : "NO");
  }
  return all_ok ? 0 : kExitFailure;
}

void AddDataFlags(CLI::App* cmd, Options& o) {
  cmd->add_option("--oracle", o.oracle, "Frequency oracle: DE SUE OUE BLH OLH FLH HM HR")
      ->capture_default_str();
  cmd->add_option("--eps", o.eps, "Privacy parameter epsilon")->capture_default_str();
  cmd->add_option("-d,--domain", o.d, "Domain size")->capture_default_str();
  cmd->add_option("-n,--users", o.n, "Number of users (synthetic data)")->capture_default_str();
  cmd->add_option("--trials", o.trials, "Independent trials")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  cmd->add_option("--k", o.k, "Top-k for k-MSE and precision/recall")->capture_default_str();
  cmd->add_option("--zipf", o.zipf, "Zipf exponent of synthetic data")->capture_default_str();
  cmd->add_option("--kprime", o.kprime, "FLH: number of shared hash functions")
      ->capture_default_str();
  cmd->add_option("-t", o.t, "HM: coefficients per report (0 = ceil(eps))")
      ->capture_default_str();
  cmd->add_option("--post", o.post, "Post-processing: none nonneg additive simplex threshold")
      ->capture_default_str();
  cmd->add_option("--input", o.input, "Data file, one item per line (default: Zipf data)");
  cmd->add_option("--out", o.out, "CSV output file (default: stdout)");
  cmd->add_flag("--timing", o.timing, "Fill the wall-time columns (output is then not reproducible)");
  cmd->add_option("--threads", o.threads, "Trials run in parallel")->capture_default_str();
}

void AddSketchFlags(CLI::App* cmd, Options& o) {
  cmd->add_option("--sketch", o.sketch, "Sketch geometry r,c (Bloom: k,m)")->capture_default_str();
  cmd->add_option("--sketch-type", o.sketch_type, "cm, cs or bloom")->capture_default_str();
  cmd->add_option("--combine", o.combine, "Row combination: min mean median")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Locally differentially private frequency estimation"};
  app.set_config("--config", "", "Key-value config file (same names as the flags)");
  app.require_subcommand(1);

  CLI::App* freq = app.add_subcommand("freq", "Run one frequency oracle end to end");
  AddDataFlags(freq, o);
  freq->add_option("--reports-out", o.reports_out,
                   "Encode one pass of the data and write the binary reports here");
  freq->add_option("--reports-in", o.reports_in,
                   "Aggregate a binary report file and print per-item estimates");

  CLI::App* sketch = app.add_subcommand("sketch", "Frequency oracle behind a sketch");
  AddDataFlags(sketch, o);
  AddSketchFlags(sketch, o);
  sketch->add_option("--alpha", o.alpha, "Bloom: ridge regularization")->capture_default_str();
  sketch->add_option("--cohorts", o.cohorts, "Bloom: number of cohorts")->capture_default_str();

  CLI::App* hh = app.add_subcommand("hh", "Heavy-hitter discovery over strings");
  hh->add_option("--protocol", o.protocol, "sfp, pem or th")->capture_default_str();
  hh->add_option("--oracle", o.hh_oracle, "Oracle for every phase")->capture_default_str();
  hh->add_option("--eps", o.eps, "Privacy parameter epsilon")->capture_default_str();
  hh->add_option("-T,--top", o.top, "Candidates kept per phase and reported")
      ->capture_default_str();
  hh->add_option("--fragment-len", o.fragment_len, "SFP: fragment length")->capture_default_str();
  hh->add_option("--hash-bits", o.hash_bits, "SFP: tag width in bits")->capture_default_str();
  hh->add_option("--alphabet", o.alphabet, "Characters kept from the input")
      ->capture_default_str();
  hh->add_option("--max-len", o.max_len, "Strings are truncated to this length")
      ->capture_default_str();
  hh->add_option("--start-len", o.start_len, "PEM/TH: first prefix length")
      ->capture_default_str();
  hh->add_option("--step", o.step, "PEM/TH: prefix extension per phase")->capture_default_str();
  hh->add_option("--split", o.split, "SFP/TH: share of eps for the full-string report")
      ->capture_default_str();
  hh->add_option("--kprime", o.hh_kprime, "FLH: number of shared hash functions")
      ->capture_default_str();
  hh->add_option("-t", o.t, "HM: coefficients per report (0 = ceil(eps))")
      ->capture_default_str();
  AddSketchFlags(hh, o);
  hh->add_flag("--plain", o.plain, "Never sketch a phase");
  hh->add_option("-n,--users", o.n, "Synthetic population size")->capture_default_str();
  hh->add_option("--distinct", o.distinct, "Distinct strings in the synthetic population")
      ->capture_default_str();
  hh->add_option("--zipf", o.zipf, "Zipf exponent of synthetic data")->capture_default_str();
  hh->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  hh->add_option("--input", o.input, "Strings, one per line (URLs are cleaned)");
  hh->add_option("--out", o.out, "Result CSV (default: stdout)");
  hh->add_option("--trace", o.trace, "Write every queried candidate to this CSV");

  CLI::App* bench = app.add_subcommand("bench", "Reproduce a figure or table as CSV");
  bench->add_option("--figure", o.figure, "1b 2 3a 4 6 7 8 hh-table")
      ->required()
      ->check(CLI::IsMember(FigureNames()));
  bench->add_flag("--full", o.full, "Full-scale settings (slow)");
  bench->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  bench->add_option("--trials", o.trials, "Independent trials per configuration")
      ->capture_default_str();
  bench->add_option("--out", o.out, "CSV output file (default: stdout)");
  bench->add_flag("--timing", o.timing, "Fill the wall-time columns");
  bench->add_option("--threads", o.threads, "Trials run in parallel")->capture_default_str();

  CLI::App* verify = app.add_subcommand("verify", "Exhaustive LDP check of every oracle");
  verify->add_option("--eps", o.eps, "Privacy parameter epsilon")->capture_default_str();
  verify->add_option("-d,--domain", o.d, "Domain size (small)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code == 0) return 0;
    std::cerr << app.help();
    return kExitConfig;
  }

  try {
    if (*freq) return RunFreq(o);
    if (*sketch) return RunSketch(o);
    if (*hh) return RunHh(o);
    if (*bench) return RunBench(o);
    if (*verify) return RunVerify(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitConfig;
}
