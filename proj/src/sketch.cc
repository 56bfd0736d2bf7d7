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

#include "ldpfreq/sketch.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "ldpfreq/report_codec.h"

namespace ldpfreq {
namespace {

constexpr uint64_t kSignSeedSalt = 0x5349474e5f534545;  // "SIGN_SEE"

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

bool SameConfig(const SketchConfig& a, const SketchConfig& b) {
  return a.kind == b.kind && a.d == b.d && a.r == b.r && a.c == b.c &&
         a.cohorts == b.cohorts && a.row_family.seed == b.row_family.seed &&
         a.row_family.mode == b.row_family.mode &&
         a.force_positive_sign == b.force_positive_sign &&
         SameMechanism(a.inner, b.inner);
}

double Median(std::vector<double>& values) {
  const size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + mid);
  return (lower + upper) / 2.0;
}

}  // namespace

std::string_view SketchKindName(SketchKind kind) {
  switch (kind) {
    case SketchKind::kBloom: return "bloom";
    case SketchKind::kCountMin: return "cm";
    case SketchKind::kCountSketch: return "cs";
  }
  return "?";
}

SketchKind ParseSketchKind(std::string_view name) {
  const std::string lower = Lower(name);
  for (SketchKind k : {SketchKind::kBloom, SketchKind::kCountMin, SketchKind::kCountSketch}) {
    if (SketchKindName(k) == lower) return k;
  }
  throw std::invalid_argument("unknown sketch type '" + std::string(name) + "'");
}

std::string_view CombineName(Combine combine) {
  switch (combine) {
    case Combine::kMin: return "min";
    case Combine::kMean: return "mean";
    case Combine::kMedian: return "median";
  }
  return "?";
}

Combine ParseCombine(std::string_view name) {
  const std::string lower = Lower(name);
  for (Combine c : {Combine::kMin, Combine::kMean, Combine::kMedian}) {
    if (CombineName(c) == lower) return c;
  }
  throw std::invalid_argument("unknown combine rule '" + std::string(name) + "'");
}

SketchConfig MakeSketchConfig(const SketchOptions& options, uint64_t d,
                              OracleKind inner_kind, double eps,
                              const OracleOptions& inner_options) {
  if (options.r < 1) throw std::invalid_argument("sketch needs r >= 1");
  if (options.c < 2) throw std::invalid_argument("sketch needs c >= 2");
  if (options.cohorts < 1) throw std::invalid_argument("Bloom needs at least one cohort");
  if (d < 2) throw std::invalid_argument("domain size d must be at least 2");
  if (options.kind == SketchKind::kCountSketch && options.combine == Combine::kMin) {
    throw std::invalid_argument("MIN is undefined for signed Count sketch cells");
  }

  SketchConfig cfg;
  cfg.kind = options.kind;
  cfg.d = d;
  cfg.r = options.r;
  cfg.c = options.c;
  cfg.combine = options.combine;
  cfg.cohorts = options.kind == SketchKind::kBloom ? options.cohorts : 1;
  cfg.row_family = HashFamily{
      options.row_seed, options.c,
      options.injective_rows ? HashMode::kInjective : HashMode::kMixing};
  cfg.sign_family = HashFamily{DeriveSeed(options.row_seed, kSignSeedSalt), 2,
                               HashMode::kMixing};
  cfg.force_positive_sign = options.force_positive_sign;
  cfg.row_post = options.row_post;
  cfg.inner.kind = inner_kind;
  if (options.kind == SketchKind::kCountSketch && !options.force_positive_sign &&
      options.row_post != PostMethod::kNone) {
    throw std::invalid_argument("row post-processing needs unsigned cells");
  }
  const uint64_t inner_d = cfg.split_signs() ? 2 * options.c : options.c;
  cfg.inner = MakeOracleParams(inner_kind, eps, inner_d, inner_options);
  return cfg;
}

std::string DescribeSketch(const SketchConfig& cfg) {
  std::string name = Lower(SketchKindName(cfg.kind));
  for (char& ch : name) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  if (cfg.kind == SketchKind::kBloom) {
    return name + "(k=" + std::to_string(cfg.r) + ",m=" + std::to_string(cfg.c) +
           ",cohorts=" + std::to_string(cfg.cohorts) + ")";
  }
  std::string combine(CombineName(cfg.combine));
  for (char& ch : combine) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return name + "(" + combine + ",r=" + std::to_string(cfg.r) +
         ",c=" + std::to_string(cfg.c) + ")";
}

uint64_t SketchCell(const SketchConfig& cfg, uint64_t row, uint64_t x) {
  return Hash(cfg.row_family, row, x);
}

int SketchSign(const SketchConfig& cfg, uint64_t row, uint64_t x) {
  if (cfg.kind != SketchKind::kCountSketch || cfg.force_positive_sign) return 1;
  return SignHash(cfg.sign_family, row, x);
}

SketchReport SketchEncode(const SketchConfig& cfg, uint64_t x, Rng& rng) {
  if (x >= cfg.d) throw std::out_of_range("item outside sketch domain");
  SketchReport report;
  report.row = rng.UniformInt(cfg.rows());
  if (cfg.kind == SketchKind::kBloom) {
    const uint64_t member = report.row * cfg.r + (cfg.r > 1 ? rng.UniformInt(cfg.r) : 0);
    report.inner = Encode(cfg.inner, Hash(cfg.row_family, member, x), rng);
    return report;
  }
  const uint64_t cell = SketchCell(cfg, report.row, x);
  const int sign = SketchSign(cfg, report.row, x);
  if (cfg.inner.kind == OracleKind::kHM) {
    report.inner = Encode(cfg.inner, cell, rng, sign);
  } else if (cfg.split_signs()) {
    report.inner = Encode(cfg.inner, sign > 0 ? cell : cell + cfg.c, rng);
  } else {
    report.inner = Encode(cfg.inner, cell, rng);
  }
  return report;
}

std::vector<uint64_t> BloomPositions(const SketchConfig& cfg, uint64_t cohort,
                                     uint64_t x) {
  if (cfg.kind != SketchKind::kBloom) throw std::invalid_argument("not a Bloom sketch");
  if (cohort >= cfg.cohorts) throw std::out_of_range("cohort out of range");
  std::vector<uint64_t> positions(cfg.r);
  for (uint64_t l = 0; l < cfg.r; ++l) {
    positions[l] = Hash(cfg.row_family, cohort * cfg.r + l, x);
  }
  return positions;
}

void AppendSketchReport(const SketchReport& report, std::string* out) {
  AppendReport(report.inner, out);
  AppendVarint(report.row, out);
}

SketchReport ParseSketchReport(std::string_view data, size_t* pos) {
  SketchReport report;
  report.inner = ParseReport(data, pos);
  report.row = ReadVarint(data, pos);
  return report;
}

SketchState::SketchState(SketchConfig cfg) : cfg_(std::move(cfg)) {
  rows_.reserve(cfg_.rows());
  for (uint64_t i = 0; i < cfg_.rows(); ++i) rows_.emplace_back(cfg_.inner);
}

void SketchState::Add(const SketchReport& report) {
  if (report.row >= rows_.size()) throw std::invalid_argument("sketch row out of range");
  rows_[report.row].Add(report.inner);
  ++n_;
  finalized_ = false;
}

void SketchState::Merge(const SketchState& other) {
  if (!SameConfig(cfg_, other.cfg_)) {
    throw std::invalid_argument("cannot merge sketches with different configurations");
  }
  for (size_t i = 0; i < rows_.size(); ++i) rows_[i].Merge(other.rows_[i]);
  n_ += other.n_;
  finalized_ = false;
}

void SketchState::Finalize() {
  const uint64_t c = cfg_.c;
  cells_.assign(rows_.size() * c, 0.0);
  for (size_t row = 0; row < rows_.size(); ++row) {
    std::vector<double> est = rows_[row].EstimateAll();
    double* out = cells_.data() + row * c;
    if (cfg_.split_signs()) {
      for (uint64_t j = 0; j < c; ++j) out[j] = est[j] - est[j + c];
    } else if (cfg_.row_post != PostMethod::kNone) {
      est = PostProcess(est, static_cast<double>(rows_[row].n_reports()), cfg_.row_post);
      std::copy(est.begin(), est.end(), out);
    } else {
      std::copy(est.begin(), est.end(), out);
    }
  }
  finalized_ = true;
}

void SketchState::CheckFinalized() const {
  if (!finalized_) throw std::logic_error("SketchState::Finalize() not called");
}

double SketchState::CellEstimate(uint64_t row, uint64_t cell) const {
  CheckFinalized();
  if (row >= rows_.size() || cell >= cfg_.c) throw std::out_of_range("cell out of range");
  return cells_[row * cfg_.c + cell];
}

double SketchState::Estimate(uint64_t x) const {
  CheckFinalized();
  if (cfg_.kind == SketchKind::kBloom) {
    throw std::logic_error("Bloom sketches are decoded with BloomDecode");
  }
  if (x >= cfg_.d) throw std::out_of_range("item outside sketch domain");
  const double r = static_cast<double>(cfg_.r);
  std::vector<double> y(cfg_.r);
  for (uint64_t row = 0; row < cfg_.r; ++row) {
    const uint64_t cell = SketchCell(cfg_, row, x);
    y[row] = r * SketchSign(cfg_, row, x) * cells_[row * cfg_.c + cell];
  }
  switch (cfg_.combine) {
    case Combine::kMin:
      return *std::min_element(y.begin(), y.end());
    case Combine::kMedian:
      return Median(y);
    case Combine::kMean: {
      double mean = 0.0;
      for (double v : y) mean += v;
      mean /= r;
      const bool collisions_add_up =
          cfg_.kind == SketchKind::kCountMin || cfg_.force_positive_sign;
      if (collisions_add_up && cfg_.row_family.mode == HashMode::kMixing) {
        const double c = static_cast<double>(cfg_.c);
        mean = c / (c - 1.0) * (mean - static_cast<double>(n_) / c);
      }
      return mean;
    }
  }
  return 0.0;
}

std::vector<double> SketchState::EstimateMany(std::span<const uint64_t> items) const {
  std::vector<double> out(items.size());
  for (size_t i = 0; i < items.size(); ++i) out[i] = Estimate(items[i]);
  return out;
}

std::vector<double> SketchState::EstimateAll() const {
  std::vector<double> out(cfg_.d);
  for (uint64_t x = 0; x < cfg_.d; ++x) out[x] = Estimate(x);
  return out;
}

std::vector<double> BloomDecode(const SketchState& state,
                                std::span<const uint64_t> candidates,
                                const BloomDecodeOptions& options) {
  const SketchConfig& cfg = state.config();
  if (cfg.kind != SketchKind::kBloom) throw std::invalid_argument("not a Bloom sketch");
  if (candidates.empty()) throw std::invalid_argument("Bloom decoding needs candidates");
  if (!(options.alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");

  // The regression runs on frequencies: the design matrix is the 0/1
  // incidence of candidates and filter positions, and the target is the
  // debiased count per position scaled by k * cohorts / n, whose expectation
  // is the summed frequency of the candidates hashed there.
  const uint64_t m = cfg.c;
  const double n = static_cast<double>(state.n_reports());
  if (n == 0.0) return std::vector<double>(candidates.size(), 0.0);
  const double to_frequency = static_cast<double>(cfg.r * cfg.cohorts) / n;
  std::vector<double> residual(cfg.cohorts * m);
  for (uint64_t b = 0; b < cfg.cohorts; ++b) {
    for (uint64_t j = 0; j < m; ++j) {
      residual[b * m + j] = state.CellEstimate(b, j) * to_frequency;
    }
  }

  const size_t nnz = cfg.cohorts * cfg.r;
  std::vector<uint64_t> rows(candidates.size() * nnz);
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i] >= cfg.d) throw std::out_of_range("candidate outside domain");
    for (uint64_t b = 0; b < cfg.cohorts; ++b) {
      for (uint64_t l = 0; l < cfg.r; ++l) {
        rows[i * nnz + b * cfg.r + l] =
            b * m + Hash(cfg.row_family, b * cfg.r + l, candidates[i]);
      }
    }
  }
  // Two hash functions may pick the same position, so entries can exceed 1.
  std::vector<double> norm2(candidates.size(), 0.0);
  std::vector<double> column(cfg.cohorts * m, 0.0);
  for (size_t i = 0; i < candidates.size(); ++i) {
    for (size_t e = 0; e < nnz; ++e) column[rows[i * nnz + e]] += 1.0;
    for (size_t e = 0; e < nnz; ++e) {
      const uint64_t row = rows[i * nnz + e];
      norm2[i] += column[row] * column[row];
      column[row] = 0.0;
    }
  }

  std::vector<double> f(candidates.size(), 0.0);
  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    double max_step = 0.0;
    double max_f = 0.0;
    for (size_t i = 0; i < candidates.size(); ++i) {
      const uint64_t* idx = rows.data() + i * nnz;
      double gradient = 0.0;
      for (size_t e = 0; e < nnz; ++e) gradient += residual[idx[e]];
      const double updated =
          std::max(0.0, (gradient + norm2[i] * f[i]) / (norm2[i] + options.alpha));
      const double step = updated - f[i];
      if (step != 0.0) {
        for (size_t e = 0; e < nnz; ++e) residual[idx[e]] -= step;
        f[i] = updated;
      }
      max_step = std::max(max_step, std::abs(step));
      max_f = std::max(max_f, f[i]);
    }
    if (max_step <= options.tolerance * (1.0 + max_f)) break;
  }
  for (double& v : f) v *= n;
  return f;
}

}  // namespace ldpfreq
