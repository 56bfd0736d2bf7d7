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

#ifndef LDPFREQ_SKETCH_H_
#define LDPFREQ_SKETCH_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ldpfreq/hashing.h"
#include "ldpfreq/oracles.h"
#include "ldpfreq/postprocess.h"

namespace ldpfreq {

enum class SketchKind { kBloom, kCountMin, kCountSketch };
enum class Combine { kMin, kMean, kMedian };

std::string_view SketchKindName(SketchKind kind);
SketchKind ParseSketchKind(std::string_view name);  // "bloom", "cm", "cs"
std::string_view CombineName(Combine combine);
Combine ParseCombine(std::string_view name);

struct SketchOptions {
  SketchKind kind = SketchKind::kCountMin;
  // Rows; for Bloom, the number of hash functions k.
  uint64_t r = 32;
  // Columns; for Bloom, the filter width m.
  uint64_t c = 1024;
  Combine combine = Combine::kMedian;
  // Bloom only: independent filters, each with its own k hash functions.
  uint64_t cohorts = 1;
  uint64_t row_seed = 0;
  // Member l maps x to (x + l) mod c, which is collision-free when d <= c.
  bool injective_rows = false;
  // Count sketch with every sign fixed to +1.
  bool force_positive_sign = false;
  // Applied to each row's cell estimates before combining.
  PostMethod row_post = PostMethod::kNone;
};

struct SketchConfig {
  SketchKind kind = SketchKind::kCountMin;
  uint64_t d = 0;
  uint64_t r = 0;
  uint64_t c = 0;
  Combine combine = Combine::kMedian;
  uint64_t cohorts = 1;
  HashFamily row_family;
  HashFamily sign_family;
  bool force_positive_sign = false;
  PostMethod row_post = PostMethod::kNone;
  // Inner oracle. Count sketch rows carry signed cells: HM encodes the sign
  // natively, other oracles one-hot encode over [2c] with negative cells
  // shifted by c. In every case the sign is privatized with the cell.
  PureParams inner;

  // Number of independently aggregated rows. A Bloom report names only its
  // cohort; the hash function it sampled stays on the client.
  uint64_t rows() const { return kind == SketchKind::kBloom ? cohorts : r; }
  bool split_signs() const {
    return kind == SketchKind::kCountSketch && !force_positive_sign &&
           inner.kind != OracleKind::kHM;
  }
};

// Throws std::invalid_argument for r < 1, c < 2, cohorts < 1, MIN with a
// Count sketch, or a row post-processing rule on signed cells.
SketchConfig MakeSketchConfig(const SketchOptions& options, uint64_t d,
                              OracleKind inner_kind, double eps,
                              const OracleOptions& inner_options = {});

// "CM(MEDIAN,r=32,c=1024)", "BLOOM(k=2,m=128,cohorts=8)", ...
std::string DescribeSketch(const SketchConfig& cfg);

struct SketchReport {
  // Row (Bloom: cohort) in [rows()], public and independent of the input.
  uint64_t row = 0;
  Report inner;
};

uint64_t SketchCell(const SketchConfig& cfg, uint64_t row, uint64_t x);
int SketchSign(const SketchConfig& cfg, uint64_t row, uint64_t x);

// Privatizes x through a uniformly sampled row. Bloom samples a cohort and
// one of its k hash functions and encodes that filter position.
SketchReport SketchEncode(const SketchConfig& cfg, uint64_t x, Rng& rng);

// Filter positions of x in `cohort`, one per hash function.
std::vector<uint64_t> BloomPositions(const SketchConfig& cfg, uint64_t cohort,
                                     uint64_t x);

// Appends the inner record followed by varint(row).
void AppendSketchReport(const SketchReport& report, std::string* out);
SketchReport ParseSketchReport(std::string_view data, size_t* pos);

class SketchState {
 public:
  explicit SketchState(SketchConfig cfg);

  void Add(const SketchReport& report);
  void Merge(const SketchState& other);

  // Decodes every row's cell estimates; must be called after the last Add
  // and before any estimate.
  void Finalize();

  const SketchConfig& config() const { return cfg_; }
  uint64_t n_reports() const { return n_; }
  const AggState& row_state(uint64_t row) const { return rows_[row]; }

  // Count/Count-Min estimate of x. Throws std::logic_error before
  // Finalize() and for Bloom sketches.
  double Estimate(uint64_t x) const;
  std::vector<double> EstimateMany(std::span<const uint64_t> items) const;
  std::vector<double> EstimateAll() const;

  // Debiased estimate of the number of row `row` reports landing in `cell`.
  double CellEstimate(uint64_t row, uint64_t cell) const;

 private:
  void CheckFinalized() const;

  SketchConfig cfg_;
  uint64_t n_ = 0;
  std::vector<AggState> rows_;
  // rows x c cell estimates, valid once finalized.
  std::vector<double> cells_;
  bool finalized_ = false;
};

struct BloomDecodeOptions {
  double alpha = 0.005;
  int max_sweeps = 2000;
  // Stops once no coordinate moves by more than tolerance * (1 + max |f|).
  double tolerance = 1e-7;
};

// Non-negative ridge regression of the debiased filter counts on the
// candidates' filter positions. Returns one estimate per candidate. Throws
// std::invalid_argument for an empty candidate list or alpha < 0.
std::vector<double> BloomDecode(const SketchState& state,
                                std::span<const uint64_t> candidates,
                                const BloomDecodeOptions& options = {});

}  // namespace ldpfreq

#endif  // LDPFREQ_SKETCH_H_
