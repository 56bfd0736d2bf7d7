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

#ifndef LDPFREQ_STACK_H_
#define LDPFREQ_STACK_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ldpfreq/oracles.h"
#include "ldpfreq/sketch.h"

namespace ldpfreq {

// A frequency oracle, optionally behind a sketch that shrinks the domain.
struct StackSpec {
  OracleKind oracle = OracleKind::kOLH;
  OracleOptions oracle_options;
  std::optional<SketchOptions> sketch;
  // Ridge weight for Bloom decoding.
  double bloom_alpha = 0.005;
};

class FrequencyStack {
 public:
  FrequencyStack(const StackSpec& spec, double eps, uint64_t d);

  uint64_t d() const { return d_; }
  double eps() const { return eps_; }
  bool sketched() const { return sketch_.has_value(); }
  const StackSpec& spec() const { return spec_; }
  // The oracle that privatizes reports (over [c] when sketched).
  const PureParams& oracle() const;
  // Throws std::logic_error when not sketched.
  const SketchConfig& sketch() const;

  // "FLH(k'=500)", "CM(MEDIAN,r=32,c=1024)+FLH(k'=500)", ...
  std::string Describe() const;

  // Plain oracles always use row 0.
  SketchReport Encode(uint64_t x, Rng& rng) const;

 private:
  StackSpec spec_;
  double eps_;
  uint64_t d_;
  PureParams plain_;
  std::optional<SketchConfig> sketch_;
};

class StackState {
 public:
  explicit StackState(const FrequencyStack& stack);

  void Add(const SketchReport& report);
  void Merge(const StackState& other);
  // Must run after the last Add and before estimating.
  void Finalize();

  uint64_t n_reports() const;
  double Estimate(uint64_t x) const;
  // Bloom stacks decode the given items jointly as the candidate set.
  std::vector<double> EstimateMany(std::span<const uint64_t> items) const;
  std::vector<double> EstimateAll(DecodeStats* stats = nullptr) const;

 private:
  FrequencyStack stack_;
  std::optional<AggState> plain_;
  std::optional<SketchState> sketch_;
};

}  // namespace ldpfreq

#endif  // LDPFREQ_STACK_H_
