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

#include "ldpfreq/stack.h"

#include <numeric>
#include <stdexcept>

namespace ldpfreq {
namespace {

// Plain oracles answer large query batches from one full decode when the
// domain is at most this big.
constexpr uint64_t kFullDecodeDomain = uint64_t{1} << 20;

std::string DescribeOracle(const PureParams& p) {
  std::string out(OracleName(p.kind));
  if (p.kind == OracleKind::kFLH) out += "(k'=" + std::to_string(p.k_prime) + ")";
  if (p.kind == OracleKind::kHM) out += "(t=" + std::to_string(p.t) + ")";
  return out;
}

}  // namespace

FrequencyStack::FrequencyStack(const StackSpec& spec, double eps, uint64_t d)
    : spec_(spec), eps_(eps), d_(d) {
  if (spec.sketch) {
    sketch_ = MakeSketchConfig(*spec.sketch, d, spec.oracle, eps, spec.oracle_options);
  } else {
    plain_ = MakeOracleParams(spec.oracle, eps, d, spec.oracle_options);
  }
}

const PureParams& FrequencyStack::oracle() const {
  return sketch_ ? sketch_->inner : plain_;
}

const SketchConfig& FrequencyStack::sketch() const {
  if (!sketch_) throw std::logic_error("stack has no sketch");
  return *sketch_;
}

std::string FrequencyStack::Describe() const {
  if (sketch_) return DescribeSketch(*sketch_) + "+" + DescribeOracle(sketch_->inner);
  return DescribeOracle(plain_);
}

SketchReport FrequencyStack::Encode(uint64_t x, Rng& rng) const {
  if (sketch_) return SketchEncode(*sketch_, x, rng);
  return SketchReport{0, ldpfreq::Encode(plain_, x, rng)};
}

StackState::StackState(const FrequencyStack& stack) : stack_(stack) {
  if (stack_.sketched()) {
    sketch_.emplace(stack_.sketch());
  } else {
    plain_.emplace(stack_.oracle());
  }
}

void StackState::Add(const SketchReport& report) {
  if (sketch_) {
    sketch_->Add(report);
    return;
  }
  if (report.row != 0) throw std::invalid_argument("plain oracle report with a row");
  plain_->Add(report.inner);
}

void StackState::Merge(const StackState& other) {
  if (sketch_ && other.sketch_) {
    sketch_->Merge(*other.sketch_);
  } else if (plain_ && other.plain_) {
    plain_->Merge(*other.plain_);
  } else {
    throw std::invalid_argument("cannot merge a sketch with a plain oracle");
  }
}

void StackState::Finalize() {
  if (sketch_) sketch_->Finalize();
}

uint64_t StackState::n_reports() const {
  return sketch_ ? sketch_->n_reports() : plain_->n_reports();
}

double StackState::Estimate(uint64_t x) const {
  if (plain_) return plain_->Estimate(x);
  if (sketch_->config().kind == SketchKind::kBloom) {
    const uint64_t item[] = {x};
    return EstimateMany(item)[0];
  }
  return sketch_->Estimate(x);
}

std::vector<double> StackState::EstimateMany(std::span<const uint64_t> items) const {
  if (sketch_) {
    if (sketch_->config().kind == SketchKind::kBloom) {
      BloomDecodeOptions options;
      options.alpha = stack_.spec().bloom_alpha;
      return BloomDecode(*sketch_, items, options);
    }
    return sketch_->EstimateMany(items);
  }
  std::vector<double> out(items.size());
  if (stack_.d() <= kFullDecodeDomain && items.size() > 16) {
    const std::vector<double> all = plain_->EstimateAll();
    for (size_t i = 0; i < items.size(); ++i) out[i] = all.at(items[i]);
  } else {
    for (size_t i = 0; i < items.size(); ++i) out[i] = plain_->Estimate(items[i]);
  }
  return out;
}

std::vector<double> StackState::EstimateAll(DecodeStats* stats) const {
  if (plain_) return plain_->EstimateAll(stats);
  if (sketch_->config().kind == SketchKind::kBloom) {
    std::vector<uint64_t> all(stack_.d());
    std::iota(all.begin(), all.end(), uint64_t{0});
    return EstimateMany(all);
  }
  return sketch_->EstimateAll();
}

}  // namespace ldpfreq
