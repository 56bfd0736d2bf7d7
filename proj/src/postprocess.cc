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

#include "ldpfreq/postprocess.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ldpfreq {
namespace {

std::vector<double> NonNeg(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  for (double& x : out) x = std::max(x, 0.0);
  return out;
}

std::vector<double> Additive(std::span<const double> v, double n) {
  std::vector<double> out(v.size(), 0.0);
  std::vector<size_t> support;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] > 0.0) support.push_back(i);
  }
  // Nothing positive: spread n evenly.
  if (support.empty()) {
    if (v.empty()) return out;
    std::fill(out.begin(), out.end(), n / static_cast<double>(v.size()));
    return out;
  }
  // A negative shift can push small entries below zero; drop those from the
  // support and solve again until nothing changes.
  while (true) {
    double sum = 0.0;
    for (size_t i : support) sum += v[i];
    const double delta = (n - sum) / static_cast<double>(support.size());
    std::vector<size_t> kept;
    kept.reserve(support.size());
    for (size_t i : support) {
      if (v[i] + delta > 0.0) kept.push_back(i);
    }
    if (kept.size() == support.size() || kept.empty()) {
      for (size_t i : support) out[i] = std::max(v[i] + delta, 0.0);
      return out;
    }
    support = std::move(kept);
  }
}

std::vector<double> Simplex(std::span<const double> v, double n) {
  std::vector<double> out(v.size(), 0.0);
  if (v.empty() || n == 0.0) return out;
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double prefix = 0.0;
  double tau = 0.0;
  for (size_t j = 0; j < sorted.size(); ++j) {
    prefix += sorted[j];
    const double candidate = (prefix - n) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) tau = candidate;
  }
  for (size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i] - tau, 0.0);
  return out;
}

std::vector<double> Threshold(std::span<const double> v, double n) {
  std::vector<size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return v[a] > v[b]; });
  std::vector<double> out(v.size(), 0.0);
  double total = 0.0;
  for (size_t i : order) {
    out[i] = v[i];
    total += v[i];
    if (total > n) break;
  }
  return out;
}

}  // namespace

std::string_view PostMethodName(PostMethod method) {
  switch (method) {
    case PostMethod::kNone: return "none";
    case PostMethod::kNonNeg: return "nonneg";
    case PostMethod::kAdditive: return "additive";
    case PostMethod::kSimplex: return "simplex";
    case PostMethod::kThreshold: return "threshold";
  }
  return "?";
}

PostMethod ParsePostMethod(std::string_view name) {
  std::string lower(name);
  for (char& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  for (PostMethod m : {PostMethod::kNone, PostMethod::kNonNeg, PostMethod::kAdditive,
                       PostMethod::kSimplex, PostMethod::kThreshold}) {
    if (PostMethodName(m) == lower) return m;
  }
  throw std::invalid_argument("unknown post-processing method '" +
                              std::string(name) + "'");
}

std::vector<double> PostProcess(std::span<const double> estimates, double n,
                                PostMethod method) {
  if (!(n >= 0.0)) throw std::invalid_argument("n must be non-negative");
  for (double x : estimates) {
    if (!std::isfinite(x)) throw std::invalid_argument("estimates must be finite");
  }
  switch (method) {
    case PostMethod::kNone: return {estimates.begin(), estimates.end()};
    case PostMethod::kNonNeg: return NonNeg(estimates);
    case PostMethod::kAdditive: return Additive(estimates, n);
    case PostMethod::kSimplex: return Simplex(estimates, n);
    case PostMethod::kThreshold: return Threshold(estimates, n);
  }
  return {estimates.begin(), estimates.end()};
}

}  // namespace ldpfreq
