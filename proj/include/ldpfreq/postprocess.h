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

#ifndef LDPFREQ_POSTPROCESS_H_
#define LDPFREQ_POSTPROCESS_H_

#include <span>
#include <string_view>
#include <vector>

namespace ldpfreq {

enum class PostMethod {
  kNone,
  // Negative estimates become 0.
  kNonNeg,
  // Negatives become 0, then one shared offset moves the positive entries so
  // that they sum to n.
  kAdditive,
  // Euclidean projection onto {f >= 0, sum f = n}.
  kSimplex,
  // Keeps the largest entries until their running total first exceeds n,
  // including the entry that crosses; the rest become 0.
  kThreshold,
};

std::string_view PostMethodName(PostMethod method);
// Case-insensitive. Throws std::invalid_argument for unknown names.
PostMethod ParsePostMethod(std::string_view name);

// Throws std::invalid_argument if n < 0 or an estimate is not finite.
std::vector<double> PostProcess(std::span<const double> estimates, double n,
                                PostMethod method);

}  // namespace ldpfreq

#endif  // LDPFREQ_POSTPROCESS_H_
