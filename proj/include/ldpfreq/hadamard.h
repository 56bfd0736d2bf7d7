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

#ifndef LDPFREQ_HADAMARD_H_
#define LDPFREQ_HADAMARD_H_

#include <cstdint>
#include <span>
#include <vector>

namespace ldpfreq {

bool IsPowerOfTwo(uint64_t v);

// Smallest power of two >= v (1 for v <= 1).
uint64_t NextPowerOfTwo(uint64_t v);

// Dimension of a Walsh-Hadamard matrix; always a power of two.
class HadamardDim {
 public:
  // Throws std::invalid_argument unless dim is a power of two.
  explicit HadamardDim(uint64_t dim);

  // Pads `size` up to the next power of two.
  static HadamardDim Covering(uint64_t size);

  uint64_t value() const { return dim_; }
  int log2() const;

 private:
  uint64_t dim_;
};

// Unscaled entry (-1)^popcount(i & j) of the D x D Hadamard matrix. The
// D^{-1/2} normalization is left to callers. Throws std::out_of_range.
int HadamardEntry(uint64_t i, uint64_t j, HadamardDim dim);

// Sign of the entry without range checks.
inline int HadamardSign(uint64_t i, uint64_t j) {
  return (__builtin_popcountll(i & j) & 1) != 0 ? -1 : 1;
}

// In-place unscaled fast Walsh-Hadamard transform:
//   out[j] = sum_i (-1)^<i,j> in[i],  O(D log D).
// Applying it twice multiplies by D. Throws std::invalid_argument if the
// length is not a power of two.
void FastWalshHadamard(std::span<double> values);

std::vector<double> Fwht(std::span<const double> values);

}  // namespace ldpfreq

#endif  // LDPFREQ_HADAMARD_H_
