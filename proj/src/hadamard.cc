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

#include "ldpfreq/hadamard.h"

#include <bit>
#include <stdexcept>
#include <string>

namespace ldpfreq {

bool IsPowerOfTwo(uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

uint64_t NextPowerOfTwo(uint64_t v) {
  if (v <= 1) return 1;
  return std::bit_ceil(v);
}

HadamardDim::HadamardDim(uint64_t dim) : dim_(dim) {
  if (!IsPowerOfTwo(dim)) {
    throw std::invalid_argument("Hadamard dimension must be a power of two, got " +
                                std::to_string(dim));
  }
}

HadamardDim HadamardDim::Covering(uint64_t size) {
  return HadamardDim(NextPowerOfTwo(size));
}

int HadamardDim::log2() const { return std::countr_zero(dim_); }

int HadamardEntry(uint64_t i, uint64_t j, HadamardDim dim) {
  if (i >= dim.value() || j >= dim.value()) {
    throw std::out_of_range("Hadamard index out of range");
  }
  return HadamardSign(i, j);
}

void FastWalshHadamard(std::span<double> values) {
  const size_t n = values.size();
  if (!IsPowerOfTwo(n)) {
    throw std::invalid_argument("FWHT length must be a power of two, got " +
                                std::to_string(n));
  }
  for (size_t half = 1; half < n; half <<= 1) {
    for (size_t block = 0; block < n; block += half << 1) {
      for (size_t i = block; i < block + half; ++i) {
        const double a = values[i];
        const double b = values[i + half];
        values[i] = a + b;
        values[i + half] = a - b;
      }
    }
  }
}

std::vector<double> Fwht(std::span<const double> values) {
  std::vector<double> out(values.begin(), values.end());
  FastWalshHadamard(out);
  return out;
}

}  // namespace ldpfreq
