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

#include <vector>

#include "gtest/gtest.h"
#include "ldpfreq/hashing.h"

namespace ldpfreq {
namespace {

// Sylvester construction: H_{2k} = [[H_k, H_k], [H_k, -H_k]].
std::vector<std::vector<int>> Sylvester(uint64_t dim) {
  std::vector<std::vector<int>> h = {{1}};
  while (h.size() < dim) {
    const size_t k = h.size();
    std::vector<std::vector<int>> next(2 * k, std::vector<int>(2 * k));
    for (size_t i = 0; i < k; ++i) {
      for (size_t j = 0; j < k; ++j) {
        next[i][j] = h[i][j];
        next[i][j + k] = h[i][j];
        next[i + k][j] = h[i][j];
        next[i + k][j + k] = -h[i][j];
      }
    }
    h = std::move(next);
  }
  return h;
}

TEST(HadamardTest, FwhtOfSmallVector) {
  const std::vector<double> in = {1, 2, 3, 4};
  EXPECT_EQ(Fwht(in), (std::vector<double>{10, -2, -4, 0}));
}

TEST(HadamardTest, EntriesMatchSylvester) {
  for (uint64_t dim : {1, 2, 8, 32}) {
    const auto h = Sylvester(dim);
    for (uint64_t i = 0; i < dim; ++i) {
      for (uint64_t j = 0; j < dim; ++j) {
        ASSERT_EQ(HadamardEntry(i, j, HadamardDim(dim)), h[i][j]);
        ASSERT_EQ(HadamardSign(i, j), h[i][j]);
      }
    }
  }
}

TEST(HadamardTest, FwhtMatchesMatrixProduct) {
  const uint64_t dim = 64;
  const auto h = Sylvester(dim);
  Rng rng(5);
  std::vector<double> x(dim);
  for (auto& v : x) v = rng.UniformDouble() * 10 - 5;
  const std::vector<double> fast = Fwht(x);
  for (uint64_t i = 0; i < dim; ++i) {
    double slow = 0.0;
    for (uint64_t j = 0; j < dim; ++j) slow += h[i][j] * x[j];
    EXPECT_NEAR(fast[i], slow, 1e-9);
  }
}

TEST(HadamardTest, TransformTwiceScalesByDim) {
  std::vector<double> x = {3, -1, 4, 1, -5, 9, 2, 6};
  std::vector<double> y = x;
  FastWalshHadamard(y);
  FastWalshHadamard(y);
  for (size_t i = 0; i < x.size(); ++i) EXPECT_DOUBLE_EQ(y[i], 8 * x[i]);
}

TEST(HadamardTest, RowsAreOrthogonal) {
  const uint64_t dim = 16;
  for (uint64_t a = 0; a < dim; ++a) {
    for (uint64_t b = 0; b < dim; ++b) {
      int dot = 0;
      for (uint64_t j = 0; j < dim; ++j) dot += HadamardSign(a, j) * HadamardSign(b, j);
      EXPECT_EQ(dot, a == b ? static_cast<int>(dim) : 0);
    }
  }
}

TEST(HadamardTest, DimensionChecks) {
  EXPECT_THROW(HadamardDim(12), std::invalid_argument);
  EXPECT_EQ(HadamardDim::Covering(1000).value(), 1024u);
  EXPECT_EQ(HadamardDim::Covering(1024).value(), 1024u);
  EXPECT_EQ(HadamardDim(1024).log2(), 10);
  EXPECT_THROW(HadamardEntry(8, 0, HadamardDim(8)), std::out_of_range);
  EXPECT_TRUE(IsPowerOfTwo(64));
  EXPECT_FALSE(IsPowerOfTwo(0));
  EXPECT_EQ(NextPowerOfTwo(5), 8u);
  std::vector<double> bad(6);
  EXPECT_THROW(FastWalshHadamard(bad), std::invalid_argument);
}

}  // namespace
}  // namespace ldpfreq
