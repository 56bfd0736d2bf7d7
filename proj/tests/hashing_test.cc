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

#include "ldpfreq/hashing.h"

#include <array>
#include <bit>
#include <cmath>
#include <set>
#include <vector>

#include "gtest/gtest.h"

namespace ldpfreq {
namespace {

// Reference splitmix64 and xoshiro256** generators, written out from the
// published algorithms.
uint64_t RefSplitMix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct RefXoshiro {
  std::array<uint64_t, 4> s;
  uint64_t next() {
    const uint64_t result = std::rotl(s[1] * 5, 7) * 9;
    const uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = std::rotl(s[3], 45);
    return result;
  }
};

// Pearson chi-square statistic against uniform expected counts.
double ChiSquare(const std::vector<uint64_t>& counts) {
  double total = 0.0;
  for (uint64_t c : counts) total += static_cast<double>(c);
  const double expected = total / static_cast<double>(counts.size());
  double chi2 = 0.0;
  for (uint64_t c : counts) chi2 += (c - expected) * (c - expected) / expected;
  return chi2;
}

// Upper 0.001 quantile of chi-square with k degrees of freedom
// (Wilson-Hilferty approximation).
double ChiSquareCritical(double k) {
  const double z = 3.0902;  // Phi^-1(0.999)
  const double a = 2.0 / (9.0 * k);
  return k * std::pow(1.0 - a + z * std::sqrt(a), 3.0);
}

TEST(Mix64Test, MatchesSplitMix64FirstOutput) {
  // First splitmix64 output from state 0.
  EXPECT_EQ(Mix64(0), 0xe220a8397b1dcdafULL);
  uint64_t state = 42;
  const uint64_t ref = RefSplitMix64(state);
  EXPECT_EQ(Mix64(42), ref);
}

TEST(DeriveSeedTest, DistinctChildren) {
  std::set<uint64_t> seen;
  for (uint64_t id = 0; id < 1000; ++id) seen.insert(DeriveSeed(7, id));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_NE(DeriveSeed(7, 0), DeriveSeed(8, 0));
}

TEST(RngTest, MatchesReferenceXoshiro) {
  uint64_t state = 1234;
  RefXoshiro ref;
  for (auto& w : ref.s) w = RefSplitMix64(state);
  Rng rng(1234);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(rng.Next(), ref.next());
}

TEST(RngTest, UniformIntIsUniform) {
  Rng rng(1);
  std::vector<uint64_t> counts(37, 0);
  for (int i = 0; i < 370000; ++i) {
    const uint64_t v = rng.UniformInt(37);
    ASSERT_LT(v, 37u);
    ++counts[v];
  }
  EXPECT_LT(ChiSquare(counts), ChiSquareCritical(36));
}

TEST(RngTest, UniformDoubleRange) {
  Rng rng(2);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.UniformDouble();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 4 * std::sqrt(1.0 / 12 / 100000));
}

TEST(RngTest, BernoulliRate) {
  Rng rng(3);
  int hits = 0;
  for (int i = 0; i < 200000; ++i) hits += rng.Bernoulli(0.3);
  EXPECT_NEAR(hits / 200000.0, 0.3, 4 * std::sqrt(0.3 * 0.7 / 200000));
}

TEST(RngTest, GeometricMean) {
  Rng rng(4);
  const double p = 0.05;
  double sum = 0.0;
  const int reps = 200000;
  for (int i = 0; i < reps; ++i) sum += static_cast<double>(rng.Geometric(p));
  // Failures before first success: mean (1-p)/p, variance (1-p)/p^2.
  const double sd = std::sqrt((1 - p) / (p * p) / reps);
  EXPECT_NEAR(sum / reps, (1 - p) / p, 4 * sd);
  EXPECT_EQ(rng.Geometric(1.0), 0u);
  EXPECT_EQ(rng.Geometric(0.0), std::numeric_limits<uint64_t>::max());
}

TEST(RngTest, SameSeedSameStream) {
  Rng a(99), b(99);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(a.Next(), b.Next());
}

TEST(HashTest, RejectsTinyRange) {
  EXPECT_THROW(Hash(HashFamily{0, 1}, 0, 5), std::invalid_argument);
}

TEST(HashTest, DeterministicAndInRange) {
  const HashFamily family{11, 21};
  for (uint64_t x = 0; x < 1000; ++x) {
    const uint64_t h = Hash(family, 5, x);
    EXPECT_LT(h, 21u);
    EXPECT_EQ(h, Hash(family, 5, x));
  }
}

TEST(HashTest, PremixedAgreesWithDirect) {
  const HashFunction h(HashFamily{3, 1000}, 17);
  for (uint64_t x = 0; x < 500; ++x) EXPECT_EQ(h(x), h.Premixed(x, Mix64(x)));
}

TEST(HashTest, ValuesUniformOverRange) {
  const HashFamily family{5, 16};
  std::vector<uint64_t> counts(16, 0);
  for (uint64_t x = 0; x < 160000; ++x) ++counts[Hash(family, 3, x)];
  EXPECT_LT(ChiSquare(counts), ChiSquareCritical(15));
}

TEST(HashTest, PairCollisionRateIsOneOverRange) {
  // Universality: for fixed x != y, a random member collides w.p. ~1/g.
  const uint64_t g = 8;
  const HashFamily family{77, g};
  const int members = 200000;
  int collisions = 0;
  for (int i = 0; i < members; ++i) {
    collisions += Hash(family, i, 12345) == Hash(family, i, 67890);
  }
  const double p = 1.0 / g;
  EXPECT_NEAR(collisions / static_cast<double>(members), p,
              4 * std::sqrt(p * (1 - p) / members));
}

TEST(HashTest, InjectiveModeIsInjective) {
  const HashFamily family{0, 50, HashMode::kInjective};
  for (uint64_t index : {0, 7, 49, 1000}) {
    std::set<uint64_t> seen;
    for (uint64_t x = 0; x < 50; ++x) seen.insert(Hash(family, index, x));
    EXPECT_EQ(seen.size(), 50u);
  }
  EXPECT_EQ(Hash(family, 7, 3), 10u);
}

TEST(SignHashTest, BalancedSigns) {
  const HashFamily family{9, 2};
  int sum = 0;
  const int n = 100000;
  for (int x = 0; x < n; ++x) {
    const int s = SignHash(family, 1, x);
    ASSERT_TRUE(s == 1 || s == -1);
    sum += s;
  }
  EXPECT_LT(std::abs(sum), 4 * std::sqrt(n));
}

}  // namespace
}  // namespace ldpfreq
