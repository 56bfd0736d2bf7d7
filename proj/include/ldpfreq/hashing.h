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

#ifndef LDPFREQ_HASHING_H_
#define LDPFREQ_HASHING_H_

#include <array>
#include <cstdint>
#include <limits>

namespace ldpfreq {

// 64-bit avalanche mixer (the splitmix64 finalizer).
uint64_t Mix64(uint64_t x);

// Derives an independent child seed, e.g. per user or per trial.
uint64_t DeriveSeed(uint64_t master, uint64_t id);

enum class HashMode {
  // Keyed mixing hash; behaves as a universal family.
  kMixing,
  // Member `index` maps x to (x + index) mod range. Injective on [range];
  // used to run collision-free noiseless checks.
  kInjective,
};

// A seeded family of hash functions [2^64] -> [range). Members are selected
// by an integer index, which is what clients transmit to identify their hash.
struct HashFamily {
  uint64_t seed = 0;
  uint64_t range = 2;
  HashMode mode = HashMode::kMixing;
};

// A single member of a HashFamily with its key precomputed, for hot loops.
class HashFunction {
 public:
  HashFunction(const HashFamily& family, uint64_t index);

  uint64_t operator()(uint64_t x) const {
    if (mode_ == HashMode::kInjective) return (x % range_ + offset_) % range_;
    const uint64_t h = Mix64(key_ ^ Mix64(x));
    return static_cast<uint64_t>((static_cast<unsigned __int128>(h) * range_) >>
                                 64);
  }

  // Equivalent to (*this)(x) given mixed_x == Mix64(x); saves one mix when
  // the same x is hashed by many members.
  uint64_t Premixed(uint64_t x, uint64_t mixed_x) const {
    if (mode_ == HashMode::kInjective) return (x % range_ + offset_) % range_;
    const uint64_t h = Mix64(key_ ^ mixed_x);
    return static_cast<uint64_t>((static_cast<unsigned __int128>(h) * range_) >>
                                 64);
  }

 private:
  uint64_t key_;
  uint64_t range_;
  uint64_t offset_;
  HashMode mode_;
};

// Member `index` of `family` applied to x. Throws std::invalid_argument if
// family.range < 2.
uint64_t Hash(const HashFamily& family, uint64_t index, uint64_t x);

// Returns -1 or +1. The range of `family` is ignored.
int SignHash(const HashFamily& family, uint64_t index, uint64_t x);

// xoshiro256** generator with portable distribution helpers. The standard
// library distributions are implementation-defined, so draws are produced
// here to keep every run bit-reproducible across platforms.
class Rng {
 public:
  using result_type = uint64_t;

  explicit Rng(uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return Next(); }

  uint64_t Next();
  // Uniform on [0, n). n must be positive.
  uint64_t UniformInt(uint64_t n);
  // Uniform on [0, 1) with 53 bits of precision.
  double UniformDouble();
  bool Bernoulli(double p);
  // Number of failures before the first success of a Bernoulli(p) sequence.
  // p == 0 returns the maximum uint64_t value.
  uint64_t Geometric(double p);

 private:
  std::array<uint64_t, 4> s_;
};

}  // namespace ldpfreq

#endif  // LDPFREQ_HASHING_H_
