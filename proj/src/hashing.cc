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

#include <bit>
#include <cmath>
#include <stdexcept>

namespace ldpfreq {

uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t DeriveSeed(uint64_t master, uint64_t id) {
  return Mix64(Mix64(master) ^ (id * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
}

HashFunction::HashFunction(const HashFamily& family, uint64_t index)
    : key_(Mix64(family.seed ^ Mix64(index ^ 0x5851f42d4c957f2dULL))),
      range_(family.range),
      offset_(family.range == 0 ? 0 : index % family.range),
      mode_(family.mode) {
  if (family.range < 2) {
    throw std::invalid_argument("hash range must be at least 2");
  }
}

uint64_t Hash(const HashFamily& family, uint64_t index, uint64_t x) {
  return HashFunction(family, index)(x);
}

int SignHash(const HashFamily& family, uint64_t index, uint64_t x) {
  const uint64_t key = Mix64(family.seed ^ Mix64(index ^ 0x2545f4914f6cdd1dULL));
  return (Mix64(key ^ Mix64(x)) >> 63) != 0 ? -1 : 1;
}

Rng::Rng(uint64_t seed) {
  uint64_t z = seed;
  // Mix64 advances by the golden gamma itself, so this is splitmix64.
  for (auto& word : s_) {
    word = Mix64(z);
    z += 0x9e3779b97f4a7c15ULL;
  }
}

uint64_t Rng::Next() {
  const uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
  const uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = std::rotl(s_[3], 45);
  return result;
}

uint64_t Rng::UniformInt(uint64_t n) {
  if (n == 0) throw std::invalid_argument("UniformInt requires n > 0");
  // Lemire's multiply-shift with rejection; exact.
  unsigned __int128 m = static_cast<unsigned __int128>(Next()) * n;
  uint64_t low = static_cast<uint64_t>(m);
  if (low < n) {
    const uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(Next()) * n;
      low = static_cast<uint64_t>(m);
    }
  }
  return static_cast<uint64_t>(m >> 64);
}

double Rng::UniformDouble() {
  return static_cast<double>(Next() >> 11) * 0x1.0p-53;
}

bool Rng::Bernoulli(double p) { return UniformDouble() < p; }

uint64_t Rng::Geometric(double p) {
  if (p >= 1.0) return 0;
  if (p <= 0.0) return std::numeric_limits<uint64_t>::max();
  // 1 - U lies in (0, 1], so the log is finite.
  const double u = 1.0 - UniformDouble();
  const double g = std::floor(std::log(u) / std::log1p(-p));
  if (g >= 1.8e19) return std::numeric_limits<uint64_t>::max();
  return static_cast<uint64_t>(g);
}

}  // namespace ldpfreq
