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

#ifndef LDPFREQ_HEAVY_HITTERS_H_
#define LDPFREQ_HEAVY_HITTERS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ldpfreq/hashing.h"
#include "ldpfreq/sketch.h"
#include "ldpfreq/stack.h"

namespace ldpfreq {

// Maps fixed-length strings over an alphabet plus a reserved pad symbol to
// integers. Digit 0 is the pad and alphabet characters follow in the given
// order, so code order is lexicographic order when the alphabet is sorted.
class StringCodec {
 public:
  static constexpr char kPad = '$';

  // Throws std::invalid_argument for an empty alphabet, repeated characters
  // or the pad symbol.
  explicit StringCodec(std::string alphabet);

  const std::string& alphabet() const { return alphabet_; }
  uint64_t radix() const { return alphabet_.size() + 1; }
  // radix^len. Throws std::overflow_error above 2^62.
  uint64_t DomainSize(int len) const;

  bool Contains(char ch) const { return digit_[static_cast<unsigned char>(ch)] > 0; }
  // Truncates or pads to `len`. Throws std::invalid_argument for characters
  // outside the alphabet.
  std::string Pad(std::string_view s, int len) const;
  // Big-endian base-radix code of a padded string.
  uint64_t Encode(std::string_view padded) const;
  std::string Decode(uint64_t code, int len) const;
  // Drops trailing pad symbols.
  static std::string Unpad(std::string_view padded);
  // True if no alphabet character follows a pad symbol.
  static bool WellFormed(std::string_view padded);

 private:
  std::string alphabet_;
  int digit_[256] = {};
};

enum class HHProtocol { kSFP, kPEM, kTH };
std::string_view HHProtocolName(HHProtocol protocol);
HHProtocol ParseHHProtocol(std::string_view name);  // "sfp", "pem", "th"

struct HHConfig {
  std::string alphabet = "abcdefghijklmnopqrstuvwxyz";
  int max_len = 6;
  // SFP
  int fragment_len = 2;
  int hash_bits = 8;
  // PEM / TH
  int start_len = 2;
  int prefix_step = 2;
  int T = 10;
  double eps = 3.0;
  // Share of eps spent on the full-string report (SFP and TH).
  double budget_split = 0.5;
  // Oracle for every phase, plus the sketch used when a phase's domain
  // exceeds sketch_threshold. Without a sketch every phase is plain.
  StackSpec stack;
  uint64_t sketch_threshold = uint64_t{1} << 16;
  // Seeds the public hash functions of every phase.
  uint64_t seed = 0;
  // Records every queried candidate in HHResult::trace.
  bool trace = false;
};

// Phase stack used by default: CM(MEDIAN, r=32, c=1024) over FLH(k'=500).
StackSpec DefaultHHStack();

struct HHItem {
  std::string value;
  double estimate = 0.0;
};

struct HHTraceRow {
  int phase = 0;
  std::string candidate;
  double estimate = 0.0;
};

struct HHResult {
  // Sorted by estimate descending, ties lexicographic; at most T entries,
  // all with positive estimates.
  std::vector<HHItem> items;
  std::vector<uint64_t> candidates_per_phase;
  std::vector<HHTraceRow> trace;
};

// One user's messages. `level` is public and independent of the input: the
// PEM group, the TH prefix level, or the SFP fragment position.
struct HHReport {
  uint32_t level = 0;
  SketchReport primary;
  // Full-string report (SFP, TH).
  std::optional<SketchReport> word;
};

class HeavyHitters {
 public:
  // Throws std::invalid_argument for inconsistent configurations.
  HeavyHitters(HHProtocol protocol, HHConfig config);

  HHProtocol protocol() const { return protocol_; }
  const HHConfig& config() const { return config_; }
  const StringCodec& codec() const { return codec_; }

  // PEM group lengths, TH prefix lengths, or one entry per SFP position
  // holding the fragment length.
  const std::vector<int>& level_lengths() const { return lengths_; }
  const FrequencyStack& level_stack(size_t level) const { return stacks_.at(level); }
  // Throws std::logic_error for PEM.
  const FrequencyStack& word_stack() const;
  double level_eps() const;
  double word_eps() const;

  // Throws std::invalid_argument for an empty string or unknown characters.
  HHReport Encode(std::string_view x, Rng& rng) const;
  // SFP: the private item (fragment at `position`, tag of the padded string).
  uint64_t SfpFragmentItem(std::string_view x, int position) const;
  uint64_t SfpTag(std::string_view x) const;

  std::string Describe() const;

 private:
  HHProtocol protocol_;
  HHConfig config_;
  StringCodec codec_;
  std::vector<int> lengths_;
  std::vector<FrequencyStack> stacks_;
  std::optional<FrequencyStack> word_;
  HashFamily tag_family_;
};

class HHState {
 public:
  explicit HHState(const HeavyHitters& hh);

  void Add(const HHReport& report);
  uint64_t n_reports() const { return n_; }
  HHResult Decode();

 private:
  HHResult DecodeSfp();
  HHResult DecodeHierarchical();

  const HeavyHitters* hh_;
  uint64_t n_ = 0;
  std::vector<StackState> levels_;
  std::optional<StackState> word_;
};

// Encodes every string and decodes; `seed` drives all client randomness.
HHResult RunHeavyHitters(const HeavyHitters& hh,
                         std::span<const std::string> population, uint64_t seed);

}  // namespace ldpfreq

#endif  // LDPFREQ_HEAVY_HITTERS_H_
