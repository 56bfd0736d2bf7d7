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

#include "ldpfreq/heavy_hitters.h"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ldpfreq {
namespace {

// Largest candidate set enumerated exhaustively in one phase.
constexpr uint64_t kMaxEnumeration = uint64_t{1} << 24;
constexpr uint64_t kWordLevel = 0xffff;

void CheckEnumerable(uint64_t size) {
  if (size > kMaxEnumeration) {
    throw std::invalid_argument("phase domain of " + std::to_string(size) +
                                " candidates is too large to enumerate");
  }
}

struct Scored {
  uint64_t code;
  double estimate;
};

// Top `limit` by estimate, ties to the smaller code.
std::vector<Scored> TopByEstimate(std::vector<Scored> scored, size_t limit) {
  auto better = [](const Scored& a, const Scored& b) {
    if (a.estimate != b.estimate) return a.estimate > b.estimate;
    return a.code < b.code;
  };
  limit = std::min(limit, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + limit, scored.end(), better);
  scored.resize(limit);
  return scored;
}

}  // namespace

// ---------------------------------------------------------------------------
// StringCodec

StringCodec::StringCodec(std::string alphabet) : alphabet_(std::move(alphabet)) {
  if (alphabet_.empty()) throw std::invalid_argument("alphabet is empty");
  for (size_t i = 0; i < alphabet_.size(); ++i) {
    const auto ch = static_cast<unsigned char>(alphabet_[i]);
    if (alphabet_[i] == kPad) {
      throw std::invalid_argument(std::string("alphabet may not contain the pad symbol '") +
                                  kPad + "'");
    }
    if (digit_[ch] != 0) throw std::invalid_argument("alphabet repeats a character");
    digit_[ch] = static_cast<int>(i) + 1;
  }
}

uint64_t StringCodec::DomainSize(int len) const {
  uint64_t size = 1;
  for (int i = 0; i < len; ++i) {
    if (size > (uint64_t{1} << 62) / radix()) {
      throw std::overflow_error("string domain exceeds 2^62");
    }
    size *= radix();
  }
  return size;
}

std::string StringCodec::Pad(std::string_view s, int len) const {
  std::string out(static_cast<size_t>(len), kPad);
  for (size_t i = 0; i < s.size() && i < out.size(); ++i) {
    if (!Contains(s[i])) {
      throw std::invalid_argument(std::string("character '") + s[i] +
                                  "' is not in the alphabet");
    }
    out[i] = s[i];
  }
  return out;
}

uint64_t StringCodec::Encode(std::string_view padded) const {
  uint64_t code = 0;
  for (char ch : padded) {
    const int digit = ch == kPad ? 0 : digit_[static_cast<unsigned char>(ch)];
    if (digit == 0 && ch != kPad) {
      throw std::invalid_argument(std::string("character '") + ch +
                                  "' is not in the alphabet");
    }
    code = code * radix() + static_cast<uint64_t>(digit);
  }
  return code;
}

std::string StringCodec::Decode(uint64_t code, int len) const {
  std::string out(static_cast<size_t>(len), kPad);
  for (int i = len - 1; i >= 0; --i) {
    const uint64_t digit = code % radix();
    code /= radix();
    out[static_cast<size_t>(i)] = digit == 0 ? kPad : alphabet_[digit - 1];
  }
  return out;
}

std::string StringCodec::Unpad(std::string_view padded) {
  const size_t end = padded.find_last_not_of(kPad);
  return std::string(end == std::string_view::npos ? std::string_view()
                                                   : padded.substr(0, end + 1));
}

bool StringCodec::WellFormed(std::string_view padded) {
  const size_t first_pad = padded.find(kPad);
  return first_pad == std::string_view::npos ||
         padded.find_first_not_of(kPad, first_pad) == std::string_view::npos;
}

// ---------------------------------------------------------------------------
// Configuration

std::string_view HHProtocolName(HHProtocol protocol) {
  switch (protocol) {
    case HHProtocol::kSFP: return "sfp";
    case HHProtocol::kPEM: return "pem";
    case HHProtocol::kTH: return "th";
  }
  return "?";
}

HHProtocol ParseHHProtocol(std::string_view name) {
  std::string lower(name);
  for (char& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  for (HHProtocol p : {HHProtocol::kSFP, HHProtocol::kPEM, HHProtocol::kTH}) {
    if (HHProtocolName(p) == lower) return p;
  }
  throw std::invalid_argument("unknown heavy-hitter protocol '" + std::string(name) + "'");
}

StackSpec DefaultHHStack() {
  StackSpec spec;
  spec.oracle = OracleKind::kFLH;
  spec.oracle_options.k_prime = 500;
  SketchOptions sketch;
  sketch.kind = SketchKind::kCountMin;
  sketch.r = 32;
  sketch.c = 1024;
  sketch.combine = Combine::kMedian;
  spec.sketch = sketch;
  return spec;
}

HeavyHitters::HeavyHitters(HHProtocol protocol, HHConfig config)
    : protocol_(protocol), config_(std::move(config)), codec_(config_.alphabet) {
  const HHConfig& c = config_;
  if (c.max_len < 1) throw std::invalid_argument("max_len must be >= 1");
  if (c.T < 1) throw std::invalid_argument("T must be >= 1");
  if (!(c.eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (protocol != HHProtocol::kPEM && !(c.budget_split > 0.0 && c.budget_split < 1.0)) {
    throw std::invalid_argument("budget_split must be in (0, 1)");
  }

  auto make_stack = [&](uint64_t level, uint64_t domain, double eps) {
    StackSpec spec = c.stack;
    if (domain <= c.sketch_threshold) spec.sketch.reset();
    spec.oracle_options.hash_seed = DeriveSeed(c.seed, 2 * level + 1);
    if (spec.sketch) spec.sketch->row_seed = DeriveSeed(c.seed, 2 * level + 2);
    return FrequencyStack(spec, eps, domain);
  };

  switch (protocol) {
    case HHProtocol::kSFP: {
      if (c.fragment_len < 1 || c.max_len % c.fragment_len != 0) {
        throw std::invalid_argument("max_len must be a multiple of fragment_len");
      }
      if (c.hash_bits < 0 || c.hash_bits > 32) {
        throw std::invalid_argument("hash_bits must be in [0, 32]");
      }
      const uint64_t domain = codec_.DomainSize(c.fragment_len) << c.hash_bits;
      CheckEnumerable(domain);
      const int positions = c.max_len / c.fragment_len;
      for (int p = 0; p < positions; ++p) {
        lengths_.push_back(c.fragment_len);
        stacks_.push_back(make_stack(p, domain, level_eps()));
      }
      tag_family_ = HashFamily{DeriveSeed(c.seed, kWordLevel + 1),
                               uint64_t{1} << std::max(c.hash_bits, 1),
                               HashMode::kMixing};
      break;
    }
    case HHProtocol::kPEM:
    case HHProtocol::kTH: {
      if (c.start_len < 1 || c.start_len > c.max_len) {
        throw std::invalid_argument("start_len must be in [1, max_len]");
      }
      if (c.prefix_step < 1) throw std::invalid_argument("prefix_step must be >= 1");
      if (protocol == HHProtocol::kTH && c.start_len >= c.max_len) {
        throw std::invalid_argument("TH needs start_len < max_len");
      }
      for (int len = c.start_len; len < c.max_len; len += c.prefix_step) {
        lengths_.push_back(len);
      }
      if (protocol == HHProtocol::kPEM) lengths_.push_back(c.max_len);
      CheckEnumerable(codec_.DomainSize(c.start_len));
      for (size_t i = 0; i < lengths_.size(); ++i) {
        stacks_.push_back(make_stack(i, codec_.DomainSize(lengths_[i]), level_eps()));
      }
      break;
    }
  }
  if (protocol != HHProtocol::kPEM) {
    word_ = make_stack(kWordLevel, codec_.DomainSize(c.max_len), word_eps());
  }
}

const FrequencyStack& HeavyHitters::word_stack() const {
  if (!word_) throw std::logic_error("PEM has no full-string report");
  return *word_;
}

double HeavyHitters::level_eps() const {
  if (protocol_ == HHProtocol::kPEM) return config_.eps;
  return config_.eps * (1.0 - config_.budget_split);
}

double HeavyHitters::word_eps() const {
  if (protocol_ == HHProtocol::kPEM) return 0.0;
  return config_.eps * config_.budget_split;
}

uint64_t HeavyHitters::SfpTag(std::string_view x) const {
  if (config_.hash_bits == 0) return 0;
  const uint64_t code = codec_.Encode(codec_.Pad(x, config_.max_len));
  return Hash(tag_family_, 0, code);
}

uint64_t HeavyHitters::SfpFragmentItem(std::string_view x, int position) const {
  if (protocol_ != HHProtocol::kSFP) throw std::logic_error("not an SFP instance");
  const std::string padded = codec_.Pad(x, config_.max_len);
  const std::string_view fragment = std::string_view(padded).substr(
      static_cast<size_t>(position * config_.fragment_len),
      static_cast<size_t>(config_.fragment_len));
  return (codec_.Encode(fragment) << config_.hash_bits) | SfpTag(x);
}

HHReport HeavyHitters::Encode(std::string_view x, Rng& rng) const {
  if (x.empty()) throw std::invalid_argument("empty string");
  const std::string padded = codec_.Pad(x, config_.max_len);
  HHReport report;
  report.level = static_cast<uint32_t>(rng.UniformInt(lengths_.size()));
  const FrequencyStack& stack = stacks_[report.level];
  if (protocol_ == HHProtocol::kSFP) {
    report.primary = stack.Encode(SfpFragmentItem(x, static_cast<int>(report.level)), rng);
  } else {
    const std::string_view prefix =
        std::string_view(padded).substr(0, static_cast<size_t>(lengths_[report.level]));
    report.primary = stack.Encode(codec_.Encode(prefix), rng);
  }
  if (word_) report.word = word_->Encode(codec_.Encode(padded), rng);
  return report;
}

std::string HeavyHitters::Describe() const {
  std::string out(HHProtocolName(protocol_));
  for (char& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  const FrequencyStack& widest = word_ ? *word_ : stacks_.back();
  return out + "[" + widest.Describe() + "]";
}

// ---------------------------------------------------------------------------
// Server

HHState::HHState(const HeavyHitters& hh) : hh_(&hh) {
  for (size_t i = 0; i < hh.level_lengths().size(); ++i) {
    levels_.emplace_back(hh.level_stack(i));
  }
  if (hh.protocol() != HHProtocol::kPEM) word_.emplace(hh.word_stack());
}

void HHState::Add(const HHReport& report) {
  if (report.level >= levels_.size()) throw std::invalid_argument("report level out of range");
  if (word_.has_value() != report.word.has_value()) {
    throw std::invalid_argument("report does not match the protocol");
  }
  levels_[report.level].Add(report.primary);
  if (word_) word_->Add(*report.word);
  ++n_;
}

HHResult HHState::Decode() {
  for (auto& level : levels_) level.Finalize();
  if (word_) word_->Finalize();
  return hh_->protocol() == HHProtocol::kSFP ? DecodeSfp() : DecodeHierarchical();
}

HHResult HHState::DecodeHierarchical() {
  const HHConfig& cfg = hh_->config();
  const StringCodec& codec = hh_->codec();
  const std::vector<int>& lengths = hh_->level_lengths();
  // Each level hears from 1/G of the users.
  const double scale = static_cast<double>(lengths.size());
  HHResult result;

  std::vector<uint64_t> survivors;
  int survivor_len = 0;
  auto run_phase = [&](int phase, int len, StackState& state, double factor) {
    std::vector<uint64_t> candidates;
    if (survivor_len == 0) {
      candidates.resize(codec.DomainSize(len));
      std::iota(candidates.begin(), candidates.end(), uint64_t{0});
    } else {
      const uint64_t fan = codec.DomainSize(len - survivor_len);
      candidates.reserve(survivors.size() * fan);
      for (uint64_t prefix : survivors) {
        for (uint64_t e = 0; e < fan; ++e) candidates.push_back(prefix * fan + e);
      }
    }
    const std::vector<double> est = state.EstimateMany(candidates);
    result.candidates_per_phase.push_back(candidates.size());
    std::vector<Scored> scored;
    scored.reserve(candidates.size());
    for (size_t i = 0; i < candidates.size(); ++i) {
      const std::string padded = codec.Decode(candidates[i], len);
      if (cfg.trace) result.trace.push_back({phase, padded, est[i] * factor});
      // No extension of a malformed prefix is a valid padded string.
      if (StringCodec::WellFormed(padded)) scored.push_back({candidates[i], est[i] * factor});
    }
    scored = TopByEstimate(std::move(scored), static_cast<size_t>(cfg.T));
    survivors.clear();
    for (const Scored& s : scored) survivors.push_back(s.code);
    survivor_len = len;
    return scored;
  };

  std::vector<Scored> final_scores;
  for (size_t i = 0; i < lengths.size(); ++i) {
    final_scores = run_phase(static_cast<int>(i), lengths[i], levels_[i], scale);
  }
  if (word_) {
    final_scores = run_phase(static_cast<int>(lengths.size()), cfg.max_len, *word_, 1.0);
  }
  for (const Scored& s : final_scores) {
    if (s.estimate > 0.0) {
      result.items.push_back({StringCodec::Unpad(codec.Decode(s.code, cfg.max_len)),
                              s.estimate});
    }
  }
  std::stable_sort(result.items.begin(), result.items.end(),
                   [](const HHItem& a, const HHItem& b) {
                     if (a.estimate != b.estimate) return a.estimate > b.estimate;
                     return a.value < b.value;
                   });
  return result;
}

HHResult HHState::DecodeSfp() {
  const HHConfig& cfg = hh_->config();
  const StringCodec& codec = hh_->codec();
  const int positions = static_cast<int>(levels_.size());
  const uint64_t tags = uint64_t{1} << cfg.hash_bits;
  const uint64_t domain = codec.DomainSize(cfg.fragment_len) * tags;
  const double scale = static_cast<double>(positions);
  HHResult result;

  std::vector<uint64_t> all(domain);
  std::iota(all.begin(), all.end(), uint64_t{0});
  // fragments[p][tag] = best fragment code at position p with that tag.
  std::vector<std::vector<std::optional<uint64_t>>> fragments(
      positions, std::vector<std::optional<uint64_t>>(tags));
  for (int p = 0; p < positions; ++p) {
    const std::vector<double> est = levels_[p].EstimateMany(all);
    result.candidates_per_phase.push_back(domain);
    std::vector<Scored> scored(domain);
    for (uint64_t item = 0; item < domain; ++item) {
      scored[item] = {item, est[item] * scale};
      if (cfg.trace) {
        result.trace.push_back(
            {p, codec.Decode(item >> cfg.hash_bits, cfg.fragment_len) + "#" +
                    std::to_string(item & (tags - 1)),
             est[item] * scale});
      }
    }
    // Sorted best first, so the first fragment seen per tag is the best.
    for (const Scored& s : TopByEstimate(std::move(scored), static_cast<size_t>(cfg.T))) {
      auto& slot = fragments[p][s.code & (tags - 1)];
      if (!slot) slot = s.code >> cfg.hash_bits;
    }
  }

  std::vector<uint64_t> candidates;
  for (uint64_t tag = 0; tag < tags; ++tag) {
    std::string padded;
    bool complete = true;
    for (int p = 0; p < positions && complete; ++p) {
      if (!fragments[p][tag]) {
        complete = false;
      } else {
        padded += codec.Decode(*fragments[p][tag], cfg.fragment_len);
      }
    }
    if (complete && StringCodec::WellFormed(padded)) candidates.push_back(codec.Encode(padded));
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  result.candidates_per_phase.push_back(candidates.size());
  const std::vector<double> verified =
      candidates.empty() ? std::vector<double>() : word_->EstimateMany(candidates);
  std::vector<Scored> scored;
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (cfg.trace) {
      result.trace.push_back(
          {positions, codec.Decode(candidates[i], cfg.max_len), verified[i]});
    }
    if (verified[i] > 0.0) scored.push_back({candidates[i], verified[i]});
  }
  for (const Scored& s : TopByEstimate(std::move(scored), static_cast<size_t>(cfg.T))) {
    result.items.push_back({StringCodec::Unpad(codec.Decode(s.code, cfg.max_len)),
                            s.estimate});
  }
  std::stable_sort(result.items.begin(), result.items.end(),
                   [](const HHItem& a, const HHItem& b) {
                     if (a.estimate != b.estimate) return a.estimate > b.estimate;
                     return a.value < b.value;
                   });
  return result;
}

HHResult RunHeavyHitters(const HeavyHitters& hh,
                         std::span<const std::string> population, uint64_t seed) {
  HHState state(hh);
  for (size_t i = 0; i < population.size(); ++i) {
    Rng rng(DeriveSeed(seed, i));
    state.Add(hh.Encode(population[i], rng));
  }
  return state.Decode();
}

}  // namespace ldpfreq
