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

#include "ldpfreq/oracles.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ldpfreq/hadamard.h"

namespace ldpfreq {
namespace {

// FLH tables above this many entries are not materialized.
constexpr uint64_t kMaxFlhTableEntries = uint64_t{1} << 24;
constexpr int kMaxHadamardCoefficients = 20;

std::invalid_argument Invalid(const std::string& message) {
  return std::invalid_argument(message);
}

uint64_t LocalHashIndexSpace(const PureParams& params) {
  return params.kind == OracleKind::kFLH ? params.k_prime : kLocalHashIndexSpace;
}

// Bit k of the returned pattern is set when coefficient k of x is -1.
uint64_t HmTruePattern(uint64_t x, const HadamardMechReport& report) {
  uint64_t pattern = 0;
  for (size_t k = 0; k < report.coefficients.size(); ++k) {
    if (HadamardSign(x, report.coefficients[k].index) < 0) {
      pattern |= uint64_t{1} << k;
    }
  }
  return pattern;
}

uint64_t HmReportedPattern(const HadamardMechReport& report) {
  uint64_t pattern = 0;
  for (size_t k = 0; k < report.coefficients.size(); ++k) {
    if (report.coefficients[k].sign < 0) pattern |= uint64_t{1} << k;
  }
  return pattern;
}

}  // namespace

std::string_view OracleName(OracleKind kind) {
  switch (kind) {
    case OracleKind::kDE: return "DE";
    case OracleKind::kSUE: return "SUE";
    case OracleKind::kOUE: return "OUE";
    case OracleKind::kBLH: return "BLH";
    case OracleKind::kOLH: return "OLH";
    case OracleKind::kFLH: return "FLH";
    case OracleKind::kHM: return "HM";
    case OracleKind::kHR: return "HR";
  }
  return "?";
}

OracleKind ParseOracleKind(std::string_view name) {
  std::string upper(name);
  for (char& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  for (OracleKind kind : kAllOracleKinds) {
    if (OracleName(kind) == upper) return kind;
  }
  throw Invalid("unknown oracle '" + std::string(name) + "'");
}

bool IsUnary(OracleKind kind) {
  return kind == OracleKind::kSUE || kind == OracleKind::kOUE;
}

bool IsLocalHashing(OracleKind kind) {
  return kind == OracleKind::kBLH || kind == OracleKind::kOLH ||
         kind == OracleKind::kFLH;
}

PureParams MakeOracleParams(OracleKind kind, double eps, uint64_t d,
                            const OracleOptions& options) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw Invalid("eps must be positive and finite");
  }
  if (d < 2) throw Invalid("domain size d must be at least 2");

  if ((kind == OracleKind::kDE || kind == OracleKind::kHM ||
       kind == OracleKind::kHR) &&
      d > kMaxDenseDomain) {
    throw Invalid(std::string(OracleName(kind)) +
                  " keeps a dense aggregate; use a sketch for d > " +
                  std::to_string(kMaxDenseDomain));
  }

  PureParams params;
  params.kind = kind;
  params.eps = eps;
  params.d = d;
  params.noiseless = options.noiseless;
  const double e = std::exp(eps);

  switch (kind) {
    case OracleKind::kDE: {
      const double denom = e + static_cast<double>(d) - 1.0;
      params.p_star = options.noiseless ? 1.0 : e / denom;
      params.q_star = options.noiseless ? 0.0 : 1.0 / denom;
      break;
    }
    case OracleKind::kSUE:
    case OracleKind::kOUE: {
      if (d > kMaxUnaryDomain) {
        throw Invalid("unary encodings are limited to d <= " +
                      std::to_string(kMaxUnaryDomain));
      }
      if (options.noiseless) {
        params.p_star = 1.0;
        params.q_star = 0.0;
      } else if (kind == OracleKind::kSUE) {
        const double half = std::exp(eps / 2.0);
        params.p_star = half / (half + 1.0);
        params.q_star = 1.0 / (half + 1.0);
      } else {
        params.p_star = 0.5;
        params.q_star = 1.0 / (e + 1.0);
      }
      break;
    }
    case OracleKind::kBLH:
    case OracleKind::kOLH:
    case OracleKind::kFLH: {
      uint64_t g = 2;
      if (kind != OracleKind::kBLH) {
        g = std::max<uint64_t>(2, static_cast<uint64_t>(std::llround(e)) + 1);
      }
      if (kind == OracleKind::kFLH) {
        if (options.k_prime == 0) throw Invalid("FLH requires k_prime >= 1");
        params.k_prime = options.k_prime;
      }
      if (options.injective_hash) g = std::max(g, d);
      params.g = g;
      params.family = HashFamily{
          options.hash_seed, g,
          options.injective_hash ? HashMode::kInjective : HashMode::kMixing};
      const double gd = static_cast<double>(g);
      params.p_star = options.noiseless ? 1.0 : e / (e + gd - 1.0);
      params.q_star = (options.noiseless && options.injective_hash) ? 0.0 : 1.0 / gd;
      if (kind == OracleKind::kFLH && params.k_prime * d <= kMaxFlhTableEntries) {
        params.flh_matrix = std::make_shared<const FlhMatrix>(
            params.k_prime, d, params.family);
      }
      break;
    }
    case OracleKind::kHM: {
      const int t = options.t == 0 ? HmOptimalT(eps) : options.t;
      if (t < 1 || t > kMaxHadamardCoefficients) {
        throw Invalid("HM t must be in [1, " +
                      std::to_string(kMaxHadamardCoefficients) + "]");
      }
      params.t = t;
      params.g = uint64_t{1} << t;
      params.hadamard_dim = HadamardDim::Covering(d).value();
      const double patterns = static_cast<double>(params.g);
      params.p_star = options.noiseless ? 1.0 : e / (e + patterns - 1.0);
      params.q_star = 1.0 / patterns;
      break;
    }
    case OracleKind::kHR: {
      // Items occupy rows 1..d so that every column is balanced.
      params.hadamard_dim = HadamardDim::Covering(d + 1).value();
      params.p_star = options.noiseless ? 1.0 : e / (e + 1.0);
      params.q_star = 0.5;
      break;
    }
  }
  return params;
}

bool SameMechanism(const PureParams& a, const PureParams& b) {
  return a.kind == b.kind && a.eps == b.eps && a.d == b.d && a.g == b.g &&
         a.t == b.t && a.k_prime == b.k_prime &&
         a.hadamard_dim == b.hadamard_dim && a.family.seed == b.family.seed &&
         a.family.mode == b.family.mode && a.noiseless == b.noiseless;
}

double TheoreticalVariance(OracleKind kind, double eps, uint64_t d, int t) {
  if (!(eps > 0.0)) throw Invalid("eps must be positive");
  const double e = std::exp(eps);
  const double em1 = e - 1.0;
  switch (kind) {
    case OracleKind::kDE:
      return (e + static_cast<double>(d) - 2.0) / (em1 * em1);
    case OracleKind::kSUE: {
      const double half = std::exp(eps / 2.0);
      return half / ((half - 1.0) * (half - 1.0));
    }
    case OracleKind::kOUE:
    case OracleKind::kOLH:
    case OracleKind::kFLH:
      return 4.0 * e / (em1 * em1);
    case OracleKind::kBLH:
      return (e + 1.0) * (e + 1.0) / (em1 * em1);
    case OracleKind::kHM: {
      if (t < 1) throw Invalid("HM t must be >= 1");
      const double patterns = std::ldexp(1.0, t);
      return (e + patterns - 1.0) * (e + patterns - 1.0) /
             ((patterns - 1.0) * em1 * em1);
    }
    case OracleKind::kHR:
      return (e + 1.0) * (e + 1.0) / (em1 * em1);
  }
  return 0.0;
}

int HmOptimalT(double eps) {
  return std::max(1, static_cast<int>(std::ceil(eps)));
}

double HmCoefficientKeepProb(const PureParams& params) {
  if (params.kind != OracleKind::kHM) throw Invalid("not an HM oracle");
  if (params.noiseless) return 1.0;
  const double e = std::exp(params.eps);
  const double patterns = static_cast<double>(params.g);
  return (e + patterns / 2.0 - 1.0) / (e + patterns - 1.0);
}

FlhMatrix::FlhMatrix(uint64_t k_prime, uint64_t d, const HashFamily& family)
    : k_prime_(k_prime), d_(d), values_(k_prime * d) {
  if (family.range > std::numeric_limits<uint32_t>::max()) {
    throw Invalid("FLH hash range does not fit the table");
  }
  std::vector<uint64_t> mixed(d);
  for (uint64_t j = 0; j < d; ++j) mixed[j] = Mix64(j);
  for (uint64_t i = 0; i < k_prime; ++i) {
    const HashFunction h(family, i);
    uint32_t* row = values_.data() + i * d;
    for (uint64_t j = 0; j < d; ++j) {
      row[j] = static_cast<uint32_t>(h.Premixed(j, mixed[j]));
    }
  }
}

FlhMatrix FlhPrecompute(uint64_t k_prime, uint64_t d, uint64_t g,
                        const HashFamily& family) {
  if (k_prime == 0) throw Invalid("k_prime must be >= 1");
  HashFamily sized = family;
  sized.range = g;
  return FlhMatrix(k_prime, d, sized);
}

// ---------------------------------------------------------------------------
// Client side

Report Encode(const PureParams& params, uint64_t x, Rng& rng, int weight) {
  if (x >= params.d) {
    throw std::out_of_range("item " + std::to_string(x) +
                            " outside domain of size " + std::to_string(params.d));
  }
  if (weight != 1 && !(weight == -1 && params.kind == OracleKind::kHM)) {
    throw Invalid("negative weights are only encodable by HM");
  }
  Report report;
  report.kind = params.kind;
  switch (params.kind) {
    case OracleKind::kDE: {
      uint64_t y = x;
      if (!rng.Bernoulli(params.p_star)) {
        y = rng.UniformInt(params.d - 1);
        if (y >= x) ++y;
      }
      report.payload = DirectReport{y};
      break;
    }
    case OracleKind::kSUE:
    case OracleKind::kOUE: {
      UnaryReport bits(params.d);
      if (rng.Bernoulli(params.p_star)) bits.set(x);
      // Skip ahead geometrically between the zero bits that flip to one.
      uint64_t pos = 0;
      while (true) {
        const uint64_t gap = rng.Geometric(params.q_star);
        if (gap >= params.d - pos) break;
        pos += gap;
        if (pos != x) bits.set(pos);
        ++pos;
        if (pos >= params.d) break;
      }
      report.payload = std::move(bits);
      break;
    }
    case OracleKind::kBLH:
    case OracleKind::kOLH:
    case OracleKind::kFLH: {
      const uint64_t index = rng.UniformInt(LocalHashIndexSpace(params));
      const uint64_t hashed = HashFunction(params.family, index)(x);
      uint64_t value = hashed;
      if (!rng.Bernoulli(params.p_star)) {
        value = rng.UniformInt(params.g - 1);
        if (value >= hashed) ++value;
      }
      report.payload = HashReport{index, value};
      break;
    }
    case OracleKind::kHM: {
      HadamardMechReport hm;
      hm.coefficients.resize(params.t);
      for (auto& coefficient : hm.coefficients) {
        coefficient.index = rng.UniformInt(params.hadamard_dim);
      }
      uint64_t pattern = HmTruePattern(x, hm);
      if (weight < 0) pattern ^= params.g - 1;
      if (!rng.Bernoulli(params.p_star)) {
        pattern ^= 1 + rng.UniformInt(params.g - 1);
      }
      for (int k = 0; k < params.t; ++k) {
        hm.coefficients[k].sign = ((pattern >> k) & 1) != 0 ? -1 : 1;
      }
      report.payload = std::move(hm);
      break;
    }
    case OracleKind::kHR: {
      const uint64_t row = x + 1;
      const int wanted = rng.Bernoulli(params.p_star) ? 1 : -1;
      uint64_t j = rng.UniformInt(params.hadamard_dim);
      // Toggling the lowest set bit of the row flips the sign, pairing the
      // +1 and -1 columns one-to-one.
      if (HadamardSign(row, j) != wanted) j ^= row & (~row + 1);
      report.payload = HadamardRespReport{j};
      break;
    }
  }
  return report;
}

void ValidateReport(const PureParams& params, const Report& report) {
  if (report.kind != params.kind) {
    throw Invalid("report kind " + std::string(OracleName(report.kind)) +
                  " does not match oracle " + std::string(OracleName(params.kind)));
  }
  bool ok = false;
  switch (params.kind) {
    case OracleKind::kDE:
      if (auto* r = std::get_if<DirectReport>(&report.payload)) ok = r->value < params.d;
      break;
    case OracleKind::kSUE:
    case OracleKind::kOUE:
      if (auto* r = std::get_if<UnaryReport>(&report.payload)) {
        ok = r->d == params.d && r->words.size() == (params.d + 63) / 64;
      }
      break;
    case OracleKind::kBLH:
    case OracleKind::kOLH:
    case OracleKind::kFLH:
      if (auto* r = std::get_if<HashReport>(&report.payload)) {
        ok = r->value < params.g && r->hash_index < LocalHashIndexSpace(params);
      }
      break;
    case OracleKind::kHM:
      if (auto* r = std::get_if<HadamardMechReport>(&report.payload)) {
        ok = r->coefficients.size() == static_cast<size_t>(params.t) &&
             std::all_of(r->coefficients.begin(), r->coefficients.end(),
                         [&](const HadamardCoefficient& c) {
                           return c.index < params.hadamard_dim &&
                                  (c.sign == 1 || c.sign == -1);
                         });
      }
      break;
    case OracleKind::kHR:
      if (auto* r = std::get_if<HadamardRespReport>(&report.payload)) {
        ok = r->index < params.hadamard_dim;
      }
      break;
  }
  if (!ok) {
    throw Invalid("malformed " + std::string(OracleName(params.kind)) + " report");
  }
}

bool Supports(const PureParams& params, const Report& report, uint64_t x) {
  switch (params.kind) {
    case OracleKind::kDE:
      return std::get<DirectReport>(report.payload).value == x;
    case OracleKind::kSUE:
    case OracleKind::kOUE:
      return std::get<UnaryReport>(report.payload).bit(x);
    case OracleKind::kBLH:
    case OracleKind::kOLH:
    case OracleKind::kFLH: {
      const auto& r = std::get<HashReport>(report.payload);
      return Hash(params.family, r.hash_index, x) == r.value;
    }
    case OracleKind::kHM: {
      const auto& r = std::get<HadamardMechReport>(report.payload);
      return HmTruePattern(x, r) == HmReportedPattern(r);
    }
    case OracleKind::kHR:
      return HadamardSign(x + 1, std::get<HadamardRespReport>(report.payload).index) > 0;
  }
  return false;
}

double ReportProbability(const PureParams& params, uint64_t x,
                         const Report& report) {
  ValidateReport(params, report);
  const double p = params.p_star;
  switch (params.kind) {
    case OracleKind::kDE: {
      const double other = (1.0 - p) / static_cast<double>(params.d - 1);
      return std::get<DirectReport>(report.payload).value == x ? p : other;
    }
    case OracleKind::kSUE:
    case OracleKind::kOUE: {
      const auto& bits = std::get<UnaryReport>(report.payload);
      double prob = 1.0;
      for (uint64_t i = 0; i < params.d; ++i) {
        const double one = i == x ? p : params.q_star;
        prob *= bits.bit(i) ? one : 1.0 - one;
      }
      return prob;
    }
    case OracleKind::kBLH:
    case OracleKind::kOLH:
    case OracleKind::kFLH: {
      const auto& r = std::get<HashReport>(report.payload);
      const double index_prob = 1.0 / static_cast<double>(LocalHashIndexSpace(params));
      const bool truthful = Hash(params.family, r.hash_index, x) == r.value;
      const double other = (1.0 - p) / static_cast<double>(params.g - 1);
      return index_prob * (truthful ? p : other);
    }
    case OracleKind::kHM: {
      const auto& r = std::get<HadamardMechReport>(report.payload);
      const double index_prob =
          std::pow(1.0 / static_cast<double>(params.hadamard_dim), params.t);
      const bool truthful = HmTruePattern(x, r) == HmReportedPattern(r);
      const double other = (1.0 - p) / static_cast<double>(params.g - 1);
      return index_prob * (truthful ? p : other);
    }
    case OracleKind::kHR: {
      const double half = static_cast<double>(params.hadamard_dim) / 2.0;
      return Supports(params, report, x) ? p / half : (1.0 - p) / half;
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Server side

AggState::AggState(PureParams params) : params_(std::move(params)) {
  switch (params_.kind) {
    case OracleKind::kDE:
    case OracleKind::kSUE:
    case OracleKind::kOUE:
      counts_.assign(params_.d, 0);
      break;
    case OracleKind::kFLH:
      counts_.assign(params_.k_prime * params_.g, 0);
      break;
    case OracleKind::kHM:
    case OracleKind::kHR:
      counts_.assign(params_.hadamard_dim, 0);
      break;
    case OracleKind::kBLH:
    case OracleKind::kOLH:
      break;
  }
}

void AggState::Add(const Report& report) {
  ValidateReport(params_, report);
  ++n_;
  switch (params_.kind) {
    case OracleKind::kDE:
      ++counts_[std::get<DirectReport>(report.payload).value];
      break;
    case OracleKind::kSUE:
    case OracleKind::kOUE: {
      const auto& bits = std::get<UnaryReport>(report.payload);
      for (size_t w = 0; w < bits.words.size(); ++w) {
        uint64_t word = bits.words[w];
        while (word != 0) {
          ++counts_[w * 64 + std::countr_zero(word)];
          word &= word - 1;
        }
      }
      break;
    }
    case OracleKind::kBLH:
    case OracleKind::kOLH:
      hash_reports_.push_back(std::get<HashReport>(report.payload));
      break;
    case OracleKind::kFLH: {
      const auto& r = std::get<HashReport>(report.payload);
      ++counts_[r.hash_index * params_.g + r.value];
      break;
    }
    case OracleKind::kHM:
      for (const auto& c : std::get<HadamardMechReport>(report.payload).coefficients) {
        counts_[c.index] += c.sign;
      }
      break;
    case OracleKind::kHR:
      ++counts_[std::get<HadamardRespReport>(report.payload).index];
      break;
  }
}

void AggState::Merge(const AggState& other) {
  if (!SameMechanism(params_, other.params_)) {
    throw Invalid("cannot merge aggregates built from different parameters");
  }
  n_ += other.n_;
  for (size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  hash_reports_.insert(hash_reports_.end(), other.hash_reports_.begin(),
                       other.hash_reports_.end());
}

double AggState::Debias(double support_count) const {
  const double n = static_cast<double>(n_);
  return (support_count - n * params_.q_star) / (params_.p_star - params_.q_star);
}

double AggState::Estimate(uint64_t x) const {
  if (x >= params_.d) throw std::out_of_range("item outside domain");
  switch (params_.kind) {
    case OracleKind::kDE:
    case OracleKind::kSUE:
    case OracleKind::kOUE:
      return Debias(static_cast<double>(counts_[x]));
    case OracleKind::kBLH:
    case OracleKind::kOLH: {
      uint64_t support = 0;
      for (const auto& r : hash_reports_) {
        support += HashFunction(params_.family, r.hash_index)(x) == r.value;
      }
      return Debias(static_cast<double>(support));
    }
    case OracleKind::kFLH: {
      int64_t support = 0;
      for (uint64_t i = 0; i < params_.k_prime; ++i) {
        const uint64_t h = params_.flh_matrix ? params_.flh_matrix->at(i, x)
                                              : Hash(params_.family, i, x);
        support += counts_[i * params_.g + h];
      }
      return Debias(static_cast<double>(support));
    }
    case OracleKind::kHM: {
      double sum = 0.0;
      for (uint64_t j = 0; j < params_.hadamard_dim; ++j) {
        sum += HadamardSign(x, j) * static_cast<double>(counts_[j]);
      }
      return sum / (params_.t * (2.0 * HmCoefficientKeepProb(params_) - 1.0));
    }
    case OracleKind::kHR: {
      int64_t plus = 0;
      for (uint64_t j = 0; j < params_.hadamard_dim; ++j) {
        if (HadamardSign(x + 1, j) > 0) plus += counts_[j];
      }
      return Debias(static_cast<double>(plus));
    }
  }
  return 0.0;
}

std::vector<double> AggState::EstimateAll(DecodeStats* stats) const {
  const uint64_t d = params_.d;
  std::vector<double> out(d);
  switch (params_.kind) {
    case OracleKind::kDE:
    case OracleKind::kSUE:
    case OracleKind::kOUE:
      for (uint64_t x = 0; x < d; ++x) out[x] = Debias(static_cast<double>(counts_[x]));
      break;
    case OracleKind::kBLH:
    case OracleKind::kOLH: {
      // O(n d): every report names a distinct hash function.
      std::vector<uint64_t> mixed(d);
      for (uint64_t x = 0; x < d; ++x) mixed[x] = Mix64(x);
      std::vector<uint64_t> support(d, 0);
      for (const auto& r : hash_reports_) {
        const HashFunction h(params_.family, r.hash_index);
        for (uint64_t x = 0; x < d; ++x) {
          support[x] += h.Premixed(x, mixed[x]) == r.value;
        }
      }
      if (stats != nullptr) stats->hash_evaluations += hash_reports_.size() * d;
      for (uint64_t x = 0; x < d; ++x) out[x] = Debias(static_cast<double>(support[x]));
      break;
    }
    case OracleKind::kFLH: {
      // Reports are already batched per hash function; each active member's
      // table row is read once.
      std::vector<int64_t> support(d, 0);
      std::vector<uint64_t> mixed;
      std::vector<uint32_t> scratch;
      if (!params_.flh_matrix) {
        mixed.resize(d);
        scratch.resize(d);
        for (uint64_t x = 0; x < d; ++x) mixed[x] = Mix64(x);
      }
      const uint64_t g = params_.g;
      for (uint64_t i = 0; i < params_.k_prime; ++i) {
        const int64_t* hist = counts_.data() + i * g;
        if (std::all_of(hist, hist + g, [](int64_t c) { return c == 0; })) continue;
        std::span<const uint32_t> row;
        if (params_.flh_matrix) {
          row = params_.flh_matrix->row(i);
          if (stats != nullptr) stats->table_lookups += d;
        } else {
          const HashFunction h(params_.family, i);
          for (uint64_t x = 0; x < d; ++x) {
            scratch[x] = static_cast<uint32_t>(h.Premixed(x, mixed[x]));
          }
          row = scratch;
          if (stats != nullptr) stats->hash_evaluations += d;
        }
        for (uint64_t x = 0; x < d; ++x) support[x] += hist[row[x]];
      }
      for (uint64_t x = 0; x < d; ++x) out[x] = Debias(static_cast<double>(support[x]));
      break;
    }
    case OracleKind::kHM: {
      std::vector<double> coeffs(counts_.begin(), counts_.end());
      FastWalshHadamard(coeffs);
      const double scale = params_.t * (2.0 * HmCoefficientKeepProb(params_) - 1.0);
      for (uint64_t x = 0; x < d; ++x) out[x] = coeffs[x] / scale;
      break;
    }
    case OracleKind::kHR: {
      std::vector<double> hist(counts_.begin(), counts_.end());
      FastWalshHadamard(hist);
      const double n = static_cast<double>(n_);
      for (uint64_t x = 0; x < d; ++x) out[x] = Debias((n + hist[x + 1]) / 2.0);
      break;
    }
  }
  return out;
}

AggState Aggregate(const PureParams& params, std::span<const Report> reports) {
  AggState state(params);
  for (const auto& report : reports) state.Add(report);
  return state;
}

}  // namespace ldpfreq
