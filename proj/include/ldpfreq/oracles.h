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

#ifndef LDPFREQ_ORACLES_H_
#define LDPFREQ_ORACLES_H_

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "ldpfreq/hashing.h"

namespace ldpfreq {

// The numeric values double as the wire tag of a serialized report.
enum class OracleKind : uint8_t {
  kDE = 1,   // direct encoding (k-ary randomized response)
  kSUE = 2,  // symmetric unary encoding
  kOUE = 3,  // optimized unary encoding
  kBLH = 4,  // binary local hashing
  kOLH = 5,  // optimal local hashing
  kFLH = 6,  // fast local hashing: k' shared hash functions
  kHM = 7,   // Hadamard mechanism
  kHR = 8,   // Hadamard response
};

inline constexpr std::array<OracleKind, 8> kAllOracleKinds = {
    OracleKind::kDE,  OracleKind::kSUE, OracleKind::kOUE, OracleKind::kBLH,
    OracleKind::kOLH, OracleKind::kFLH, OracleKind::kHM,  OracleKind::kHR};

std::string_view OracleName(OracleKind kind);
// Case-insensitive. Throws std::invalid_argument for unknown names.
OracleKind ParseOracleKind(std::string_view name);

bool IsUnary(OracleKind kind);
bool IsLocalHashing(OracleKind kind);

// Unary encodings materialize a d-bit vector per report; larger domains
// are refused.
inline constexpr uint64_t kMaxUnaryDomain = uint64_t{1} << 17;

// DE, HM and HR aggregate into dense arrays of (padded) domain size.
inline constexpr uint64_t kMaxDenseDomain = uint64_t{1} << 26;

// Hash-index space sampled by BLH/OLH clients.
inline constexpr uint64_t kLocalHashIndexSpace = uint64_t{1} << 32;

struct OracleOptions {
  // HM: Hadamard coefficients per report. 0 selects ceil(eps).
  int t = 0;
  // FLH: number of shared hash functions. Required for FLH.
  uint64_t k_prime = 0;
  // Seed of the public hash family (local hashing).
  uint64_t hash_seed = 0;
  // Forces the truthful branch of every randomizer. For testing and
  // calibration only; the output is not private.
  bool noiseless = false;
  // Local hashing uses the injective family and widens g to at least d.
  bool injective_hash = false;
};

class FlhMatrix;

// Parameters of a pure protocol. p_star is the probability that an input is
// mapped to an output supporting it (and the keep probability of the
// randomizer); q_star the probability for any other input.
struct PureParams {
  OracleKind kind = OracleKind::kDE;
  double eps = 0.0;
  uint64_t d = 0;
  double p_star = 0.0;
  double q_star = 0.0;
  // Hash range for local hashing, 2^t for HM.
  uint64_t g = 0;
  // HM coefficients per report.
  int t = 0;
  uint64_t k_prime = 0;
  // Padded Hadamard dimension (HM, HR).
  uint64_t hadamard_dim = 0;
  HashFamily family;
  bool noiseless = false;
  // k' x d table of FLH hash values, shared by every state built from these
  // params. Null when the table would be too large; rows are then hashed on
  // the fly.
  std::shared_ptr<const FlhMatrix> flh_matrix;
};

// Closed-form parameters of each oracle. Throws std::invalid_argument for
// eps <= 0, d < 2, FLH without k_prime, or a domain above kMaxUnaryDomain
// (unary) or kMaxDenseDomain (DE, HM, HR).
PureParams MakeOracleParams(OracleKind kind, double eps, uint64_t d,
                            const OracleOptions& options = {});

// True if both parameter sets describe the same randomizer and decoder.
bool SameMechanism(const PureParams& a, const PureParams& b);

// Per-report variance of the estimator for an item the user does not hold.
// For HM this is the bound for t sampled coefficients.
double TheoreticalVariance(OracleKind kind, double eps, uint64_t d, int t = 1);

int HmOptimalT(double eps);

// Probability that a single HM coefficient sign arrives unflipped.
double HmCoefficientKeepProb(const PureParams& params);

// Table of FLH hash values: entry (i, j) = Hash(family, i, j).
class FlhMatrix {
 public:
  FlhMatrix(uint64_t k_prime, uint64_t d, const HashFamily& family);

  uint64_t k_prime() const { return k_prime_; }
  uint64_t d() const { return d_; }
  std::span<const uint32_t> row(uint64_t i) const {
    return {values_.data() + i * d_, d_};
  }
  uint32_t at(uint64_t i, uint64_t j) const { return values_[i * d_ + j]; }

 private:
  uint64_t k_prime_;
  uint64_t d_;
  std::vector<uint32_t> values_;
};

FlhMatrix FlhPrecompute(uint64_t k_prime, uint64_t d, uint64_t g,
                        const HashFamily& family);

// ---------------------------------------------------------------------------
// Reports

struct DirectReport {
  uint64_t value = 0;
};

// Bit-packed d-bit vector, LSB-first within 64-bit words.
struct UnaryReport {
  uint64_t d = 0;
  std::vector<uint64_t> words;

  explicit UnaryReport(uint64_t length = 0)
      : d(length), words((length + 63) / 64, 0) {}
  bool bit(uint64_t i) const { return (words[i >> 6] >> (i & 63)) & 1; }
  void set(uint64_t i) { words[i >> 6] |= uint64_t{1} << (i & 63); }
};

struct HashReport {
  uint64_t hash_index = 0;
  uint64_t value = 0;
};

struct HadamardCoefficient {
  uint64_t index = 0;
  int sign = 1;
};

struct HadamardMechReport {
  std::vector<HadamardCoefficient> coefficients;
};

struct HadamardRespReport {
  uint64_t index = 0;
};

// One user's privatized message.
struct Report {
  OracleKind kind = OracleKind::kDE;
  std::variant<DirectReport, UnaryReport, HashReport, HadamardMechReport,
               HadamardRespReport>
      payload;
};

// Privatizes item x. `weight` may be -1 only for HM, which encodes the
// negated one-hot vector (used by Count sketch rows).
Report Encode(const PureParams& params, uint64_t x, Rng& rng, int weight = 1);

// Throws std::invalid_argument if the report was not produced under params.
void ValidateReport(const PureParams& params, const Report& report);

// Whether `report` supports item x.
bool Supports(const PureParams& params, const Report& report, uint64_t x);

// Exact Pr[Encode(params, x) == report].
double ReportProbability(const PureParams& params, uint64_t x,
                         const Report& report);

// Counters filled in by the batched decoders.
struct DecodeStats {
  uint64_t table_lookups = 0;
  uint64_t hash_evaluations = 0;
};

// Mergeable server-side aggregate of reports produced under one PureParams.
class AggState {
 public:
  explicit AggState(PureParams params);

  void Add(const Report& report);
  // Throws std::invalid_argument for a state built from other params.
  void Merge(const AggState& other);

  const PureParams& params() const { return params_; }
  uint64_t n_reports() const { return n_; }

  // Unbiased estimate of the number of users holding x. May be negative.
  double Estimate(uint64_t x) const;
  std::vector<double> EstimateAll(DecodeStats* stats = nullptr) const;

 private:
  double Debias(double support_count) const;

  PureParams params_;
  uint64_t n_ = 0;
  // DE/UE: per-item counts. FLH: k' x g per-member histograms. HM: signed
  // coefficient sums. HR: index histogram.
  std::vector<int64_t> counts_;
  // BLH/OLH keep every report; each one names its own hash function.
  std::vector<HashReport> hash_reports_;
};

AggState Aggregate(const PureParams& params, std::span<const Report> reports);

}  // namespace ldpfreq

#endif  // LDPFREQ_ORACLES_H_
