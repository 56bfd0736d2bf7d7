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

#include "ldpfreq/privacy_audit.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ldpfreq {
namespace {

constexpr uint64_t kMaxEnumeratedReports = uint64_t{1} << 22;

void CheckSize(double count) {
  if (count > static_cast<double>(kMaxEnumeratedReports)) {
    throw std::invalid_argument("output space too large to enumerate");
  }
}

}  // namespace

std::vector<Report> EnumerateReports(const PureParams& params,
                                     uint64_t max_hash_members) {
  std::vector<Report> out;
  switch (params.kind) {
    case OracleKind::kDE:
      CheckSize(static_cast<double>(params.d));
      for (uint64_t y = 0; y < params.d; ++y) {
        out.push_back(Report{params.kind, DirectReport{y}});
      }
      break;
    case OracleKind::kSUE:
    case OracleKind::kOUE: {
      CheckSize(std::ldexp(1.0, static_cast<int>(std::min<uint64_t>(params.d, 64))));
      for (uint64_t mask = 0; mask < (uint64_t{1} << params.d); ++mask) {
        UnaryReport bits(params.d);
        for (uint64_t i = 0; i < params.d; ++i) {
          if ((mask >> i) & 1) bits.set(i);
        }
        out.push_back(Report{params.kind, std::move(bits)});
      }
      break;
    }
    case OracleKind::kBLH:
    case OracleKind::kOLH:
    case OracleKind::kFLH: {
      uint64_t members = max_hash_members;
      if (params.kind == OracleKind::kFLH) members = std::min(members, params.k_prime);
      CheckSize(static_cast<double>(members) * static_cast<double>(params.g));
      for (uint64_t i = 0; i < members; ++i) {
        for (uint64_t v = 0; v < params.g; ++v) {
          out.push_back(Report{params.kind, HashReport{i, v}});
        }
      }
      break;
    }
    case OracleKind::kHM: {
      const double dim = static_cast<double>(params.hadamard_dim);
      CheckSize(std::pow(dim, params.t) * static_cast<double>(params.g));
      uint64_t tuples = 1;
      for (int k = 0; k < params.t; ++k) tuples *= params.hadamard_dim;
      for (uint64_t tuple = 0; tuple < tuples; ++tuple) {
        for (uint64_t pattern = 0; pattern < params.g; ++pattern) {
          HadamardMechReport hm;
          uint64_t rest = tuple;
          for (int k = 0; k < params.t; ++k) {
            const int sign = ((pattern >> k) & 1) != 0 ? -1 : 1;
            hm.coefficients.push_back({rest % params.hadamard_dim, sign});
            rest /= params.hadamard_dim;
          }
          out.push_back(Report{params.kind, std::move(hm)});
        }
      }
      break;
    }
    case OracleKind::kHR:
      CheckSize(static_cast<double>(params.hadamard_dim));
      for (uint64_t j = 0; j < params.hadamard_dim; ++j) {
        out.push_back(Report{params.kind, HadamardRespReport{j}});
      }
      break;
  }
  return out;
}

PrivacyAudit AuditPrivacy(const PureParams& params, uint64_t max_hash_members) {
  const std::vector<Report> reports = EnumerateReports(params, max_hash_members);
  const uint64_t d = params.d;

  PrivacyAudit audit;
  audit.bound = std::exp(params.eps);
  audit.outputs = reports.size();

  // Probability mass of the listed outputs for each input; below 1 only
  // when local-hashing members were truncated.
  std::vector<double> mass(d, 0.0);
  // support[x][x'] = Pr[R(x') supports x], before normalization.
  std::vector<double> support(d * d, 0.0);
  std::vector<double> probs(d);
  for (const Report& report : reports) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (uint64_t x = 0; x < d; ++x) {
      probs[x] = ReportProbability(params, x, report);
      mass[x] += probs[x];
      lo = std::min(lo, probs[x]);
      hi = std::max(hi, probs[x]);
    }
    if (hi > 0.0) {
      const double ratio = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
      audit.max_ratio = std::max(audit.max_ratio, ratio);
    }
    for (uint64_t x = 0; x < d; ++x) {
      if (!Supports(params, report, x)) continue;
      for (uint64_t source = 0; source < d; ++source) {
        support[x * d + source] += probs[source];
      }
    }
  }
  for (uint64_t x = 0; x < d; ++x) {
    for (uint64_t source = 0; source < d; ++source) {
      const double p = support[x * d + source] / mass[source];
      if (source == x) {
        audit.min_true_support = std::min(audit.min_true_support, p);
        audit.max_true_support = std::max(audit.max_true_support, p);
      } else {
        audit.min_other_support = std::min(audit.min_other_support, p);
        audit.max_other_support = std::max(audit.max_other_support, p);
      }
    }
  }
  return audit;
}

}  // namespace ldpfreq
