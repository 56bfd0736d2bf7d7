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

#ifndef LDPFREQ_PRIVACY_AUDIT_H_
#define LDPFREQ_PRIVACY_AUDIT_H_

#include <cstdint>
#include <vector>

#include "ldpfreq/oracles.h"

namespace ldpfreq {

// Every report the randomizer can emit. Local hashing has a 2^32 (or k')
// member index space; only the first `max_hash_members` members are listed.
// Because the member is drawn independently of the input, privacy ratios
// are unaffected by the restriction. Throws std::invalid_argument when more
// than 2^22 reports would be listed.
std::vector<Report> EnumerateReports(const PureParams& params,
                                     uint64_t max_hash_members = 16);

struct PrivacyAudit {
  // max over y, x, x' of Pr[R(x) = y] / Pr[R(x') = y]; infinite if some y is
  // reachable from one input and not another.
  double max_ratio = 0.0;
  // e^eps.
  double bound = 0.0;
  // Pr[R(x) supports x], extremes over x.
  double min_true_support = 1.0;
  double max_true_support = 0.0;
  // Pr[R(x') supports x], extremes over x' != x.
  double min_other_support = 1.0;
  double max_other_support = 0.0;
  uint64_t outputs = 0;

  bool Satisfies(double tolerance = 1e-9) const {
    return max_ratio <= bound + tolerance;
  }
};

// Exhaustive eps-LDP check of the exact output distribution over the whole
// domain. Intended for small d.
PrivacyAudit AuditPrivacy(const PureParams& params,
                          uint64_t max_hash_members = 16);

}  // namespace ldpfreq

#endif  // LDPFREQ_PRIVACY_AUDIT_H_
