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

#ifndef LDPFREQ_REPORT_CODEC_H_
#define LDPFREQ_REPORT_CODEC_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ldpfreq/oracles.h"

namespace ldpfreq {

// Compact binary record of a report; see docs/report_format.md.
//
//   DE       tag varint(value)
//   SUE/OUE  tag varint(d) ceil(d/8) bytes, LSB-first
//   LH       tag varint(hash_index) varint(value)
//   HM       tag varint(t) t x varint(index) ceil(t/8) sign bytes (1 = -1)
//   HR       tag varint(index)
//
// The tag is the OracleKind value.
void AppendVarint(uint64_t value, std::string* out);
// Throws std::invalid_argument on truncated or overlong input.
uint64_t ReadVarint(std::string_view data, size_t* pos);

void AppendReport(const Report& report, std::string* out);
std::string SerializeReport(const Report& report);
// Parses one record starting at *pos and advances *pos past it. Throws
// std::invalid_argument on malformed input.
Report ParseReport(std::string_view data, size_t* pos);

// Report files: the magic "LDPR", a version byte, then length-prefixed
// records until end of file.
void WriteReportFile(const std::string& path, std::span<const Report> reports);
std::vector<Report> ReadReportFile(const std::string& path);

}  // namespace ldpfreq

#endif  // LDPFREQ_REPORT_CODEC_H_
