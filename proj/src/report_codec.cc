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

#include "ldpfreq/report_codec.h"

#include <fstream>
#include <iterator>
#include <stdexcept>

namespace ldpfreq {
namespace {

constexpr std::string_view kFileMagic = "LDPR";
constexpr char kFileVersion = 1;

uint8_t ReadByte(std::string_view data, size_t* pos) {
  if (*pos >= data.size()) throw std::invalid_argument("truncated report record");
  return static_cast<uint8_t>(data[(*pos)++]);
}

}  // namespace

void AppendVarint(uint64_t value, std::string* out) {
  while (value >= 0x80) {
    out->push_back(static_cast<char>((value & 0x7f) | 0x80));
    value >>= 7;
  }
  out->push_back(static_cast<char>(value));
}

uint64_t ReadVarint(std::string_view data, size_t* pos) {
  uint64_t value = 0;
  for (int shift = 0; shift < 64; shift += 7) {
    const uint8_t byte = ReadByte(data, pos);
    value |= static_cast<uint64_t>(byte & 0x7f) << shift;
    if ((byte & 0x80) == 0) return value;
  }
  throw std::invalid_argument("varint longer than 64 bits");
}

void AppendReport(const Report& report, std::string* out) {
  out->push_back(static_cast<char>(report.kind));
  switch (report.kind) {
    case OracleKind::kDE:
      AppendVarint(std::get<DirectReport>(report.payload).value, out);
      break;
    case OracleKind::kSUE:
    case OracleKind::kOUE: {
      const auto& bits = std::get<UnaryReport>(report.payload);
      AppendVarint(bits.d, out);
      for (uint64_t byte = 0; byte < (bits.d + 7) / 8; ++byte) {
        out->push_back(static_cast<char>(bits.words[byte / 8] >> (8 * (byte % 8))));
      }
      break;
    }
    case OracleKind::kBLH:
    case OracleKind::kOLH:
    case OracleKind::kFLH: {
      const auto& r = std::get<HashReport>(report.payload);
      AppendVarint(r.hash_index, out);
      AppendVarint(r.value, out);
      break;
    }
    case OracleKind::kHM: {
      const auto& coeffs = std::get<HadamardMechReport>(report.payload).coefficients;
      AppendVarint(coeffs.size(), out);
      for (const auto& c : coeffs) AppendVarint(c.index, out);
      for (size_t byte = 0; byte < (coeffs.size() + 7) / 8; ++byte) {
        uint8_t packed = 0;
        for (size_t k = byte * 8; k < std::min(coeffs.size(), byte * 8 + 8); ++k) {
          if (coeffs[k].sign < 0) packed |= static_cast<uint8_t>(1u << (k % 8));
        }
        out->push_back(static_cast<char>(packed));
      }
      break;
    }
    case OracleKind::kHR:
      AppendVarint(std::get<HadamardRespReport>(report.payload).index, out);
      break;
  }
}

std::string SerializeReport(const Report& report) {
  std::string out;
  AppendReport(report, &out);
  return out;
}

Report ParseReport(std::string_view data, size_t* pos) {
  const uint8_t tag = ReadByte(data, pos);
  if (tag < static_cast<uint8_t>(OracleKind::kDE) ||
      tag > static_cast<uint8_t>(OracleKind::kHR)) {
    throw std::invalid_argument("unknown report tag " + std::to_string(tag));
  }
  Report report;
  report.kind = static_cast<OracleKind>(tag);
  switch (report.kind) {
    case OracleKind::kDE:
      report.payload = DirectReport{ReadVarint(data, pos)};
      break;
    case OracleKind::kSUE:
    case OracleKind::kOUE: {
      const uint64_t d = ReadVarint(data, pos);
      if (d > kMaxUnaryDomain) throw std::invalid_argument("unary report too long");
      UnaryReport bits(d);
      for (uint64_t byte = 0; byte < (d + 7) / 8; ++byte) {
        bits.words[byte / 8] |= static_cast<uint64_t>(ReadByte(data, pos))
                                << (8 * (byte % 8));
      }
      if (d % 64 != 0 && !bits.words.empty() && (bits.words.back() >> (d % 64)) != 0) {
        throw std::invalid_argument("unary report has bits beyond its length");
      }
      report.payload = std::move(bits);
      break;
    }
    case OracleKind::kBLH:
    case OracleKind::kOLH:
    case OracleKind::kFLH: {
      HashReport r;
      r.hash_index = ReadVarint(data, pos);
      r.value = ReadVarint(data, pos);
      report.payload = r;
      break;
    }
    case OracleKind::kHM: {
      const uint64_t t = ReadVarint(data, pos);
      if (t > 64) throw std::invalid_argument("too many Hadamard coefficients");
      HadamardMechReport hm;
      hm.coefficients.resize(t);
      for (auto& c : hm.coefficients) c.index = ReadVarint(data, pos);
      for (size_t byte = 0; byte < (t + 7) / 8; ++byte) {
        const uint8_t packed = ReadByte(data, pos);
        for (size_t k = byte * 8; k < std::min<size_t>(t, byte * 8 + 8); ++k) {
          hm.coefficients[k].sign = ((packed >> (k % 8)) & 1) != 0 ? -1 : 1;
        }
      }
      report.payload = std::move(hm);
      break;
    }
    case OracleKind::kHR:
      report.payload = HadamardRespReport{ReadVarint(data, pos)};
      break;
  }
  return report;
}

void WriteReportFile(const std::string& path, std::span<const Report> reports) {
  std::string buffer(kFileMagic);
  buffer.push_back(kFileVersion);
  std::string record;
  for (const auto& report : reports) {
    record.clear();
    AppendReport(report, &record);
    AppendVarint(record.size(), &buffer);
    buffer += record;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
  if (!out) throw std::runtime_error("failed writing " + path);
}

std::vector<Report> ReadReportFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  const std::string data((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  if (data.size() < kFileMagic.size() + 1 ||
      std::string_view(data).substr(0, kFileMagic.size()) != kFileMagic) {
    throw std::invalid_argument(path + " is not a report file");
  }
  if (data[kFileMagic.size()] != kFileVersion) {
    throw std::invalid_argument("unsupported report file version");
  }
  std::vector<Report> reports;
  size_t pos = kFileMagic.size() + 1;
  while (pos < data.size()) {
    const uint64_t length = ReadVarint(data, &pos);
    if (length > data.size() - pos) throw std::invalid_argument("truncated report file");
    const size_t end = pos + length;
    reports.push_back(ParseReport(std::string_view(data).substr(0, end), &pos));
    if (pos != end) throw std::invalid_argument("report record length mismatch");
  }
  return reports;
}

}  // namespace ldpfreq
