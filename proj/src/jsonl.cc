// Copyright 2026 The Forensa Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "forensa/jsonl.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "forensa/error.h"

namespace forensa {

std::string ConfigDigest(const nlohmann::json& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string DumpJsonl(const ArtifactHeader& header,
                      const std::vector<nlohmann::json>& rows) {
  nlohmann::json h;
  h["schema"] = header.schema;
  h["kind"] = header.kind;
  h["seed"] = header.seed;
  h["config_digest"] = header.config_digest;
  std::string out = h.dump();
  out += '\n';
  for (const auto& row : rows) {
    out += row.dump();
    out += '\n';
  }
  return out;
}

JsonlDocument ParseJsonl(std::string_view text, const std::string& source,
                         std::optional<std::string_view> expected_kind) {
  JsonlDocument doc;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error&) {
      throw DataError(source + ":" + std::to_string(line_no) +
                      ": invalid JSON");
    }
    if (!have_header) {
      if (!j.is_object() || !j.contains("schema")) {
        throw DataError(source + ": missing schema header line");
      }
      if (!j["schema"].is_number_integer() ||
          j["schema"].get<int>() != kSchemaVersion) {
        throw DataError(source + ": unsupported schema version");
      }
      doc.header.schema = kSchemaVersion;
      doc.header.kind = j.value("kind", std::string());
      doc.header.seed = j.value("seed", std::uint64_t{0});
      doc.header.config_digest = j.value("config_digest", std::string());
      if (expected_kind && !doc.header.kind.empty() &&
          doc.header.kind != *expected_kind) {
        throw DataError(source + ": expected a '" + std::string(*expected_kind) +
                        "' file, found '" + doc.header.kind + "'");
      }
      have_header = true;
      continue;
    }
    doc.rows.push_back(std::move(j));
  }
  if (!have_header) throw DataError(source + ": missing schema header line");
  return doc;
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw DataError("write failed for " + path.string());
}

JsonlDocument ReadJsonl(const std::filesystem::path& path,
                        std::optional<std::string_view> expected_kind) {
  return ParseJsonl(ReadTextFile(path), path.string(), expected_kind);
}

void WriteJsonl(const std::filesystem::path& path, const ArtifactHeader& header,
                const std::vector<nlohmann::json>& rows) {
  WriteTextFile(path, DumpJsonl(header, rows));
}

}  // namespace forensa
