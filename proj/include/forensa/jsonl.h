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

// JSON-lines artifact files. Every file starts with a header line carrying
// the schema version, the artifact kind, the run seed and a digest of the
// configuration that produced it.

#ifndef FORENSA_JSONL_H_
#define FORENSA_JSONL_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace forensa {

inline constexpr int kSchemaVersion = 1;

struct ArtifactHeader {
  int schema = kSchemaVersion;
  std::string kind;
  std::uint64_t seed = 0;
  std::string config_digest;

  bool operator==(const ArtifactHeader&) const = default;
};

struct JsonlDocument {
  ArtifactHeader header;
  std::vector<nlohmann::json> rows;
};

// 64-bit FNV-1a over the compact dump of `config`, as 16 hex digits.
std::string ConfigDigest(const nlohmann::json& config);

std::string DumpJsonl(const ArtifactHeader& header,
                      const std::vector<nlohmann::json>& rows);

// `source` names the input in error messages. When `expected_kind` is set
// the header kind must match. Throws DataError.
JsonlDocument ParseJsonl(std::string_view text, const std::string& source,
                         std::optional<std::string_view> expected_kind = {});

JsonlDocument ReadJsonl(const std::filesystem::path& path,
                        std::optional<std::string_view> expected_kind = {});
void WriteJsonl(const std::filesystem::path& path, const ArtifactHeader& header,
                const std::vector<nlohmann::json>& rows);

std::string ReadTextFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, std::string_view text);

}  // namespace forensa

#endif  // FORENSA_JSONL_H_
