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

#ifndef FORENSA_ERROR_H_
#define FORENSA_ERROR_H_

#include <stdexcept>
#include <string>

namespace forensa {

// Coarse classification used by the CLI to pick an exit code.
enum class ErrorCategory {
  kUsage,      // exit 1
  kData,       // exit 2
  kTransport,  // exit 3
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what)
      : Error(ErrorCategory::kData, what) {}
};

}  // namespace forensa

#endif  // FORENSA_ERROR_H_
