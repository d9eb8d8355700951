// Copyright 2026 The ldpq Authors
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

#ifndef LDPQ_JSON_IO_H_
#define LDPQ_JSON_IO_H_

#include <string>

#include "json.hpp"
#include "ldpq/core.h"

namespace ldpq {

// {"J": int, "masses": [..]}
Distribution DistributionFromJson(const nlohmann::json& j);
nlohmann::json DistributionToJson(const Distribution& dist);

// {"d": int, "J": int, "r": float, "rows": [[..], ..]}
QueryMatrix QueryMatrixFromJson(const nlohmann::json& j);
nlohmann::json QueryMatrixToJson(const QueryMatrix& A);

// Thrown for unreadable or unwritable files; parse errors inside a readable
// file surface as DomainError.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

nlohmann::json ReadJsonFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& contents);

Distribution LoadDistribution(const std::string& path);
QueryMatrix LoadQueryMatrix(const std::string& path);

}  // namespace ldpq

#endif  // LDPQ_JSON_IO_H_
