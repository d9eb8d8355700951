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

#include "ldpq/json_io.h"

#include <fstream>
#include <sstream>

#include "ldpq/errors.h"

namespace ldpq {

using nlohmann::json;

Distribution DistributionFromJson(const json& j) {
  try {
    const int J = j.at("J").get<int>();
    auto masses = j.at("masses").get<std::vector<double>>();
    if (static_cast<int>(masses.size()) != J) {
      throw DomainError("\"J\" does not match the number of masses");
    }
    return Distribution::Create(std::move(masses));
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed distribution JSON: ") + e.what());
  }
}

json DistributionToJson(const Distribution& dist) {
  return json{{"J", dist.J()},
              {"masses", std::vector<double>(dist.masses().begin(),
                                             dist.masses().end())}};
}

QueryMatrix QueryMatrixFromJson(const json& j) {
  try {
    const int d = j.at("d").get<int>();
    const int J = j.at("J").get<int>();
    const double r = j.at("r").get<double>();
    const auto rows = j.at("rows").get<std::vector<std::vector<double>>>();
    if (static_cast<int>(rows.size()) != d) {
      throw DomainError("\"d\" does not match the number of rows");
    }
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != J) {
        throw DomainError("row length does not match \"J\"");
      }
    }
    return QueryMatrix::FromRows(rows, r);
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed query matrix JSON: ") + e.what());
  }
}

json QueryMatrixToJson(const QueryMatrix& A) {
  std::vector<std::vector<double>> rows(
      static_cast<std::size_t>(A.d()),
      std::vector<double>(static_cast<std::size_t>(A.J())));
  for (int k = 1; k <= A.d(); ++k) {
    for (int j = 1; j <= A.J(); ++j) rows[k - 1][j - 1] = A.entry(k, j);
  }
  return json{{"d", A.d()}, {"J", A.J()}, {"r", A.r()}, {"rows", rows}};
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw DomainError(path + ": " + e.what());
  }
}

void WriteTextFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << contents;
  if (!out) throw IoError("write failed for " + path);
}

Distribution LoadDistribution(const std::string& path) {
  return DistributionFromJson(ReadJsonFile(path));
}

QueryMatrix LoadQueryMatrix(const std::string& path) {
  return QueryMatrixFromJson(ReadJsonFile(path));
}

}  // namespace ldpq
