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

#ifndef LDPQ_HARNESS_H_
#define LDPQ_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ldpq/core.h"
#include "ldpq/errors.h"
#include "ldpq/protocols.h"

namespace ldpq {

enum class Protocol { kGauss, kRejSamp, kPhr, kAdSamp, kBaseline };

std::string ProtocolName(Protocol p);
Protocol ParseProtocol(const std::string& name);

// Invalid or incomplete experiment configuration.
class ConfigError : public DomainError {
 public:
  explicit ConfigError(const std::string& what) : DomainError(what) {}
};

struct ExperimentConfig {
  Protocol protocol = Protocol::kGauss;
  std::size_t n = 0;
  int J = 0;
  int d = 0;  // identity matrix: 0 means d = J
  double r = 1.0;
  double epsilon = 0.0;
  std::optional<double> delta;  // gauss only
  // uniform | zipf[:s] | point:j | two-spike | file:PATH
  std::string distribution = "uniform";
  // identity | random-unit-columns | file:PATH
  std::string query_matrix = "identity";
  // constant | random | tracking-adversary (adsamp only)
  std::string strategy = "tracking-adversary";
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::string output;  // CSV path; the JSON summary goes next to it

  // Throws ConfigError. Also resolves d for the identity matrix.
  void Validate();
};

nlohmann::json ConfigToJson(const ExperimentConfig& config);
// Accepts a bare config object or an experiment summary with a "config" key.
ExperimentConfig ConfigFromJson(const nlohmann::json& j);

// Instance construction from the named families. Instance randomness (spike
// positions, random columns) comes from the instance stream of config.seed.
Distribution BuildDistribution(const ExperimentConfig& config);
QueryMatrix BuildQueryMatrix(const ExperimentConfig& config);

struct TheoryBound {
  double value = 0.0;        // bound on the error the theorem controls, capped
  double vs_truth = 0.0;     // offline protocols: value + r / sqrt(n), capped
  std::string metric;        // l2_vs_phat | l2_vs_p | linf
};

// Theorem bound for gauss, rejsamp, phr and adsamp (natural logs). Every bound
// is capped at r (at 1 for phr). ln d in the adaptive bound is taken as
// ln(2d).
TheoryBound TheoreticalBound(const ExperimentConfig& config);

struct TrialRecord {
  std::size_t trial = 0;
  double l2_vs_p = 0.0;
  double l2_vs_phat = 0.0;
  double linf = 0.0;  // vs p
  std::size_t n_hat = 0;
  bool projected = false;
  double gap = 0.0;
  bool regime_warning = false;
  bool gap_exceeded = false;
};

struct MetricSummary {
  double mean = 0.0;
  double stddev = 0.0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialRecord> trials;
  MetricSummary l2_vs_p;
  MetricSummary l2_vs_phat;
  MetricSummary linf;
  TheoryBound bound;
  double checked_mean = 0.0;  // mean of bound.metric
  bool bound_satisfied = false;
  // Offline protocols: mean l2_vs_p against bound.vs_truth.
  bool bound_vs_truth_satisfied = false;
  std::vector<std::string> warnings;
  double n_hat_mean = 0.0;
  std::size_t n_hat_min = 0;
  std::size_t n_hat_max = 0;
  nlohmann::json thresholds;
  double wall_clock_seconds = 0.0;
};

// Trial t uses seed DeriveSeed(config.seed, t); trials run on an OpenMP pool
// and are collected by index, so scheduling cannot change the output.
ExperimentResult RunExperiment(ExperimentConfig config);

// Columns: trial,l2_vs_p,l2_vs_phat,linf,n_hat,projected,gap
std::string ResultCsv(const ExperimentResult& result);
nlohmann::json ResultSummaryJson(const ExperimentResult& result);
std::string SummaryPathFor(const std::string& csv_path);
// Writes the CSV to config.output and the summary next to it. IoError on
// failure.
void WriteExperimentOutputs(const ExperimentResult& result);

// ---------------------------------------------------------------------------

enum class AuditKind { kAdaptiveRr, kHadamardRr, kRejSampBit };

AuditKind ParseAuditKind(const std::string& name);
std::string AuditKindName(AuditKind kind);

struct AuditParams {
  double epsilon = 1.0;
  double r = 1.0;
  int J = 8;
  std::size_t n = 1000;  // rejsamp-bit: sets the noise scale
  int queries = 20;      // adaptive-rr: random queries audited
  std::uint64_t seed = 0;
};

struct AuditReport {
  AuditKind kind;
  bool pass = false;
  double measured = 0.0;  // max privacy loss found
  double epsilon = 0.0;
  nlohmann::json details;
};

AuditReport RunAudit(AuditKind kind, const AuditParams& params);
nlohmann::json AuditReportJson(const AuditReport& report);

}  // namespace ldpq

#endif  // LDPQ_HARNESS_H_
