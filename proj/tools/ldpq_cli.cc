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

// Command-line front end: `ldpq run` executes a Monte-Carlo experiment and
// `ldpq audit` runs an exact privacy audit.
//
// Exit codes: 0 success, 2 configuration error, 3 bound-check or audit
// failure, 4 I/O error, 1 any other runtime failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ldpq/errors.h"
#include "ldpq/harness.h"
#include "ldpq/json_io.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCheckFailed = 3;
constexpr int kExitIo = 4;

struct RunFlags {
  std::string config_path;
  std::string protocol;
  std::size_t n = 0;
  int J = 0;
  int d = 0;
  double r = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  std::string dist;
  std::string matrix;
  std::string strategy;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::string out;
};

template <typename T>
void Override(const CLI::App& app, const std::string& flag, const T& value,
              T& target) {
  if (app.count(flag) > 0) target = value;
}

ldpq::ExperimentConfig ResolveConfig(const CLI::App& app, const RunFlags& f) {
  ldpq::ExperimentConfig c;
  if (!f.config_path.empty()) {
    c = ldpq::ConfigFromJson(ldpq::ReadJsonFile(f.config_path));
  }
  if (app.count("--protocol") > 0) c.protocol = ldpq::ParseProtocol(f.protocol);
  Override(app, "--n", f.n, c.n);
  Override(app, "--J", f.J, c.J);
  Override(app, "--d", f.d, c.d);
  Override(app, "--r", f.r, c.r);
  Override(app, "--epsilon", f.epsilon, c.epsilon);
  if (app.count("--delta") > 0) c.delta = f.delta;
  Override(app, "--dist", f.dist, c.distribution);
  Override(app, "--matrix", f.matrix, c.query_matrix);
  Override(app, "--strategy", f.strategy, c.strategy);
  Override(app, "--trials", f.trials, c.trials);
  Override(app, "--seed", f.seed, c.seed);
  Override(app, "--out", f.out, c.output);
  return c;
}

int RunCommand(const CLI::App& app, const RunFlags& flags) {
  const ldpq::ExperimentResult result =
      ldpq::RunExperiment(ResolveConfig(app, flags));
  if (!result.config.output.empty()) ldpq::WriteExperimentOutputs(result);
  std::cout << ldpq::ResultSummaryJson(result).dump(2) << "\n";
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  const bool ok = result.bound_satisfied && result.bound_vs_truth_satisfied;
  return ok ? kExitOk : kExitCheckFailed;
}

int AuditCommand(const std::string& kind, const ldpq::AuditParams& params) {
  const ldpq::AuditReport report =
      ldpq::RunAudit(ldpq::ParseAuditKind(kind), params);
  std::cout << ldpq::AuditReportJson(report).dump(2) << "\n";
  return report.pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Private linear queries under local differential privacy"};
  app.require_subcommand(1);

  RunFlags run;
  CLI::App* run_cmd = app.add_subcommand("run", "run a Monte-Carlo experiment");
  run_cmd->add_option("--config", run.config_path,
                      "JSON config, or a summary written by a previous run");
  run_cmd->add_option("--protocol", run.protocol,
                      "gauss | rejsamp | phr | adsamp | baseline");
  run_cmd->add_option("--n", run.n, "number of users");
  run_cmd->add_option("--J", run.J, "universe size");
  run_cmd->add_option("--d", run.d, "number of queries");
  run_cmd->add_option("--r", run.r, "query norm bound");
  run_cmd->add_option("--epsilon", run.epsilon, "privacy parameter");
  run_cmd->add_option("--delta", run.delta, "approximate-DP parameter (gauss)");
  run_cmd->add_option("--dist", run.dist,
                      "uniform | zipf[:s] | point:j | two-spike | file:PATH");
  run_cmd->add_option("--matrix", run.matrix,
                      "identity | random-unit-columns | file:PATH");
  run_cmd->add_option("--strategy", run.strategy,
                      "constant | random | tracking-adversary");
  run_cmd->add_option("--trials", run.trials, "Monte-Carlo trials");
  run_cmd->add_option("--seed", run.seed, "master seed");
  run_cmd->add_option("--out", run.out, "CSV output path");

  std::string kind;
  ldpq::AuditParams audit;
  CLI::App* audit_cmd = app.add_subcommand("audit", "exact privacy audit");
  audit_cmd->add_option("--kind", kind, "adaptive-rr | hadamard-rr | rejsamp-bit")
      ->required();
  audit_cmd->add_option("--epsilon", audit.epsilon, "privacy parameter");
  audit_cmd->add_option("--r", audit.r, "query norm bound");
  audit_cmd->add_option("--J", audit.J, "universe size");
  audit_cmd->add_option("--n", audit.n, "user count (rejsamp-bit noise scale)");
  audit_cmd->add_option("--queries", audit.queries, "random queries (adaptive-rr)");
  audit_cmd->add_option("--seed", audit.seed, "query seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (run_cmd->parsed()) return RunCommand(*run_cmd, run);
    return AuditCommand(kind, audit);
  } catch (const ldpq::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ldpq::DomainError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
