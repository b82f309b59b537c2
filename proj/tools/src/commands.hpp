#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "loadbal/dist_sim.hpp"
#include "loadbal/generators.hpp"
#include "loadbal/instance.hpp"

namespace loadbal::cli {

enum ExitCode { kOk = 0, kError = 1, kInfeasible = 2 };

struct SolveRequest {
  std::string algo = "seq";  // seq, congest-unweighted, congest-weighted, local-weighted, backup
  int r = 2;
  bool oracle = false;
  std::int64_t enum_limit = 1'000'000;
  bool simulate = false;
  std::optional<Model> model;  // default: LOCAL for local-weighted, CONGEST otherwise
  int bandwidth_factor = 32;
  std::uint64_t seed = 1;
  std::vector<double> extra_norms;
  bool include_time = true;
};

/// Solves and returns the run report. Throws InputError / InfeasibleError.
nlohmann::ordered_json solve_report(const Instance& instance, const SolveRequest& request);

struct CheckResult {
  std::string check;
  bool pass = false;
  std::string detail;
  nlohmann::ordered_json witness;
};

/// Runs verifier checks ("validity", "no-short-aug-paths:K", "expansion:ALPHA",
/// "cost-reducing", "budget") against an artifact document.
std::vector<CheckResult> verify_artifact(const Instance& instance, const std::string& artifact_text,
                                         const std::vector<std::string>& checks);

/// Runs a bench suite and writes CSV rows to `out`.
void run_bench(const nlohmann::json& suite, std::ostream& out);

/// Parses a generator object {"name": .., "clients": .., ...}.
GeneratorSpec generator_from_json(const nlohmann::json& spec);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace loadbal::cli
