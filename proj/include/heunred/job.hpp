#ifndef HEUNRED_JOB_HPP
#define HEUNRED_JOB_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "heunred/evaluator.hpp"

namespace heunred {

inline constexpr const char* kVersion = "0.1.0";

enum class Command { reduce, eval, verify, sweep };

/**
 * One CLI job. Exit-code contract: 0 success, 1 usage/config error,
 * 2 no admissible solution (reduce/eval/sweep) or verification failure
 * (verify, max residual > 1e-6).
 */
struct JobConfig {
  Command command = Command::reduce;
  ExpansionFamily family = ExpansionFamily::A;
  int N = 0;

  // free parameters; which ones are required depends on the family
  // (A: delta/epsilon/alpha, C: gamma/epsilon/alpha, D: delta/alpha)
  double gamma = 0.0, delta = 0.0, epsilon = 0.0, alpha = 0.0;
  bool has_gamma = false, has_delta = false, has_epsilon = false,
       has_alpha = false;

  double z_start = 0.1, z_stop = 0.9;
  int z_count = 9;

  std::string format = "json";  // json | csv
  std::string out;              // empty = stdout
  std::uint64_t seed = 0;
  int root_index = 0;
  int starts = 64;
  int nmax = 200;
  double tol_series = 1e-15;
  double tol_root = 1e-9;  // accepted for interface completeness

  // sweep grid over one free parameter (delta/epsilon/alpha/gamma)
  std::string sweep_param;
  double sweep_start = 0.0, sweep_stop = 0.0;
  int sweep_count = 0;
};

struct JobReport {
  std::vector<std::pair<std::string, std::string>> meta;  // ordered echo
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> diagnostics;
  int exit_code = 0;
};

/// throws std::invalid_argument naming the offending field
void validate_config(const JobConfig& cfg);

JobReport run_job(const JobConfig& cfg);

/// CSV: header row, comma delimiter, %.17g numbers, LF line endings.
void write_csv(const JobReport& rep, std::ostream& os);
/// JSON: {"meta": {...}, "rows": [...]} with diagnostics under meta.
void write_json(const JobReport& rep, std::ostream& os);

/// parse helpers shared with the CLI front end
Command parse_command(const std::string& s);
ExpansionFamily parse_family(const std::string& s);

}  // namespace heunred

#endif
