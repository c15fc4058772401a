#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace infeq::cli {

enum class Command { Solve, Trace, Certify, Helly, Dirichlet, EvalPoly, Riesz };

/// Throws InvalidInput for an unknown name.
Command parse_command(const std::string& name);
std::string to_string(Command command);

struct RunConfig {
  Command command = Command::Solve;
  std::string input;
  std::string output;
  double tol = 1e-8;
  std::optional<double> M;
  std::optional<std::size_t> r_max;
  std::optional<std::size_t> N;
  std::optional<int> iterations;
  std::uint64_t seed = 0;
};

enum ExitCode : int { kOk = 0, kInfeasible = 1, kInvalidInput = 2, kNumericalFailure = 3 };

/// Runs one command. The artifact is written to a sibling temp file and
/// renamed over `output`, so a failed run leaves no partial file. One summary
/// line goes to `out`, diagnostics to `err`.
///
///   solve      system -> min-norm result (q = 2 exact; otherwise truncated at --N)
///   trace      system -> CSV r,min_norm,error_bound,lower_bound,status (needs --r-max)
///   certify    system -> certificate and trace (needs --M)
///   helly      helly spec -> explicit solutions, lower bounds, trace
///   dirichlet  dirichlet spec -> Gram matrix and min-norm result
///   eval-poly  {"polynomial", "x"} -> value
///   riesz      {"system", "h"} -> ratio, or {"system"} -> sup search
///
/// Systems may be given as any of the system, helly or dirichlet schemas.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace infeq::cli
