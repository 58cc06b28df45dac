#ifndef HOLOZERO_TOOLS_CLI_HPP
#define HOLOZERO_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace holozero::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kQuadratureFailure = 2,
  kNonInteger = 3,
  kUsage = 64,
};

struct BenchmarkRow {
  std::string method;  // "aaa" or "delves-lyness"
  int n = 0;
  double tolerance = 0.0;
  unsigned long long evaluations = 0;  // f'/f evaluations
  double max_zero_error = 0.0;         // +inf when the method failed
};

/// AAA on f'/f against Delves-Lyness moments for prod_{j=0}^{n} (z - a_j(n))
/// in the unit square, one row per method and tolerance.
std::vector<BenchmarkRow> run_benchmark(int n, const std::vector<double>& tolerances);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace holozero::cli

#endif  // HOLOZERO_TOOLS_CLI_HPP
