#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sdlab {

struct CheckResult {
  std::string suite;
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

// Runs a property suite (one of: all, dec, dirac, reduction, fluid,
// systems). Tolerances are multiplied by tol_scale. Throws ConfigError for
// an unknown suite name. Results come back sorted by suite then name.
std::vector<CheckResult> run_checks(const std::string& suite, std::uint64_t seed,
                                    double tol_scale = 1.0);

}  // namespace sdlab
