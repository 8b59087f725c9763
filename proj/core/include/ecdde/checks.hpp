#ifndef ECDDE_CHECKS_HPP
#define ECDDE_CHECKS_HPP

#include <string>
#include <vector>

namespace ecdde {

/// Outcome of one acceptance check.
struct CheckResult {
  int criterion = 0;
  std::string name;
  bool pass = false;
  bool informational = false;  ///< reported but not counted
  double seconds = 0.0;
  std::string detail;
};

/// Runs the acceptance suite.  criterion = 0 runs everything including the
/// overall-runtime check (#12); otherwise only the named criterion.
std::vector<CheckResult> run_acceptance(int criterion = 0);

/// One-line JSON rendering for the check-all stream.
std::string to_json_line(const CheckResult& r);

/// True when every non-informational result passed.
bool all_passed(const std::vector<CheckResult>& results);

}  // namespace ecdde

#endif  // ECDDE_CHECKS_HPP
