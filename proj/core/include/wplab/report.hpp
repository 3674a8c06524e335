#pragma once

#include <map>
#include <string>

namespace wplab {

/// Outcome of one numerical verification.
///
/// `measured` is the quantity taken from the computed or sampled field and
/// `bound` the value it is compared against; `margin` is bound - measured
/// unless the check documents otherwise (fitted-constant checks report the
/// fitted constant there).  When `hypothesis_ok` is false the premises of
/// the underlying estimate do not hold for the input, `passed` is
/// meaningless and the report is excluded from aggregation.
struct CheckReport
{
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  bool hypothesis_ok = true;
  std::map<std::string, double> details;
  std::map<std::string, std::string> notes;

  /// "pass", "fail" or "hypothesis-failed".
  std::string status() const
  {
    if (!hypothesis_ok)
      return "hypothesis-failed";
    return passed ? "pass" : "fail";
  }
};

}  // namespace wplab
