#pragma once

#include <string>
#include <utility>
#include <vector>

namespace sps {

enum class CheckStatus { Pass, Fail, ReportOnly };

// One verified statement: an identity or inequality with its measured values.
// Hard identities may Fail; inequality checks that depend on empirical
// constants are ReportOnly and never fail the suite.
struct CheckReport {
  std::string check_id;
  CheckStatus status = CheckStatus::Pass;
  std::vector<std::pair<std::string, double>> measured;
  double tolerance = 0.0;
  std::string anchor;  // the identity or condition being checked, in math form

  bool passed() const { return status != CheckStatus::Fail; }
};

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::ReportOnly:
      return "report-only";
  }
  return "?";
}

}  // namespace sps
