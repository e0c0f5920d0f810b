#pragma once

#include <string>
#include <vector>

namespace schiffer {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyReport {
  std::string suite;
  std::vector<CriterionResult> results;
  double seconds = 0.0;

  bool pass() const;
};

/// Suite names accepted by run_verify, "all" last.
std::vector<std::string> verify_suites();

/// Runs a named suite. Throws ContractError for an unknown name.
VerifyReport run_verify(const std::string& suite);

/// One line: "PASS [ 1] title: detail (0.012 s)".
std::string format_result(const CriterionResult& r);

}  // namespace schiffer
