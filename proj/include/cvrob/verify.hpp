#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cvrob {

enum class CheckStatus { kPass, kFail, kIndeterminate };
std::string to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::kPass;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;

  int count(CheckStatus s) const;
  bool passed() const { return count(CheckStatus::kFail) == 0; }
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  int cutoff = 60;
};

SuiteResult verify_duality(const VerifyOptions& opts);
SuiteResult verify_monotonicity(const VerifyOptions& opts);
SuiteResult verify_multiplicativity(const VerifyOptions& opts);
SuiteResult verify_discrimination(const VerifyOptions& opts);
SuiteResult verify_faithfulness(const VerifyOptions& opts);
SuiteResult verify_convexity(const VerifyOptions& opts);

std::vector<std::string> suite_names();  // excludes "all"
// "all" expands to every suite in suite_names() order.
std::vector<SuiteResult> run_suites(const std::string& name, const VerifyOptions& opts);

}  // namespace cvrob
