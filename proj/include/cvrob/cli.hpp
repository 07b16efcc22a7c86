#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace cvrob {

struct RunConfig {
  int cutoff = 60;
  std::uint64_t seed = 1;
  std::string format = "json";  // json | csv
  std::map<std::string, double> tolerances{
      {"grid_inflation", 1e-3}, {"rel_gap", 1e-6}, {"tail", 1e-8}};
  std::map<std::string, int> budgets{{"cat_budget", 4}, {"nc_starts", 8}, {"ng_starts", 16}};

  // Throws InvalidArgument unless every tolerance is > 0, cutoff >= 16 and format is known.
  void validate() const;
  // Overlays keys from a JSON object: cutoff, seed, format, tolerances{..}, budgets{..}.
  void merge_json(const std::string& text);
  std::string canonical_json() const;
  // 64-bit FNV-1a of canonical_json(), hex encoded.
  std::string digest() const;
};

enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitUsage = 2, kExitTruncation = 3, kExitVerify = 4 };

// Entry point shared by the executable and tests; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cvrob
