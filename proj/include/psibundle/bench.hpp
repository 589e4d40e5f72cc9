#pragma once

// Instance catalog, dependency-ordered suite execution and reporting.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace psb {

enum class CheckStatus { pass, fail, skipped };
std::string to_string(CheckStatus s);

struct CheckRecord {
  std::string id;      // "<suite>.<name>"
  std::string anchor;  // the identity being checked
  CheckStatus status = CheckStatus::pass;
  std::optional<std::string> counterexample;
  long long millis = 0;
  std::size_t checked = 0;  // number of individual comparisons
  std::vector<std::string> notes;
};

struct SuiteConfig {
  std::string instance = "cylinder";
  std::string suite = "all";
  int max_degree = -1;  // P-degree window (y-degree for the cylinder); -1 for the instance default
  int x_degree = -1;    // |x-degree| window; -1 for the instance default
  int c_index = -1;     // C-index window; -1 for the instance default
  int numeric_q = 0;    // number of rational q samples in the pre-pass
  std::uint64_t seed = 1;
  std::string mutate = "none";
  bool timings = true;  // false zeroes millis so reports are byte-identical
  unsigned threads = 0; // 0 for hardware concurrency
};

struct Report {
  std::string instance;
  std::vector<std::pair<std::string, int>> windows;
  std::vector<std::string> conventions;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;

  bool ok() const;
  const CheckRecord* find(const std::string& id) const;
  std::string json() const;
  std::string text() const;
};

const std::vector<std::string>& instance_names();
const std::vector<std::string>& suite_names();
const std::vector<std::string>& mutation_names();

/// Runs the selected suites of one instance. Throws ConfigInvalid for an
/// unknown instance, suite or mutation, or windows outside safe bounds.
Report run_suite(const SuiteConfig& cfg);

}  // namespace psb
