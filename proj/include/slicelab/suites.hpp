#ifndef SLICELAB_SUITES_HPP
#define SLICELAB_SUITES_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slicelab/liecore.hpp"

namespace slicelab::suites {

struct Config {
  std::optional<std::string> algebra;    // "a1" or "a2"; both when unset
  std::optional<std::vector<int>> partition;
  std::uint64_t seed = 1;
  std::size_t samples = 20;

  /// Throws MathError on an unknown algebra, a bad partition or zero samples.
  void validate() const;
};

using Witness = std::map<std::string, std::string>;

struct CheckResult {
  std::string name;
  bool passed = false;
  Witness witness;  // inputs and outputs of the first failing sample
};

struct SuiteReport {
  std::string suite;
  Config config;
  std::vector<CheckResult> checks;  // sorted by name

  bool passed() const;
  const CheckResult* find(const std::string& name) const;
};

/// "liecore", "slodowy", "poisson", "wonderful", "slices" or "all".
SuiteReport run_suite(const std::string& name, const Config& config);

/// Lie-core checks on a given algebra (used with corrupted fixtures too).
std::vector<CheckResult> liecore_checks(const lie::LieAlgebra& alg, const Config& config);

/// JSON with "schema": 1, rationals as "p/q", checks in name order.
std::string to_json(const SuiteReport& report);

const std::vector<std::string>& suite_names();

}  // namespace slicelab::suites

#endif  // SLICELAB_SUITES_HPP
