#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stablam/gw_trees.hpp"

namespace stablam::cli {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Exact oracles plus small sampler-law checks. A user weight spec, when
/// given, is validated first and then joins the identity and law checks.
std::vector<CheckResult> run_selftest(const std::optional<WeightSpec>& extra, std::uint64_t seed);

}  // namespace stablam::cli
