#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace jetinv {

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  /// Informational lines (corrected forms, controls) do not decide the exit code.
  bool counted = true;
  double seconds = 0;
  std::string detail;
};

struct VerifyOptions {
  int det_points = 100;
  std::uint64_t seed = 1;
};

/// weights, absolute, generators, derivations, commutators, syzygies, determinants.
const std::vector<std::string>& suite_names();

/// Runs one suite ("all" runs every suite). Independent checks run concurrently;
/// results come back in a fixed order.
std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opts = {});

}  // namespace jetinv
