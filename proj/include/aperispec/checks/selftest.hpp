#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aperispec/io.hpp"

namespace aperispec {

struct SelftestOptions {
  std::uint64_t seed = 20240601;
  /// "metric" corrupts one alphabet metric entry before the alphabet group runs.
  std::string inject_fault;
};

struct SelftestGroup {
  std::string name;
  std::uint64_t seed = 0;
  std::size_t checks = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

struct SelftestReport {
  std::uint64_t seed = 0;
  std::vector<SelftestGroup> groups;
  bool passed() const;
  /// Deterministic: no timings, groups in fixed order.
  io::json to_json() const;
};

SelftestReport run_selftest(const SelftestOptions& opts = {});

}  // namespace aperispec
