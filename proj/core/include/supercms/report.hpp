#pragma once
#include "supercms/types.hpp"

#include <string>
#include <vector>

namespace supercms {

//==============================================================================
// Machine-readable check reports. No timestamps anywhere: identical inputs
// must produce byte-identical output.

struct CheckResult {
  std::string name;
  std::string model;
  std::string point;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (const auto &c : checks)
      if (!c.pass)
        return false;
    return true;
  }
};

//! Canonical ordering: by check name, then by insertion (point) order.
void canonicalize(SuiteReport &report);

//! Deterministic JSON rendering of a report.
std::string to_json(const SuiteReport &report);

//! Combined rendering for several suites.
std::string to_json(const std::vector<SuiteReport> &reports);

std::string render_point(const Configuration &pt);

} // namespace supercms
