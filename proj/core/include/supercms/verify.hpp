#pragma once
#include "supercms/report.hpp"
#include "supercms/types.hpp"

#include <cstdint>
#include <string>

namespace supercms {

//==============================================================================
// Verification suites shared by the command line tool and the acceptance run.

struct VerifyOptions {
  std::uint64_t seed = 7;
  double beta1 = 1.0;
  double beta2 = 3.0;
  int k1 = 2;
  int k2 = 1;
  int nodes = 32;
  int threads = 1; // worker cap, from CMS_SUPER_THREADS unless overridden
};

SuiteReport run_eigen_suite(const VerifyOptions &opt);
SuiteReport run_identities_suite(const VerifyOptions &opt);
SuiteReport run_recursion_suite(const VerifyOptions &opt);
SuiteReport run_physics_suite(const VerifyOptions &opt);

//! Every suite above, in a fixed order.
std::vector<SuiteReport> run_all_suites(const VerifyOptions &opt);

//! Worker count: explicit option, else the CMS_SUPER_THREADS variable, else 1.
int resolve_thread_count(int requested);

} // namespace supercms
