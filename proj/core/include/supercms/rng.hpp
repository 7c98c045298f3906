#pragma once
#include "supercms/types.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace supercms {

//==============================================================================
//! Deterministic random source. std::mt19937_64 has a pinned algorithm, and
//! the [0,1) mapping below is explicit, so identical seeds give bit-identical
//! streams on every platform (report reproducibility depends on this).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  int uniform_int(int lo, int hi) { // inclusive bounds
    return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  //! Strictly increasing coordinates in [lo, hi] with pairwise gaps >= min_gap.
  std::vector<double> chamber(int n, double lo, double hi, double min_gap) {
    if (n <= 0)
      return {};
    for (int attempt = 0; attempt < 1000; ++attempt) {
      std::vector<double> v(n);
      for (auto &x : v)
        x = uniform(lo, hi);
      std::sort(v.begin(), v.end());
      bool ok = true;
      for (int i = 1; i < n; ++i)
        if (v[i] - v[i - 1] < min_gap)
          ok = false;
      if (ok)
        return v;
    }
    throw AccuracyError("rng: could not sample a well-separated chamber point");
  }

private:
  std::mt19937_64 gen_;
};

} // namespace supercms
