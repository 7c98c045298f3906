#pragma once
#include "supercms/types.hpp"

#include <vector>

namespace supercms {

//==============================================================================
//! Gauss-Jacobi rule on [0,1] for the weight (t(1-t))^alpha, alpha > -1.
//! The singular endpoint factors of the recursion measures are absorbed into
//! this weight; the remaining integrand must be smooth.
struct QuadratureRule {
  std::vector<double> t; // nodes in (0,1)
  std::vector<double> w; // weights, include the Jacobi weight factor
};

//! Nodes/weights via Golub-Welsch on the symmetric Jacobi matrix. Cached.
QuadratureRule gauss_jacobi_rule(int n, double alpha);

//! Recursion quadrature parameters. `jacobi_alpha` is beta/2 - 1 for the
//! ordinary recursion and 2/beta - 1 for the bosonic superspace sector.
struct QuadratureConfig {
  int nodes = 48;
  int refine_levels = 2;
  double tolerance = 1e-9;

  void validate() const {
    if (nodes < 4)
      throw UsageError("quadrature: need at least 4 nodes per interval");
    if (refine_levels < 1 || refine_levels > 6)
      throw UsageError("quadrature: refinement levels out of range");
  }
};

} // namespace supercms
