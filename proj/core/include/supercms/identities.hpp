#pragma once
#include "supercms/jet.hpp"
#include "supercms/operators.hpp"
#include "supercms/quadrature.hpp"
#include "supercms/types.hpp"

#include <span>
#include <utility>

namespace supercms {

//==============================================================================
// Numerical verification of the measure identities behind the superspace
// recursion: the commutation of the radial operator with the Grassmann
// kernel, the two intertwining identities of the full measure, and the
// cancellation identity for the mixed-measure log-derivatives.

//! Both routes of the commutation identity for the second-set kernel:
//! left, the radial operator applied to the Berezin integral as a function of
//! s2; right, the Berezin integral of the kernel times the operator applied
//! under the integral. `f` must be symmetric and analytic.
ResidualReport check_commut(double beta, int k2, const AnalyticFn &f,
                            std::span<const double> s2, double tolerance = 1e-9,
                            Cplx c = kI);

//! The momentum (first) and Laplace (second) intertwining identities of the
//! full recursion measure, evaluated by outer differentiation under the
//! integral versus the primed-variable operator inside.
std::pair<ResidualReport, ResidualReport>
check_invariance(double beta, int k1, int k2, const AnalyticFn &f,
                 const Configuration &s, const QuadratureConfig &cfg,
                 double tol_momentum = 1e-8, double tol_laplace = 1e-6,
                 Cplx c = kI);

//! The log-derivative cancellation identity of the mixed measure factor:
//! the two printed coefficient sums against the assembly from the
//! second-order operators and squared log-derivatives. `s` holds the outer
//! configuration (k1, k2), `sp` the primed one (k1-1, k2) at independent
//! body values.
ResidualReport check_B9(double beta, const Configuration &s,
                        const Configuration &sp, double tolerance = 1e-9,
                        Cplx c = kI);

} // namespace supercms
