#pragma once
#include "supercms/grassmann.hpp"
#include "supercms/jet.hpp"
#include "supercms/quadrature.hpp"
#include "supercms/special.hpp"
#include "supercms/types.hpp"

#include <functional>
#include <span>
#include <vector>

namespace supercms {

//==============================================================================
// Recursion formulas: the interlacing-domain integral in ordinary space and
// the mixed bosonic/Grassmann step of the superspace models on the
// one-parameter family beta1 = 4/beta, beta2 = beta.

namespace detail {

//! One level of the ordinary recursion, self-normalized so Phi(x, 0) = 1.
//! The adjacent singular factors |x_m - x'_m|^a |x_{m+1} - x'_m|^a are
//! absorbed into the Gauss-Jacobi weight via the affine map onto [0,1]^(N-1),
//! which keeps the integrand jet-differentiable in x.
template <class S>
S phi_ordinary_impl(double beta, std::span<const S> x, std::span<const Cplx> k,
                    int nodes) {
  const int n = static_cast<int>(x.size());
  if (n == 0)
    return S{} + Cplx(1.0);
  if (n == 1)
    return sexp(x[0] * (kI * k[0]));

  const double alpha = beta / 2.0 - 1.0;
  const QuadratureRule rule = gauss_jacobi_rule(nodes, alpha);
  const int m = n - 1;

  S zero = x[0] * Cplx(0.0);
  S num = zero, den = zero;

  std::vector<int> idx(m, 0);
  std::vector<S> xp(m, zero);
  std::vector<Cplx> kin(k.begin(), k.end() - 1);
  for (;;) {
    double wgt = 1.0;
    for (int q = 0; q < m; ++q) {
      xp[q] = x[q] + (x[q + 1] - x[q]) * Cplx(rule.t[idx[q]]);
      wgt *= rule.w[idx[q]];
    }
    // smooth measure factors (interlacing fixes every sign)
    S meas = zero + Cplx(wgt);
    for (int q = 0; q < m; ++q)
      meas = meas * spow(x[q + 1] - x[q], 2.0 * alpha + 1.0);
    for (int q = 0; q < m; ++q)
      for (int p = q + 1; p < m; ++p)
        meas = meas * (xp[p] - xp[q]); // |Delta_{n-1}(x')|
    for (int q = 0; q < m; ++q)
      for (int p = 0; p < n; ++p) {
        if (p == q || p == q + 1)
          continue; // absorbed into the Jacobi weight
        meas = meas * spow(p > q ? x[p] - xp[q] : xp[q] - x[p], alpha);
      }

    S phase_arg = zero;
    for (int p = 0; p < n; ++p)
      phase_arg += x[p];
    for (int q = 0; q < m; ++q)
      phase_arg -= xp[q];
    const S phase = sexp(phase_arg * (kI * k[n - 1]));

    const S inner = phi_ordinary_impl<S>(beta, xp, kin, nodes);
    num += meas * phase * inner;
    den += meas;

    int j = 0;
    while (j < m && ++idx[j] == nodes) {
      idx[j] = 0;
      ++j;
    }
    if (j == m)
      break;
  }
  return num / den;
}

} // namespace detail

//==============================================================================
//! Matrix Bessel function Phi_N(x, k) by the recursion formula, with the
//! configured refinement check. Throws AccuracyError if doubling the node
//! count still moves the value by more than the target tolerance.
Cplx recurse_ordinary(double beta, int n, std::span<const double> x,
                      std::span<const double> k, const QuadratureConfig &cfg);

//! Normalization constant making Phi_N(x, 0) = 1; independent of the
//! reference point (checked in the tests, not assumed here).
double normalization_G(double beta, int n, std::span<const double> x,
                       const QuadratureConfig &cfg);

//==============================================================================
// Superspace recursion. Grassmann bilinears |xi_p|^2 are even, so inside the
// integrand they are represented by commuting nilpotent jet variables; the
// Berezin integral is the coefficient of their full product. The equivalence
// with the signed exterior-algebra route is covered by tests.

namespace detail {

//! (1 + delta)^e for a nilpotent delta (zero body), exact binomial series.
inline Jet pow1p(const Jet &delta, double e) {
  Jet acc = delta * Cplx(0.0) + Cplx(1.0);
  Jet term = acc;
  const int kmax = delta.total_cap();
  for (int k = 1; k <= kmax; ++k) {
    term = term * delta;
    term *= Cplx((e - k + 1) / k);
    if (term.all_zero())
      break;
    acc += term;
  }
  return acc;
}

//! Normalized second-set measure: the raw product with every factor divided
//! by its Grassmann-free part. This pins the fractional-power branches; the
//! leftover unimodular constant is fixed to one (validated by the closed-form
//! matches of the low-rank solutions).
Jet mu_f_normalized(double beta, Cplx c, std::span<const Jet> s2,
                    std::span<const Jet> s2p);

//! Mixed measure factor, principal branches (second-set bodies keep the
//! factors off the cut).
Jet mu_bf(double beta, Cplx c, std::span<const Jet> s1,
          std::span<const Jet> s1p, std::span<const Jet> s2,
          std::span<const Jet> s2p);

//! One superspace recursion step on jet-valued arguments. r1/r2 are the
//! spectral parameters; c is +-i.
Jet rho_super_jet(double beta, Cplx c, int k1, int k2, std::vector<Jet> s1,
                  std::vector<Jet> s2, std::span<const Cplx> r1,
                  std::span<const Cplx> r2, const QuadratureConfig &cfg,
                  int nodes);

} // namespace detail

//! Eigenfunction rho_{k1 k2}(s, r) of the superspace model on the family
//! beta1 = 4/beta, beta2 = beta, built by the recursion formula.
Cplx recurse_super(double beta, int k1, int k2, const Configuration &s,
                   const Configuration &r, const QuadratureConfig &cfg,
                   Cplx c = kI);

//! Alternative solution produced by the recursion at k1 = 0: the Berezin
//! integral of the second-set measure against Phi_{k2}. Uses the signed
//! exterior-algebra representation end to end.
Cplx alt_solution(double beta, int k2, std::span<const double> s2,
                  std::span<const double> r2, const QuadratureConfig &cfg,
                  Cplx c = kI);

//==============================================================================
//! Full-measure integral for the invariance identities:
//!   integral of mu_B mu_F mu_BF g(s1', s2') over the interlacing domain and
//!   the Grassmann pairs, on jet-valued outer arguments.
//! `gfn` receives the primed arguments (bosonic nodes, shifted second set).
Jet super_measure_integral(
    double beta, Cplx c, const std::vector<Jet> &s1, const std::vector<Jet> &s2,
    int nodes,
    const std::function<Jet(const std::vector<Jet> &, const std::vector<Jet> &)>
        &gfn);

} // namespace supercms
