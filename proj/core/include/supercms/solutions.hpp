#pragma once
#include "supercms/jet.hpp"
#include "supercms/special.hpp"
#include "supercms/types.hpp"

#include <cmath>
#include <span>

namespace supercms {

//==============================================================================
// Closed-form eigenfunctions. All evaluators are generic in the scalar type,
// so the operator machinery can differentiate straight through them.

//! Two-particle radial eigenfunction at spectral scaling beta*r/2:
//! exp(i beta (s1+s2)(r1+r2)/4) chi^[beta+1](beta z / 4), z = (s1-s2)(r1-r2).
template <class S>
S phi2(double beta, std::span<const S> s, std::span<const S> r) {
  if (s.size() != 2 || r.size() != 2)
    throw DimensionError("phi2: needs two coordinates and two spectral values");
  const S z = (s[0] - s[1]) * (r[0] - r[1]);
  return detail::sexp(Cplx(0.0, beta / 4.0) * (s[0] + s[1]) * (r[0] + r[1])) *
         spherical_chi(beta, z * Cplx(beta / 4.0));
}

//==============================================================================
//! The (1,1) eigenfunction for general positive (beta1, beta2), beta1 != beta2.
//! The two branches pair the exponential sign with the Hankel kind; both
//! solve the same second-order equation.
enum class SolutionBranch { plus, minus };

struct Rho11Parameters {
  double beta1, beta2;
  double nu() const { return 0.5 * std::sqrt(beta1 * beta2) + 0.5; }
};

template <class S>
S rho11_general(double beta1, double beta2, SolutionBranch branch, const S &s1,
                const S &s2, const S &r1, const S &r2) {
  const double p = std::sqrt(beta1), q = std::sqrt(beta2);
  if (std::abs(p - q) < 1e-12)
    throw DegenerateParametersError(
        "rho11_general: beta1 = beta2 is outside this representation");
  const double nu = 0.5 * p * q + 0.5;
  const Cplx sgn = (branch == SolutionBranch::plus) ? Cplx(1.0) : Cplx(-1.0);
  const S arg =
      (s1 * Cplx(p) - kI * s2 * Cplx(q)) * (r1 - kI * r2) * (sgn * kI / (p - q));
  const S z = (r1 * Cplx(q) - kI * r2 * Cplx(p)) * (s1 - kI * s2) * Cplx(1.0 / (q - p));
  const int kind = (branch == SolutionBranch::plus) ? 2 : 1;
  return detail::sexp(arg) *
         Cplx(std::pow(std::abs(p - q), 0.5 * p * q)) *
         detail::spow(z, nu) * hankel(kind, nu, z);
}

//==============================================================================
//! The (1,1) solution on the one-parameter family beta1 = 4/beta, beta2 = beta,
//! evaluated at spectral scaling (r1, beta*r2/2):
//!   exp(i r1 s1 + i beta r2 s2 / 2) [ (beta/2 - 1)
//!                                     + (i beta/2)(i s2 - s1)(r1 - i r2) ].
template <class S>
S rho11_hyperbola(double beta, const S &s1, const S &s2, const S &r1,
                  const S &r2) {
  const S bracket = (kI * s2 - s1) * (r1 - kI * r2) * Cplx(0.0, beta / 2.0) +
                    Cplx(beta / 2.0 - 1.0);
  return detail::sexp(kI * (r1 * s1) + Cplx(0.0, beta / 2.0) * (r2 * s2)) * bracket;
}

//==============================================================================
//! The (1,2) solution on the same family, at spectral scaling (r1, beta*r/2):
//!   exp(i r1 x + i beta (p1+p2)(y1+y2)/4) *
//!   { (beta/2-1) [ (beta-1 + z d/dz - i beta R S) chi ]
//!     - (beta^2/4) (r1 - i p1)(x - i y1)(r1 - i p2)(x - i y2) chi },
//! with z = (y1-y2)(p1-p2), chi = chi^[beta+1](beta z/4),
//! R = r1 - i(p1+p2)/2 and S = x - i(y1+y2)/2.
template <class S>
S rho12_hyperbola(double beta, const S &x, const S &y1, const S &y2,
                  const S &r1, const S &p1, const S &p2) {
  const S z = (y1 - y2) * (p1 - p2);
  const S w = z * Cplx(beta / 4.0);
  const S chi = spherical_chi(beta, w);
  const S zddz = spherical_chi_wprime(beta, w); // = w chi'(w) = z d/dz chi
  const S R = r1 - (p1 + p2) * Cplx(0.0, 0.5);
  const S Sv = x - (y1 + y2) * Cplx(0.0, 0.5);
  const S tail =
      (r1 - kI * p1) * (x - kI * y1) * (r1 - kI * p2) * (x - kI * y2) * chi *
      Cplx(beta * beta / 4.0);
  const S head = (chi * Cplx(beta - 1.0) + zddz - R * Sv * chi * Cplx(0.0, beta)) *
                 Cplx(beta / 2.0 - 1.0);
  return detail::sexp(kI * (r1 * x) +
                      (p1 + p2) * (y1 + y2) * Cplx(0.0, beta / 4.0)) *
         (head - tail);
}

//==============================================================================
//! The same (1,2) solution built by applying the first-order differential
//! operator produced by the Grassmann integrations to phi2, via jets:
//!   rho12 = exp(i r1 x) * u1 u2 { prod_q [ (beta/2-1)/u_q + i beta r1/2
//!                                          - i d/dy_q ]
//!            + (beta/2)(beta/2-1)/(u1 u2)
//!            + (beta/2) (d/dy1 - d/dy2) / (y1 - y2) } Phi2(y, beta p/2),
//! with u_l = i y_l - x.
Cplx rho12_via_L(double beta, Cplx x, Cplx y1, Cplx y2, Cplx r1, Cplx p1,
                 Cplx p2);

//==============================================================================
// Descriptor used by reports and the CLI.
struct ClosedSolution {
  enum class Kind {
    plane_wave,
    phi2,
    rho11_general_plus,
    rho11_general_minus,
    rho11_hyperbola,
    rho12_hyperbola,
    rho12_via_L
  };
  Kind kind;
  double beta = 0.0, beta1 = 0.0, beta2 = 0.0;
};

} // namespace supercms
