#pragma once
#include "supercms/jet.hpp"
#include "supercms/types.hpp"

#include <cmath>

namespace supercms {

//==============================================================================
// Special functions on complex arguments and on jets. Power series only:
// every argument used by the models is O(1..10), so no asymptotic branch.

namespace detail {
inline Cplx spow(const Cplx &z, double e) { return std::pow(z, Cplx(e)); }
inline Jet spow(const Jet &z, double e) { return pow(z, e); }
inline Cplx sexp(const Cplx &z) { return std::exp(z); }
inline Jet sexp(const Jet &z) { return exp(z); }
inline Cplx ssqrt(const Cplx &z) { return std::sqrt(z); }
inline Jet ssqrt(const Jet &z) { return sqrt(z); }
} // namespace detail

inline double gamma_fn(double x) { return std::tgamma(x); }

inline constexpr double kBesselArgLimit = 20.0;
inline constexpr int kBesselMaxTerms = 400;

//! Bessel function J_nu(z), power series, truncated at 1e-16 relative.
template <class S> S bessel_j(double nu, const S &z) {
  if (std::abs(body(z)) > kBesselArgLimit)
    throw AccuracyError("bessel_j: |z| beyond supported series range");
  if (nu < 0.0 && std::abs(nu - std::round(nu)) < 1e-13) {
    // J_{-n} = (-1)^n J_n
    const int n = static_cast<int>(std::llround(-nu));
    S v = bessel_j(-nu, z);
    return (n % 2 == 0) ? v : S(-v);
  }
  const S q = z * z * Cplx(-0.25);
  S term = detail::spow(z * Cplx(0.5), nu) * Cplx(1.0 / gamma_fn(nu + 1.0));
  S sum = term;
  for (int j = 0; j < kBesselMaxTerms; ++j) {
    term = term * q * Cplx(1.0 / ((j + 1.0) * (nu + j + 1.0)));
    sum += term;
    if (std::abs(body(term)) <= 1e-16 * (std::abs(body(sum)) + 1e-300))
      return sum;
  }
  throw AccuracyError("bessel_j: series did not converge");
}

//==============================================================================
//! Hankel functions H^(1)/H^(2). Half-integer orders use the closed forms via
//! the three-term recurrence; other non-integer orders go through
//! Y_nu = (J_nu cos(nu pi) - J_{-nu}) / sin(nu pi).
template <class S> S hankel(int kind, double nu, const S &z) {
  if (kind != 1 && kind != 2)
    throw UsageError("hankel: kind must be 1 or 2");
  if (body(z) == Cplx{})
    throw DomainError("hankel: z = 0");

  const double two_nu = 2.0 * nu;
  const bool half_integer =
      std::abs(two_nu - std::round(two_nu)) < 1e-12 &&
      (static_cast<long long>(std::llround(two_nu)) % 2 != 0);

  if (half_integer && nu >= -0.5) {
    const Cplx is = (kind == 1) ? kI : -kI;
    S pref = detail::ssqrt(Cplx(2.0 / kPi) / z) * detail::sexp(is * z);
    S hm = pref;              // H_{-1/2}
    S hp = pref * (-is);      // H_{+1/2}
    if (std::abs(nu + 0.5) < 1e-12)
      return hm;
    double mu = 0.5;
    S cur = hp, prev = hm;
    while (mu + 0.5 < nu + 1e-9) {
      S next = cur * (Cplx(2.0 * mu) / z) - prev;
      prev = cur;
      cur = next;
      mu += 1.0;
    }
    return cur;
  }

  if (std::abs(nu - std::round(nu)) < 1e-9)
    throw DomainError("hankel: integer order needs the Y limit formula, "
                      "which is outside the supported range");

  S jp = bessel_j(nu, z);
  S jm = bessel_j(-nu, z);
  const double cs = std::cos(nu * kPi), sn = std::sin(nu * kPi);
  S y = (jp * Cplx(cs) - jm) * Cplx(1.0 / sn);
  return (kind == 1) ? jp + kI * y : jp - kI * y;
}

//==============================================================================
//! chi^[beta+1](w) = 2^((beta-1)/2) Gamma((beta+1)/2) J_{(beta-1)/2}(w) / w^{(beta-1)/2},
//! evaluated through its even power series so w = 0 is regular, chi(0) = 1.
template <class S> S spherical_chi(double beta, const S &w) {
  if (beta <= 0.0)
    throw DomainError("spherical_chi: beta must be positive");
  if (std::abs(body(w)) > kBesselArgLimit)
    throw AccuracyError("spherical_chi: |w| beyond supported series range");
  const double nu = 0.5 * (beta - 1.0);
  const S q = w * w * Cplx(-0.25);
  S term = q * Cplx(0.0) + Cplx(1.0); // one, in the scalar type of w
  S sum = term;
  for (int j = 0; j < kBesselMaxTerms; ++j) {
    term = term * q * Cplx(1.0 / ((j + 1.0) * (nu + j + 1.0)));
    sum += term;
    if (std::abs(body(term)) <= 1e-16 * (std::abs(body(sum)) + 1e-300))
      return sum;
  }
  throw AccuracyError("spherical_chi: series did not converge");
}

//! w * d/dw chi^[beta+1](w) = -w^2/(beta+1) * chi^[beta+3](w).
template <class S> S spherical_chi_wprime(double beta, const S &w) {
  return w * w * Cplx(-1.0 / (beta + 1.0)) * spherical_chi(beta + 2.0, w);
}

//==============================================================================
// Record of one special-function evaluation (handy for reports).
struct SpecialValue {
  enum class Kind { bessel_j, hankel_1, hankel_2 };
  double order;
  Cplx argument;
  Kind kind;
  Cplx value;
};

inline SpecialValue eval_special(SpecialValue::Kind kind, double nu, Cplx z) {
  SpecialValue v{nu, z, kind, {}};
  switch (kind) {
  case SpecialValue::Kind::bessel_j: v.value = bessel_j(nu, z); break;
  case SpecialValue::Kind::hankel_1: v.value = hankel(1, nu, z); break;
  case SpecialValue::Kind::hankel_2: v.value = hankel(2, nu, z); break;
  }
  return v;
}

} // namespace supercms
