#pragma once
#include "supercms/jet.hpp"
#include "supercms/types.hpp"

#include <cmath>
#include <span>
#include <vector>

namespace supercms {

//==============================================================================
// Weight (Jacobian / Berezinian) functions. Two conventions hold everywhere:
//  * factors that are real and sign-definite on the ordered chamber are raised
//    with their absolute value (the usual radial-weight convention), and
//  * genuinely complex factors (the mixed ones, s1 - c*s2) use the principal
//    branch of the power.

enum class WeightFamily {
  vandermonde, // |Delta(s1)|^beta1
  super_gl,    // unitary-superspace square-rooted Berezinian, power beta1
  gl_osp_plus, // fixed exponents (1,4,2), c = +i
  gl_osp_minus,// fixed exponents (1,4,2), c = -i
  two_param,   // exponents (beta1, beta2, sqrt(beta1*beta2))
  osp_even,    // orthosymplectic radial function, power beta1, even branch
  osp_odd      // odd branch (single-coordinate product moves to the first set)
};

struct WeightSpec {
  WeightFamily family = WeightFamily::vandermonde;
  double beta1 = 1.0;
  double beta2 = 1.0;
  Cplx c = kI;
  int k1 = 0;
  int k2 = 0;

  void validate() const {
    if (family == WeightFamily::two_param && (beta1 < 0.0 || beta2 < 0.0))
      throw DomainError("weight: two_param requires beta1, beta2 >= 0");
    if (c != kI && c != -kI)
      throw DomainError("weight: c must be +i or -i");
  }
};

//! Signed Vandermonde determinant prod_{n<m}(x_n - x_m); empty product = 1.
template <class S> S vandermonde(std::span<const S> x) {
  S prod = x.empty() ? S{} : x[0] * Cplx(0.0);
  prod += Cplx(1.0);
  for (std::size_t n = 0; n < x.size(); ++n)
    for (std::size_t m = n + 1; m < x.size(); ++m)
      prod = prod * (x[n] - x[m]);
  return prod;
}

namespace detail {

// Power with the chamber convention: real negative base values are flipped
// (absolute-value factors); everything else is the principal branch.
inline Cplx wpow(const Cplx &b, double e) {
  if (b.imag() == 0.0 && b.real() < 0.0)
    return std::pow(-b, Cplx(e));
  return std::pow(b, Cplx(e));
}
inline Jet wpow(const Jet &b, double e) {
  const Cplx b0 = b.value();
  if (b0.imag() == 0.0 && b0.real() < 0.0)
    return pow(-b, e);
  return pow(b, e);
}

template <class S>
void guard_distinct(std::span<const S> v, const char *what) {
  for (std::size_t p = 0; p < v.size(); ++p)
    for (std::size_t q = p + 1; q < v.size(); ++q)
      if (body(v[p]) == body(v[q]))
        throw SingularConfigurationError(what, int(p), int(q));
}

struct TwoParamExponents {
  double e1, e2, cross;
};

inline TwoParamExponents two_param_exponents(const WeightSpec &w) {
  switch (w.family) {
  case WeightFamily::super_gl:
    return {w.beta1, w.beta1, w.beta1};
  case WeightFamily::gl_osp_plus:
  case WeightFamily::gl_osp_minus:
    return {1.0, 4.0, 2.0};
  case WeightFamily::two_param:
    return {w.beta1, w.beta2, std::sqrt(w.beta1 * w.beta2)};
  default:
    throw UsageError("weight: not a product-form family");
  }
}

inline Cplx family_c(const WeightSpec &w) {
  if (w.family == WeightFamily::gl_osp_plus)
    return kI;
  if (w.family == WeightFamily::gl_osp_minus)
    return -kI;
  return w.c;
}

} // namespace detail

//==============================================================================
template <class S>
S weight_eval(const WeightSpec &w, std::span<const S> s1, std::span<const S> s2) {
  w.validate();
  using detail::wpow;
  S one = (s1.empty() ? (s2.empty() ? S{} : s2[0] * Cplx(0.0))
                      : s1[0] * Cplx(0.0));
  one += Cplx(1.0);

  if (w.family == WeightFamily::vandermonde) {
    detail::guard_distinct(s1, "weight: coincident first-set points");
    S prod = one;
    for (std::size_t p = 0; p < s1.size(); ++p)
      for (std::size_t q = p + 1; q < s1.size(); ++q)
        prod = prod * wpow(s1[p] - s1[q], w.beta1);
    return prod;
  }

  if (w.family == WeightFamily::osp_even || w.family == WeightFamily::osp_odd) {
    const double b = w.beta1;
    detail::guard_distinct(s1, "weight: coincident first-set points");
    detail::guard_distinct(s2, "weight: coincident second-set points");
    S prod = one;
    for (std::size_t p = 0; p < s1.size(); ++p)
      for (std::size_t q = p + 1; q < s1.size(); ++q)
        prod = prod * wpow(s1[p] * s1[p] - s1[q] * s1[q], b);
    for (std::size_t p = 0; p < s2.size(); ++p)
      for (std::size_t q = p + 1; q < s2.size(); ++q)
        prod = prod * wpow(s2[p] * s2[p] - s2[q] * s2[q], b);
    if (w.family == WeightFamily::osp_even)
      for (const auto &y : s2)
        prod = prod * wpow(y, b);
    else
      for (const auto &x : s1)
        prod = prod * wpow(x, b);
    for (std::size_t p = 0; p < s1.size(); ++p)
      for (std::size_t q = 0; q < s2.size(); ++q) {
        const S den = s1[p] * s1[p] + s2[q] * s2[q];
        if (body(den) == Cplx{})
          throw SingularConfigurationError("weight: vanishing osp cross factor",
                                           int(p), int(q));
        prod = prod * wpow(den, -b);
      }
    return prod;
  }

  const auto ex = detail::two_param_exponents(w);
  const Cplx c = detail::family_c(w);
  detail::guard_distinct(s1, "weight: coincident first-set points");
  detail::guard_distinct(s2, "weight: coincident second-set points");
  S prod = one;
  for (std::size_t p = 0; p < s1.size(); ++p)
    for (std::size_t q = p + 1; q < s1.size(); ++q)
      prod = prod * wpow(s1[p] - s1[q], ex.e1);
  for (std::size_t p = 0; p < s2.size(); ++p)
    for (std::size_t q = p + 1; q < s2.size(); ++q)
      prod = prod * wpow(s2[p] - s2[q], ex.e2);
  for (std::size_t p = 0; p < s1.size(); ++p)
    for (std::size_t q = 0; q < s2.size(); ++q) {
      const S den = s1[p] - c * s2[q];
      if (body(den) == Cplx{})
        throw SingularConfigurationError("weight: vanishing mixed factor",
                                         int(p), int(q));
      prod = prod * wpow(den, -ex.cross);
    }
  return prod;
}

//==============================================================================
//! Which coordinate a log-derivative is taken with respect to.
struct VarRef {
  int set;   // 1 or 2
  int index; // within the set
};

//! d log w / d s_[v], as the closed-form sum of simple poles.
template <class S>
S weight_logderiv(const WeightSpec &w, std::span<const S> s1,
                  std::span<const S> s2, VarRef v) {
  w.validate();
  S zero = (s1.empty() ? (s2.empty() ? S{} : s2[0] * Cplx(0.0))
                       : s1[0] * Cplx(0.0));
  S acc = zero;

  if (w.family == WeightFamily::vandermonde) {
    if (v.set != 1)
      throw UsageError("weight: vandermonde has no second set");
    for (std::size_t q = 0; q < s1.size(); ++q)
      if (int(q) != v.index)
        acc += Cplx(w.beta1) / (s1[v.index] - s1[q]);
    return acc;
  }

  if (w.family == WeightFamily::osp_even || w.family == WeightFamily::osp_odd) {
    const double b = w.beta1;
    const bool single_on_first = (w.family == WeightFamily::osp_odd);
    if (v.set == 1) {
      const S &x = s1[v.index];
      for (std::size_t q = 0; q < s1.size(); ++q)
        if (int(q) != v.index)
          acc += Cplx(2.0 * b) * x / (x * x - s1[q] * s1[q]);
      if (single_on_first)
        acc += Cplx(b) / x;
      for (std::size_t q = 0; q < s2.size(); ++q)
        acc -= Cplx(2.0 * b) * x / (x * x + s2[q] * s2[q]);
    } else {
      const S &y = s2[v.index];
      for (std::size_t q = 0; q < s2.size(); ++q)
        if (int(q) != v.index)
          acc += Cplx(2.0 * b) * y / (y * y - s2[q] * s2[q]);
      if (!single_on_first)
        acc += Cplx(b) / y;
      for (std::size_t p = 0; p < s1.size(); ++p)
        acc -= Cplx(2.0 * b) * y / (s1[p] * s1[p] + y * y);
    }
    return acc;
  }

  const auto ex = detail::two_param_exponents(w);
  const Cplx c = detail::family_c(w);
  if (v.set == 1) {
    const S &x = s1[v.index];
    for (std::size_t q = 0; q < s1.size(); ++q)
      if (int(q) != v.index)
        acc += Cplx(ex.e1) / (x - s1[q]);
    for (std::size_t q = 0; q < s2.size(); ++q)
      acc -= Cplx(ex.cross) / (x - c * s2[q]);
  } else {
    const S &y = s2[v.index];
    for (std::size_t q = 0; q < s2.size(); ++q)
      if (int(q) != v.index)
        acc += Cplx(ex.e2) / (y - s2[q]);
    for (std::size_t p = 0; p < s1.size(); ++p)
      acc += Cplx(ex.cross) * c / (s1[p] - c * y);
  }
  return acc;
}

// Convenience overloads on real configurations.
inline Cplx weight_eval(const WeightSpec &w, const Configuration &pt) {
  std::vector<Cplx> a(pt.s1.begin(), pt.s1.end());
  std::vector<Cplx> b(pt.s2.begin(), pt.s2.end());
  return weight_eval<Cplx>(w, a, b);
}

inline Cplx weight_logderiv(const WeightSpec &w, const Configuration &pt,
                            VarRef v) {
  std::vector<Cplx> a(pt.s1.begin(), pt.s1.end());
  std::vector<Cplx> b(pt.s2.begin(), pt.s2.end());
  return weight_logderiv<Cplx>(w, a, b, v);
}

} // namespace supercms
