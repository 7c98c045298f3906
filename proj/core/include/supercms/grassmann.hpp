#pragma once
#include "supercms/jet.hpp"
#include "supercms/types.hpp"

#include <bit>
#include <cstdint>
#include <vector>

namespace supercms {

//==============================================================================
//! Element of the finite exterior algebra on 2*k2 generators
//! xi_1, xi_1*, xi_2, xi_2*, ... (generator g_{2p} = xi_{p+1},
//! g_{2p+1} = xi_{p+1}*). Coefficients are indexed by generator subsets
//! (bitmask); a basis monomial is the product of its generators in ascending
//! index order. The scalar type S is complex or a jet, so elements can carry
//! outer Taylor directions through the algebra.
template <class S> class GrassmannElement {
public:
  GrassmannElement() : ngen_(0), c_(1, S{}) {}

  GrassmannElement(int n_generators, S zero_like)
      : ngen_(n_generators), c_(std::size_t(1) << n_generators, zero_like) {
    if (n_generators < 0 || n_generators > 8)
      throw DimensionError("grassmann: generator count outside supported range");
  }

  static GrassmannElement scalar(int n_generators, S v) {
    GrassmannElement e(n_generators, v * Cplx(0.0));
    e.c_[0] = v;
    return e;
  }

  //! Single generator (index in [0, 2*k2)).
  static GrassmannElement generator(int n_generators, int g, S one) {
    GrassmannElement e(n_generators, one * Cplx(0.0));
    e.c_[std::size_t(1) << g] = one;
    return e;
  }

  //! |xi_p|^2 = xi_p* xi_p = -(ascending pair monomial), p in [0, k2).
  static GrassmannElement pair_density(int n_generators, int p, S one) {
    GrassmannElement e(n_generators, one * Cplx(0.0));
    e.c_[(std::size_t(1) << (2 * p)) | (std::size_t(1) << (2 * p + 1))] =
        one * Cplx(-1.0);
    return e;
  }

  int generators() const { return ngen_; }
  int pairs() const { return ngen_ / 2; }
  const S &coeff(std::uint32_t mask) const { return c_[mask]; }
  S &coeff(std::uint32_t mask) { return c_[mask]; }
  const S &scalar_part() const { return c_[0]; }

  GrassmannElement &operator+=(const GrassmannElement &o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i)
      c_[i] += o.c_[i];
    return *this;
  }
  GrassmannElement &operator-=(const GrassmannElement &o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i)
      c_[i] -= o.c_[i];
    return *this;
  }
  GrassmannElement &operator*=(const Cplx &v) {
    for (auto &x : c_)
      x = x * v;
    return *this;
  }
  friend GrassmannElement operator+(GrassmannElement a, const GrassmannElement &b) {
    return a += b;
  }
  friend GrassmannElement operator-(GrassmannElement a, const GrassmannElement &b) {
    return a -= b;
  }
  friend GrassmannElement operator*(GrassmannElement a, const Cplx &v) {
    return a *= v;
  }
  friend GrassmannElement operator*(const Cplx &v, GrassmannElement a) {
    return a *= v;
  }

  void check(const GrassmannElement &o) const {
    if (ngen_ != o.ngen_)
      throw DimensionError("grassmann: mismatched generator counts");
  }

private:
  int ngen_;
  std::vector<S> c_;
};

namespace detail {
// Sign of e_A * e_B as (+-1) * e_{A|B}: count transpositions needed to merge.
inline int merge_sign(std::uint32_t a, std::uint32_t b) {
  int swaps = 0;
  while (b) {
    const int g = std::countr_zero(b);
    b &= b - 1;
    // generators of `a` with index greater than g must jump over g
    swaps += std::popcount(a >> (g + 1));
  }
  return (swaps % 2 == 0) ? 1 : -1;
}
} // namespace detail

//! Graded product with the anticommutation signs.
template <class S>
GrassmannElement<S> g_mul(const GrassmannElement<S> &a,
                          const GrassmannElement<S> &b) {
  a.check(b);
  const int n = a.generators();
  GrassmannElement<S> r(n, a.coeff(0) * Cplx(0.0));
  const std::uint32_t full = (n >= 32) ? ~0u : ((1u << n) - 1u);
  for (std::uint32_t ma = 0; ma <= full; ++ma) {
    for (std::uint32_t mb = 0; mb <= full; ++mb) {
      if (ma & mb)
        continue; // repeated generator, nilpotent
      const int sg = detail::merge_sign(ma, mb);
      r.coeff(ma | mb) += a.coeff(ma) * b.coeff(mb) * Cplx(double(sg));
    }
    if (full == 0)
      break;
  }
  return r;
}

//! Berezin integral over all pairs d xi_p d xi_p*, normalized so that
//! integral of prod_p |xi_p|^2 equals one; everything else integrates to 0.
template <class S> S berezin_integrate(const GrassmannElement<S> &a) {
  const int k2 = a.pairs();
  const std::uint32_t full =
      (a.generators() == 0) ? 0u : ((1u << a.generators()) - 1u);
  S v = a.coeff(full);
  return (k2 % 2 == 0) ? v : v * Cplx(-1.0);
}

//==============================================================================
//! One nilpotent coordinate shift: variable p picks up direction * |xi_p|^2.
struct NilpotentShift {
  int var;        // index into the substituted argument list
  Cplx direction; // factor multiplying |xi_p|^2
};

//! Expand f(base + shifts) as the exact finite Taylor sum over the nilpotent
//! directions: the subset-S term is prod_{p in S} direction_p |xi_p|^2 times
//! the mixed partial of f. One Grassmann pair per shift.
inline GrassmannElement<Cplx>
nilpotent_substitute(const AnalyticFn &f, std::span<const Cplx> base,
                     std::span<const NilpotentShift> shifts) {
  const int k2 = static_cast<int>(shifts.size());
  std::vector<int> orders(base.size(), 0);
  for (const auto &sh : shifts) {
    if (sh.var < 0 || sh.var >= static_cast<int>(base.size()))
      throw DimensionError("nilpotent_substitute: shift variable out of range");
    if (orders[sh.var] != 0)
      throw UsageError("nilpotent_substitute: at most one shift per variable");
    orders[sh.var] = 1;
  }
  Jet jf = jet_eval(f, base, orders);

  GrassmannElement<Cplx> out(2 * k2, Cplx{});
  for (std::uint32_t sub = 0; sub < (1u << k2); ++sub) {
    std::vector<int> alpha(base.size(), 0);
    Cplx dir = 1.0;
    for (int p = 0; p < k2; ++p)
      if (sub & (1u << p)) {
        alpha[shifts[p].var] = 1;
        dir *= shifts[p].direction;
      }
    const Cplx c = jf.deriv(alpha) * dir;
    // multiply the |xi|^2 factors of the subset in ascending pair order
    GrassmannElement<Cplx> term = GrassmannElement<Cplx>::scalar(2 * k2, c);
    for (int p = 0; p < k2; ++p)
      if (sub & (1u << p))
        term = g_mul(term, GrassmannElement<Cplx>::pair_density(2 * k2, p, 1.0));
    out += term;
  }
  return out;
}

} // namespace supercms
