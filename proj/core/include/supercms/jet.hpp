#pragma once
#include "supercms/types.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <span>
#include <utility>

namespace supercms {

//==============================================================================
//! Truncated multivariate Taylor expansion (a "jet") around a base point.
//!
//! Coefficients are stored densely over the box of multi-indices
//! alpha <= caps (componentwise). c[alpha] is the Taylor coefficient, i.e.
//! the mixed partial divided by alpha!. Propagation through +,*,/,exp,log,
//! pow is algebraic and exact for the truncation order; no step sizes.
class Jet {
public:
  Jet() : caps_{}, stride_{}, c_{Cplx{0.0}} {}

  static Jet constant(std::vector<int> caps, Cplx v) {
    Jet j(std::move(caps));
    j.c_[0] = v;
    return j;
  }

  //! Base value `v` plus a unit first-order coefficient in variable `var`.
  static Jet variable(std::vector<int> caps, int var, Cplx v) {
    Jet j(std::move(caps));
    j.c_[0] = v;
    if (var < 0 || var >= j.nvars() || j.caps_[var] < 1)
      throw UnsupportedOrderError("jet variable index/order out of range");
    j.c_[j.stride_[var]] = 1.0;
    return j;
  }

  int nvars() const { return static_cast<int>(caps_.size()); }
  const std::vector<int> &caps() const { return caps_; }
  int size() const { return static_cast<int>(c_.size()); }

  Cplx value() const { return c_[0]; }

  Cplx coeff(std::span<const int> alpha) const { return c_[flat(alpha)]; }

  //! Mixed partial derivative = Taylor coefficient times alpha!.
  Cplx deriv(std::span<const int> alpha) const {
    double f = 1.0;
    for (std::size_t i = 0; i < alpha.size(); ++i)
      for (int k = 2; k <= alpha[i]; ++k)
        f *= k;
    return c_[flat(alpha)] * f;
  }

  Cplx coeff1(int var, int order) const {
    std::vector<int> a(caps_.size(), 0);
    a[var] = order;
    return coeff(a);
  }
  Cplx deriv1(int var, int order) const {
    std::vector<int> a(caps_.size(), 0);
    a[var] = order;
    return deriv(a);
  }

  //------------------------------------------------------------------ arithmetic
  Jet operator-() const {
    Jet r = *this;
    for (auto &x : r.c_)
      x = -x;
    return r;
  }

  Jet &operator+=(const Jet &o) {
    check_same(o);
    for (int i = 0; i < size(); ++i)
      c_[i] += o.c_[i];
    return *this;
  }
  Jet &operator-=(const Jet &o) {
    check_same(o);
    for (int i = 0; i < size(); ++i)
      c_[i] -= o.c_[i];
    return *this;
  }
  Jet &operator+=(Cplx v) {
    c_[0] += v;
    return *this;
  }
  Jet &operator-=(Cplx v) {
    c_[0] -= v;
    return *this;
  }
  Jet &operator*=(Cplx v) {
    for (auto &x : c_)
      x *= v;
    return *this;
  }
  Jet &operator/=(Cplx v) {
    for (auto &x : c_)
      x /= v;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet &b) { return a += b; }
  friend Jet operator-(Jet a, const Jet &b) { return a -= b; }
  friend Jet operator+(Jet a, Cplx b) { return a += b; }
  friend Jet operator+(Cplx a, Jet b) { return b += a; }
  friend Jet operator-(Jet a, Cplx b) { return a -= b; }
  friend Jet operator-(Cplx a, Jet b) {
    Jet r = -b;
    return r += a;
  }
  friend Jet operator*(Jet a, Cplx b) { return a *= b; }
  friend Jet operator*(Cplx a, Jet b) { return b *= a; }
  friend Jet operator/(Jet a, Cplx b) { return a /= b; }
  friend Jet operator/(Cplx a, const Jet &b) { return Jet::constant(b.caps_, a) / b; }

  friend Jet operator*(const Jet &a, const Jet &b) {
    a.check_same(b);
    Jet r(a.caps_);
    const auto &mi = a.decode_table();
    const int n = a.nvars();
    for (int ia = 0; ia < a.size(); ++ia) {
      if (a.c_[ia] == std::complex<double>{})
        continue;
      const int *al = &mi[static_cast<std::size_t>(ia) * n];
      for (int ib = 0; ib < b.size(); ++ib) {
        if (b.c_[ib] == std::complex<double>{})
          continue;
        const int *be = &mi[static_cast<std::size_t>(ib) * n];
        bool ok = true;
        int idx = 0;
        for (int v = 0; v < n; ++v) {
          const int s = al[v] + be[v];
          if (s > a.caps_[v]) {
            ok = false;
            break;
          }
          idx += s * a.stride_[v];
        }
        if (ok)
          r.c_[idx] += a.c_[ia] * b.c_[ib];
      }
    }
    return r;
  }

  friend Jet operator/(const Jet &a, const Jet &b) { return a * b.inverse(); }

  //! Multiplicative inverse via the finite geometric series in the
  //! zero-constant part (exact: total degree is bounded by sum of caps).
  Jet inverse() const {
    const Cplx b0 = c_[0];
    if (b0 == Cplx{})
      throw DomainError("jet inverse: zero base value");
    Jet u = *this;
    u.c_[0] = 0;
    u /= b0;
    Jet acc = Jet::constant(caps_, 1.0 / b0);
    Jet term = Jet::constant(caps_, 1.0 / b0);
    const int kmax = total_cap();
    for (int k = 1; k <= kmax; ++k) {
      term = term * u;
      term *= Cplx(-1.0);
      if (term.all_zero())
        break;
      acc += term;
    }
    return acc;
  }

  bool all_zero() const {
    for (const auto &x : c_)
      if (x != Cplx{})
        return false;
    return true;
  }

  int total_cap() const {
    int t = 0;
    for (int c : caps_)
      t += c;
    return t;
  }

  //! Append extra variables (coefficients embed at order zero of the new ones).
  Jet extended(const std::vector<int> &extra_caps) const {
    std::vector<int> caps = caps_;
    caps.insert(caps.end(), extra_caps.begin(), extra_caps.end());
    Jet r(std::move(caps));
    for (int i = 0; i < size(); ++i)
      r.c_[i] = c_[i]; // old box is the leading slice of the new one
    return r;
  }

  //! Coefficient of (var)^k, as a jet over the remaining variables.
  Jet coeff_of(int var, int k) const {
    assert(var >= 0 && var < nvars() && k >= 0 && k <= caps_[var]);
    std::vector<int> caps;
    caps.reserve(caps_.size() - 1);
    for (int v = 0; v < nvars(); ++v)
      if (v != var)
        caps.push_back(caps_[v]);
    Jet r(std::move(caps));
    const auto &mi = decode_table();
    const int n = nvars();
    for (int i = 0; i < size(); ++i) {
      const int *a = &mi[static_cast<std::size_t>(i) * n];
      if (a[var] != k)
        continue;
      int idx = 0, sj = 0;
      int stride = 1;
      for (int v = 0; v < n; ++v) {
        if (v == var)
          continue;
        idx += a[v] * stride;
        stride *= caps_[v] + 1;
        ++sj;
      }
      r.c_[idx] = c_[i];
    }
    return r;
  }

private:
  explicit Jet(std::vector<int> caps) : caps_(std::move(caps)) {
    int sz = 1;
    stride_.resize(caps_.size());
    for (std::size_t v = 0; v < caps_.size(); ++v) {
      if (caps_[v] < 0 || caps_[v] > 8)
        throw UnsupportedOrderError("jet order cap out of supported range");
      stride_[v] = sz;
      sz *= caps_[v] + 1;
    }
    c_.assign(sz, Cplx{});
  }

  int flat(std::span<const int> alpha) const {
    if (static_cast<int>(alpha.size()) != nvars())
      throw DimensionError("jet multi-index dimension mismatch");
    int idx = 0;
    for (int v = 0; v < nvars(); ++v) {
      if (alpha[v] < 0 || alpha[v] > caps_[v])
        throw UnsupportedOrderError("jet multi-index exceeds caps");
      idx += alpha[v] * stride_[v];
    }
    return idx;
  }

  void check_same(const Jet &o) const {
    if (caps_ != o.caps_)
      throw DimensionError("jet space mismatch");
  }

  // Flat-index -> multi-index decode table, rebuilt on demand.
  const std::vector<int> &decode_table() const {
    thread_local std::vector<int> caps_key;
    thread_local std::vector<int> table;
    if (caps_key != caps_) {
      caps_key = caps_;
      const int n = nvars();
      table.assign(static_cast<std::size_t>(size()) * std::max(n, 1), 0);
      std::vector<int> a(n, 0);
      for (int i = 0; i < size(); ++i) {
        for (int v = 0; v < n; ++v)
          table[static_cast<std::size_t>(i) * n + v] = a[v];
        for (int v = 0; v < n; ++v) {
          if (++a[v] <= caps_[v])
            break;
          a[v] = 0;
        }
      }
    }
    return table;
  }

  std::vector<int> caps_;
  std::vector<int> stride_;
  std::vector<Cplx> c_;
};

//==============================================================================
// Analytic scalar functions on jets. These mirror the complex versions and
// reduce to them for zero-variable jets.

//! Principal-branch power (binomial series in the nilpotent part).
inline Jet pow(const Jet &a, double e) {
  const Cplx a0 = a.value();
  if (a0 == Cplx{})
    throw DomainError("jet pow: zero base value");
  Jet u = a;
  u -= a0;
  u /= a0;
  Jet acc = Jet::constant(a.caps(), std::pow(a0, Cplx(e)));
  Jet term = acc;
  const int kmax = a.total_cap();
  for (int k = 1; k <= kmax; ++k) {
    term = term * u;
    term *= Cplx((e - k + 1) / k);
    if (term.all_zero())
      break;
    acc += term;
  }
  return acc;
}

inline Jet sqrt(const Jet &a) { return pow(a, 0.5); }

inline Jet exp(const Jet &a) {
  Jet u = a;
  u -= a.value();
  Jet acc = Jet::constant(a.caps(), std::exp(a.value()));
  Jet term = acc;
  const int kmax = a.total_cap();
  for (int k = 1; k <= kmax; ++k) {
    term = term * u;
    term /= Cplx(double(k));
    if (term.all_zero())
      break;
    acc += term;
  }
  return acc;
}

inline Jet log(const Jet &a) {
  const Cplx a0 = a.value();
  if (a0 == Cplx{})
    throw DomainError("jet log: zero base value");
  Jet u = a;
  u -= a0;
  u /= a0;
  Jet acc = Jet::constant(a.caps(), std::log(a0));
  Jet upow = Jet::constant(a.caps(), 1.0);
  const int kmax = a.total_cap();
  for (int k = 1; k <= kmax; ++k) {
    upow = upow * u;
    if (upow.all_zero())
      break;
    Jet term = upow;
    term *= Cplx((k % 2 == 1 ? 1.0 : -1.0) / k);
    acc += term;
  }
  return acc;
}

inline Jet sin(const Jet &a) {
  Jet u = a;
  u -= a.value();
  const Cplx s0 = std::sin(a.value()), c0 = std::cos(a.value());
  // sin(a0+u) = sin a0 cos u + cos a0 sin u, both series finite in u
  Jet cosu = Jet::constant(a.caps(), 1.0);
  Jet sinu = Jet::constant(a.caps(), 0.0);
  Jet term = Jet::constant(a.caps(), 1.0);
  const int kmax = a.total_cap();
  for (int k = 1; k <= kmax; ++k) {
    term = term * u;
    term /= Cplx(double(k));
    if (term.all_zero())
      break;
    switch (k % 4) {
    case 0: cosu += term; break;
    case 1: sinu += term; break;
    case 2: cosu -= term; break;
    default: sinu -= term; break;
    }
  }
  return s0 * cosu + c0 * sinu;
}

inline Jet cos(const Jet &a) {
  Jet shifted = a;
  shifted += Cplx(kPi / 2.0);
  return sin(shifted);
}

// Uniform accessors so templates can treat Cplx and Jet alike.
inline Cplx body(const Cplx &z) { return z; }
inline Cplx body(const Jet &j) { return j.value(); }

//==============================================================================
//! Type-erased analytic function of n complex variables, callable both on
//! complex points and on jets. Construct from one generic lambda.
class AnalyticFn {
public:
  AnalyticFn() = default;

  template <class F>
  AnalyticFn(F f)
      : fc_([f](std::span<const Cplx> v) { return f(v); }),
        fj_([f](std::span<const Jet> v) { return f(v); }) {}

  Cplx operator()(std::span<const Cplx> v) const { return fc_(v); }
  Jet operator()(std::span<const Jet> v) const { return fj_(v); }

  Cplx operator()(const std::vector<Cplx> &v) const {
    return fc_(std::span<const Cplx>(v));
  }
  Jet operator()(const std::vector<Jet> &v) const {
    return fj_(std::span<const Jet>(v));
  }

  explicit operator bool() const { return static_cast<bool>(fc_); }

private:
  std::function<Cplx(std::span<const Cplx>)> fc_;
  std::function<Jet(std::span<const Jet>)> fj_;
};

//! All mixed partials of `f` at `point` up to `orders` (componentwise).
inline Jet jet_eval(const AnalyticFn &f, std::span<const Cplx> point,
                    std::span<const int> orders) {
  if (point.size() != orders.size())
    throw DimensionError("jet_eval: point/orders size mismatch");
  std::vector<int> caps(orders.begin(), orders.end());
  for (int o : caps)
    if (o < 0 || o > 6)
      throw UnsupportedOrderError("jet_eval: order outside supported range");
  std::vector<Jet> args;
  args.reserve(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (caps[i] >= 1)
      args.push_back(Jet::variable(caps, static_cast<int>(i), point[i]));
    else
      args.push_back(Jet::constant(caps, point[i]));
  }
  return f(args);
}

//==============================================================================
//! Value, gradient and (optionally) pure second partials of `f` at jet-valued
//! arguments. Auxiliary differentiation variables are appended to the space
//! of `args` and sliced away again, so the results live in the original space.
struct JetCallDerivs {
  Jet value;
  std::vector<Jet> d1;
  std::vector<Jet> d2; // pure second partials, filled when order >= 2
};

inline JetCallDerivs call_with_derivs(const AnalyticFn &f,
                                      const std::vector<Jet> &args, int order) {
  const int m = static_cast<int>(args.size());
  const int n0 = args.empty() ? 0 : args.front().nvars();
  std::vector<int> extra(m, order);
  std::vector<Jet> ext;
  ext.reserve(m);
  for (int j = 0; j < m; ++j) {
    Jet e = args[j].extended(extra);
    std::vector<int> caps = e.caps();
    e += Jet::variable(caps, n0 + j, 0.0);
    ext.push_back(std::move(e));
  }
  Jet big = f(ext);
  JetCallDerivs out;
  // slice: take the coefficient of the auxiliary variables' orders, reducing
  // back to the original space (auxiliaries sit at the end, remove last-first)
  auto reduce = [&](std::vector<int> aux_orders) {
    Jet r = big;
    for (int j = m - 1; j >= 0; --j)
      r = r.coeff_of(n0 + j, aux_orders[j]);
    return r;
  };
  out.value = reduce(std::vector<int>(m, 0));
  out.d1.resize(m);
  for (int j = 0; j < m; ++j) {
    std::vector<int> a(m, 0);
    a[j] = 1;
    out.d1[j] = reduce(a);
  }
  if (order >= 2) {
    out.d2.resize(m);
    for (int j = 0; j < m; ++j) {
      std::vector<int> a(m, 0);
      a[j] = 2;
      Jet c = reduce(a);
      c *= Cplx(2.0); // Taylor coefficient -> second derivative
      out.d2[j] = c;
    }
  }
  return out;
}

} // namespace supercms
