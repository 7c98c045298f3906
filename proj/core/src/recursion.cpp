#include "supercms/recursion.hpp"

#include <cmath>

namespace supercms {

//==============================================================================
Cplx recurse_ordinary(double beta, int n, std::span<const double> x,
                      std::span<const double> k, const QuadratureConfig &cfg) {
  cfg.validate();
  if (beta <= 0.0)
    throw DomainError("recurse_ordinary: beta must be positive");
  if (n < 1 || int(x.size()) != n || int(k.size()) != n)
    throw DimensionError("recurse_ordinary: bad dimensions");
  if (n > 4)
    throw UsageError("recurse_ordinary: N > 4 exceeds the nested-quadrature "
                     "depth this build supports");
  std::vector<double> xv(x.begin(), x.end());
  if (!in_chamber(xv))
    throw DomainError("recurse_ordinary: coordinates must be strictly increasing");

  std::vector<Cplx> xc(x.begin(), x.end());
  std::vector<Cplx> kc(k.begin(), k.end());

  if (n == 1)
    return std::exp(kI * kc[0] * xc[0]);

  Cplx prev{}, cur{};
  int nodes = cfg.nodes;
  for (int lvl = 0; lvl < cfg.refine_levels; ++lvl) {
    prev = cur;
    cur = detail::phi_ordinary_impl<Cplx>(beta, xc, kc, nodes);
    if (lvl > 0 &&
        std::abs(cur - prev) <= cfg.tolerance * std::max(1.0, std::abs(cur)))
      return cur;
    nodes *= 2;
  }
  if (cfg.refine_levels == 1)
    return cur;
  throw AccuracyError("recurse_ordinary: quadrature did not settle within the "
                      "configured refinement levels");
}

double normalization_G(double beta, int n, std::span<const double> x,
                       const QuadratureConfig &cfg) {
  cfg.validate();
  if (n == 1)
    return 1.0;
  if (int(x.size()) != n)
    throw DimensionError("normalization_G: bad dimensions");
  const double alpha = beta / 2.0 - 1.0;
  const QuadratureRule rule = gauss_jacobi_rule(cfg.nodes, alpha);
  const int m = n - 1;

  // integral of the unnormalized measure over the interlacing domain
  std::vector<int> idx(m, 0);
  std::vector<double> xp(m, 0.0);
  double den = 0.0;
  for (;;) {
    double wgt = 1.0;
    for (int q = 0; q < m; ++q) {
      xp[q] = x[q] + (x[q + 1] - x[q]) * rule.t[idx[q]];
      wgt *= rule.w[idx[q]];
    }
    double meas = wgt;
    for (int q = 0; q < m; ++q)
      meas *= std::pow(x[q + 1] - x[q], 2.0 * alpha + 1.0);
    for (int q = 0; q < m; ++q)
      for (int p = q + 1; p < m; ++p)
        meas *= xp[p] - xp[q];
    for (int q = 0; q < m; ++q)
      for (int p = 0; p < n; ++p) {
        if (p == q || p == q + 1)
          continue;
        meas *= std::pow(std::abs(x[p] - xp[q]), alpha);
      }
    den += meas;
    int j = 0;
    while (j < m && ++idx[j] == cfg.nodes) {
      idx[j] = 0;
      ++j;
    }
    if (j == m)
      break;
  }
  double dn = 1.0; // |Delta_N(x)|^{beta-1}
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q)
      dn *= std::abs(x[p] - x[q]);
  return std::pow(dn, beta - 1.0) / den;
}

//==============================================================================
namespace detail {

Jet mu_f_normalized(double beta, Cplx /*c*/, std::span<const Jet> s2,
                    std::span<const Jet> s2p) {
  // every factor is divided by its Grassmann-free part; c cancels in the
  // ratios, and the binomial expansions in the nilpotent remainders are exact
  const double B = beta * beta / 4.0;
  const double e = beta / 2.0 - B;
  const int k2 = static_cast<int>(s2.size());
  Jet acc;
  if (k2 == 0)
    return Jet() + Cplx(1.0);
  acc = s2[0] * Cplx(0.0) + Cplx(1.0);
  for (int p = 0; p < k2; ++p)
    for (int q = p + 1; q < k2; ++q) {
      Jet delta = (s2p[p] - s2p[q]) / (s2[p] - s2[q]) - Cplx(1.0);
      acc = acc * pow1p(delta, B);
    }
  for (int p = 0; p < k2; ++p)
    for (int q = 0; q < k2; ++q) {
      if (p == q)
        continue;
      Jet delta = (s2[p] - s2p[q]) / (s2[p] - s2[q]) - Cplx(1.0);
      acc = acc * pow1p(delta, e);
    }
  return acc;
}

Jet mu_bf(double beta, Cplx c, std::span<const Jet> s1,
          std::span<const Jet> s1p, std::span<const Jet> s2,
          std::span<const Jet> s2p) {
  if (s2.empty()) {
    Jet one = (s1.empty() ? Jet() : s1[0] * Cplx(0.0));
    return one + Cplx(1.0);
  }
  Jet acc = s2[0] * Cplx(0.0) + Cplx(1.0);
  for (std::size_t l = 0; l < s2.size(); ++l) {
    for (const auto &a : s1)
      acc = acc * pow(c * s2[l] - a, 2.0 - beta / 2.0);
    for (const auto &ap : s1p)
      acc = acc * pow(c * s2[l] - ap, beta / 2.0 - 1.0);
    for (const auto &a : s1)
      acc = acc * pow(c * s2p[l] - a, beta / 2.0 - 1.0);
    for (const auto &ap : s1p)
      acc = acc * pow(c * s2p[l] - ap, -beta / 2.0);
  }
  return acc;
}

Jet rho_super_jet(double beta, Cplx c, int k1, int k2, std::vector<Jet> s1,
                  std::vector<Jet> s2, std::span<const Cplx> r1,
                  std::span<const Cplx> r2, const QuadratureConfig &cfg,
                  int nodes) {
  if (k1 == 0) {
    if (k2 == 0)
      throw DimensionError("rho_super_jet: empty configuration");
    return phi_ordinary_impl<Jet>(beta, s2, r2, nodes);
  }

  // append one nilpotent proxy variable per Grassmann pair
  const int n0 = s1.front().nvars();
  const std::vector<int> extra(k2, 1);
  for (auto &j : s1)
    j = j.extended(extra);
  for (auto &j : s2)
    j = j.extended(extra);
  std::vector<int> caps = s1.front().caps();
  std::vector<Jet> eta;
  eta.reserve(k2);
  for (int p = 0; p < k2; ++p)
    eta.push_back(Jet::variable(caps, n0 + p, 0.0));

  std::vector<Jet> s2p;
  s2p.reserve(k2);
  for (int p = 0; p < k2; ++p)
    s2p.push_back(s2[p] - c * eta[p]);

  const Cplx r_last = r1[k1 - 1];
  std::vector<Cplx> r1_inner(r1.begin(), r1.end() - 1);

  Jet phase_arg = Jet::constant(caps, 0.0);
  for (const auto &a : s1)
    phase_arg += a;
  for (const auto &h : eta)
    phase_arg += h * Cplx(beta / 2.0);

  Jet muf = (k2 == 0) ? Jet::constant(caps, 1.0)
                      : mu_f_normalized(beta, c, s2, s2p);

  auto inner_rho = [&](const std::vector<Jet> &s1_next,
                       const std::vector<Jet> &s2_next) {
    if (k1 - 1 == 0 && k2 == 0)
      return Jet::constant(caps, 1.0);
    return rho_super_jet(beta, c, k1 - 1, k2, s1_next, s2_next, r1_inner, r2,
                         cfg, nodes);
  };

  Jet result;
  if (k1 == 1) {
    Jet inner = inner_rho({}, s2p);
    result = sexp(phase_arg * (kI * r_last)) * muf *
             mu_bf(beta, c, s1, {}, s2, s2p) * inner;
  } else {
    const double alpha = 2.0 / beta - 1.0;
    const QuadratureRule rule = gauss_jacobi_rule(nodes, alpha);
    const int m = k1 - 1;
    Jet num = Jet::constant(caps, 0.0);
    Jet den = num;
    std::vector<int> idx(m, 0);
    std::vector<Jet> s1p(m, num);
    for (;;) {
      double wgt = 1.0;
      for (int q = 0; q < m; ++q) {
        s1p[q] = s1[q] + (s1[q + 1] - s1[q]) * Cplx(rule.t[idx[q]]);
        wgt *= rule.w[idx[q]];
      }
      Jet meas = Jet::constant(caps, wgt);
      for (int q = 0; q < m; ++q)
        meas = meas * spow(s1[q + 1] - s1[q], 2.0 * alpha + 1.0);
      for (int q = 0; q < m; ++q)
        for (int p = q + 1; p < m; ++p)
          meas = meas * (s1p[p] - s1p[q]);
      for (int q = 0; q < m; ++q)
        for (int p = 0; p < k1; ++p) {
          if (p == q || p == q + 1)
            continue;
          meas = meas * spow(p > q ? s1[p] - s1p[q] : s1p[q] - s1[p], alpha);
        }
      Jet ph = phase_arg;
      for (int q = 0; q < m; ++q)
        ph -= s1p[q];
      Jet inner = inner_rho(s1p, s2p);
      num += meas * mu_bf(beta, c, s1, s1p, s2, s2p) *
             sexp(ph * (kI * r_last)) * inner;
      den += meas;
      int j = 0;
      while (j < m && ++idx[j] == nodes) {
        idx[j] = 0;
        ++j;
      }
      if (j == m)
        break;
    }
    result = muf * (num / den);
  }

  // Berezin integral: coefficient of the full product of the proxies
  for (int p = k2 - 1; p >= 0; --p)
    result = result.coeff_of(n0 + p, 1);
  return result;
}

} // namespace detail

//==============================================================================
Cplx recurse_super(double beta, int k1, int k2, const Configuration &s,
                   const Configuration &r, const QuadratureConfig &cfg,
                   Cplx c) {
  cfg.validate();
  if (beta <= 0.0)
    throw DomainError("recurse_super: beta must be positive");
  if (k2 > 4)
    throw UsageError("recurse_super: k2 > 4 is not supported");
  if (s.k1() != k1 || s.k2() != k2 || r.k1() != k1 || r.k2() != k2)
    throw DimensionError("recurse_super: configuration does not match (k1,k2)");
  if (!in_chamber(s.s1))
    throw DomainError("recurse_super: first set must be strictly increasing");

  auto eval = [&](int nodes) {
    std::vector<Jet> s1, s2;
    for (double v : s.s1)
      s1.push_back(Jet::constant({}, v));
    for (double v : s.s2)
      s2.push_back(Jet::constant({}, v));
    std::vector<Cplx> r1(r.s1.begin(), r.s1.end());
    std::vector<Cplx> r2(r.s2.begin(), r.s2.end());
    return detail::rho_super_jet(beta, c, k1, k2, std::move(s1), std::move(s2),
                                 r1, r2, cfg, nodes)
        .value();
  };

  if (k1 <= 1 && k2 <= 1)
    return eval(cfg.nodes); // purely algebraic, no bosonic quadrature

  Cplx prev{}, cur{};
  int nodes = cfg.nodes;
  for (int lvl = 0; lvl < cfg.refine_levels; ++lvl) {
    prev = cur;
    cur = eval(nodes);
    if (lvl > 0 &&
        std::abs(cur - prev) <= cfg.tolerance * std::max(1.0, std::abs(cur)))
      return cur;
    nodes *= 2;
  }
  if (cfg.refine_levels == 1)
    return cur;
  throw AccuracyError("recurse_super: quadrature did not settle within the "
                      "configured refinement levels");
}

//==============================================================================
Cplx alt_solution(double beta, int k2, std::span<const double> s2,
                  std::span<const double> r2, const QuadratureConfig &cfg,
                  Cplx c) {
  cfg.validate();
  if (k2 < 1 || k2 > 4)
    throw UsageError("alt_solution: k2 must be in 1..4");
  if (int(s2.size()) != k2 || int(r2.size()) != k2)
    throw DimensionError("alt_solution: bad dimensions");

  const int ng = 2 * k2;
  using GE = GrassmannElement<Cplx>;

  // normalized second-set measure in the signed exterior algebra:
  // |xi_p|^2 enters through s2'_p = s2_p - c |xi_p|^2
  auto ge_pow1p = [&](const GE &delta, double e) {
    GE acc = GE::scalar(ng, 1.0);
    GE term = acc;
    for (int k = 1; k <= k2; ++k) {
      term = g_mul(term, delta) * Cplx((e - k + 1) / k);
      acc += term;
    }
    return acc;
  };

  const double B = beta * beta / 4.0;
  const double e = beta / 2.0 - B;
  GE mu = GE::scalar(ng, 1.0);
  for (int p = 0; p < k2; ++p)
    for (int q = 0; q < k2; ++q) {
      if (p == q)
        continue;
      const double d = s2[p] - s2[q];
      if (p < q) {
        // [(s2'_p - s2'_q)/(s2_p - s2_q)]^(beta^2/4)
        GE delta = (GE::pair_density(ng, q, 1.0) - GE::pair_density(ng, p, 1.0)) *
                   (c / d);
        mu = g_mul(mu, ge_pow1p(delta, B));
      }
      // [(s2_p - s2'_q)/(s2_p - s2_q)]^(beta/2 - beta^2/4)
      GE delta = GE::pair_density(ng, q, 1.0) * (c / d);
      mu = g_mul(mu, ge_pow1p(delta, e));
    }

  // Phi_{k2}(s2', r2) through the exact nilpotent Taylor expansion
  std::vector<Cplx> base(s2.begin(), s2.end());
  std::vector<Cplx> spec(r2.begin(), r2.end());
  const int nodes = cfg.nodes;
  AnalyticFn phi = AnalyticFn([beta, spec, nodes](const auto &v) {
    using S = std::decay_t<decltype(v[0])>;
    std::vector<S> args(v.begin(), v.end());
    return detail::phi_ordinary_impl<S>(beta, args, spec, nodes);
  });
  std::vector<NilpotentShift> shifts;
  for (int p = 0; p < k2; ++p)
    shifts.push_back({p, -c});
  GE phi_shifted = nilpotent_substitute(phi, base, shifts);

  return berezin_integrate(g_mul(mu, phi_shifted));
}

//==============================================================================
Jet super_measure_integral(
    double beta, Cplx c, const std::vector<Jet> &s1_in,
    const std::vector<Jet> &s2_in, int nodes,
    const std::function<Jet(const std::vector<Jet> &, const std::vector<Jet> &)>
        &gfn) {
  const int k1 = static_cast<int>(s1_in.size());
  const int k2 = static_cast<int>(s2_in.size());
  if (k1 < 1)
    throw DimensionError("super_measure_integral: needs k1 >= 1");

  std::vector<Jet> s1 = s1_in, s2 = s2_in;
  const int n0 = s1.front().nvars();
  const std::vector<int> extra(k2, 1);
  for (auto &j : s1)
    j = j.extended(extra);
  for (auto &j : s2)
    j = j.extended(extra);
  std::vector<int> caps = s1.front().caps();

  std::vector<Jet> s2p;
  for (int p = 0; p < k2; ++p) {
    Jet h = Jet::variable(caps, n0 + p, 0.0);
    s2p.push_back(s2[p] - c * h);
  }

  Jet muf = (k2 == 0) ? Jet::constant(caps, 1.0)
                      : detail::mu_f_normalized(beta, c, s2, s2p);

  Jet result;
  if (k1 == 1) {
    result = muf * detail::mu_bf(beta, c, s1, {}, s2, s2p) * gfn({}, s2p);
  } else {
    const double alpha = 2.0 / beta - 1.0;
    const QuadratureRule rule = gauss_jacobi_rule(nodes, alpha);
    const int m = k1 - 1;
    Jet acc = Jet::constant(caps, 0.0);
    std::vector<int> idx(m, 0);
    std::vector<Jet> s1p(m, acc);
    for (;;) {
      double wgt = 1.0;
      for (int q = 0; q < m; ++q) {
        s1p[q] = s1[q] + (s1[q + 1] - s1[q]) * Cplx(rule.t[idx[q]]);
        wgt *= rule.w[idx[q]];
      }
      Jet meas = Jet::constant(caps, wgt);
      for (int q = 0; q < m; ++q)
        meas = meas * detail::spow(s1[q + 1] - s1[q], 2.0 * alpha + 1.0);
      for (int q = 0; q < m; ++q)
        for (int p = q + 1; p < m; ++p)
          meas = meas * (s1p[p] - s1p[q]);
      for (int q = 0; q < m; ++q)
        for (int p = 0; p < k1; ++p) {
          if (p == q || p == q + 1)
            continue;
          meas =
              meas * detail::spow(p > q ? s1[p] - s1p[q] : s1p[q] - s1[p], alpha);
        }
      // the outer Vandermonde factor of the bosonic measure
      Jet outer = Jet::constant(caps, 1.0);
      for (int p = 0; p < k1; ++p)
        for (int q = p + 1; q < k1; ++q)
          outer = outer * detail::spow(s1[q] - s1[p], 1.0 - 4.0 / beta);
      acc += meas * outer * detail::mu_bf(beta, c, s1, s1p, s2, s2p) *
             gfn(s1p, s2p);
      int j = 0;
      while (j < m && ++idx[j] == nodes) {
        idx[j] = 0;
        ++j;
      }
      if (j == m)
        break;
    }
    result = muf * acc;
  }

  for (int p = k2 - 1; p >= 0; --p)
    result = result.coeff_of(n0 + p, 1);
  return result;
}

} // namespace supercms
