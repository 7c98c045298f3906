#include "supercms/identities.hpp"
#include "supercms/recursion.hpp"
#include "supercms/weights.hpp"

#include <cmath>

namespace supercms {

namespace {

ResidualReport difference_report(std::string name, Cplx lhs, Cplx rhs,
                                 double tol, const Configuration &pt) {
  ResidualReport r;
  r.name = std::move(name);
  r.point = pt;
  r.applied_value = lhs;
  r.expected_eigenvalue = rhs; // the reference route
  r.residual = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
  r.tolerance = tol;
  r.pass = r.residual <= tol;
  return r;
}

} // namespace

//==============================================================================
ResidualReport check_commut(double beta, int k2, const AnalyticFn &f,
                            std::span<const double> s2, double tolerance,
                            Cplx c) {
  if (k2 < 1 || int(s2.size()) != k2)
    throw DimensionError("check_commut: bad dimensions");
  if (k2 > 3)
    throw UsageError("check_commut: k2 > 3 not supported");
  std::vector<double> sv(s2.begin(), s2.end());
  if (!in_chamber(sv))
    throw DomainError("check_commut: second set must be strictly increasing");

  // kernel integral as a function of the outer coordinates:
  // F(y) = Berezin[ mu_F(y', y) f(y') ],  y'_p = y_p - c |xi_p|^2
  auto kernel_jet = [&](int active_var, int order) {
    // space: d (cap `order`) on the active variable, then the proxies
    std::vector<int> caps;
    if (active_var >= 0)
      caps.push_back(order);
    for (int p = 0; p < k2; ++p)
      caps.push_back(1);
    const int etabase = (active_var >= 0) ? 1 : 0;
    std::vector<Jet> y(k2, Jet::constant(caps, 0.0));
    for (int p = 0; p < k2; ++p)
      y[p] = (p == active_var) ? Jet::variable(caps, 0, s2[p])
                               : Jet::constant(caps, s2[p]);
    std::vector<Jet> yp;
    for (int p = 0; p < k2; ++p)
      yp.push_back(y[p] - c * Jet::variable(caps, etabase + p, 0.0));
    Jet muf = detail::mu_f_normalized(beta, c, y, yp);

    Jet integrand;
    if (active_var >= 0) {
      integrand = muf * f(yp);
    } else {
      // operator under the integral: ordinary radial operator in the primed
      // variables, log-derivative of the power of the Vandermonde
      JetCallDerivs cd = call_with_derivs(f, yp, 2);
      Jet g = Jet::constant(caps, 0.0);
      for (int p = 0; p < k2; ++p) {
        Jet ld = Jet::constant(caps, 0.0);
        for (int q = 0; q < k2; ++q)
          if (q != p)
            ld += Cplx(beta) / (yp[p] - yp[q]);
        g += cd.d2[p] + ld * cd.d1[p];
      }
      integrand = muf * g;
    }
    for (int p = k2 - 1; p >= 0; --p)
      integrand = integrand.coeff_of(etabase + p, 1);
    return integrand;
  };

  Cplx lhs = 0.0;
  for (int v = 0; v < k2; ++v) {
    Jet F = kernel_jet(v, 2);
    Cplx ld = 0.0;
    for (int q = 0; q < k2; ++q)
      if (q != v)
        ld += beta / (s2[v] - s2[q]);
    lhs += F.deriv1(0, 2) + ld * F.deriv1(0, 1);
  }

  const Cplx rhs = kernel_jet(-1, 0).value();

  Configuration pt({}, sv);
  return difference_report("commut", lhs, rhs, tolerance, pt);
}

//==============================================================================
std::pair<ResidualReport, ResidualReport>
check_invariance(double beta, int k1, int k2, const AnalyticFn &f,
                 const Configuration &s, const QuadratureConfig &cfg,
                 double tol_momentum, double tol_laplace, Cplx c) {
  cfg.validate();
  if (k1 < 1 || k1 > 2 || k2 < 0 || k2 > 2)
    throw UsageError("check_invariance: supported ranges are k1 in 1..2, "
                     "k2 in 0..2");
  if (s.k1() != k1 || s.k2() != k2)
    throw DimensionError("check_invariance: configuration mismatch");
  if (!in_chamber(s.s1) || !in_chamber(s.s2))
    throw DomainError("check_invariance: point must lie in the chamber");

  const double a1 = std::sqrt(beta) / 2.0; // 1/sqrt(beta1), beta1 = 4/beta
  const double a2 = 1.0 / std::sqrt(beta);

  WeightSpec outer_w;
  outer_w.family = WeightFamily::two_param;
  outer_w.beta1 = 4.0 / beta;
  outer_w.beta2 = beta;
  outer_w.c = c;
  outer_w.k1 = k1;
  outer_w.k2 = k2;

  auto outer_integral = [&](int active_var, int order,
                            const std::function<Jet(const std::vector<Jet> &,
                                                    const std::vector<Jet> &)>
                                &gfn) {
    std::vector<int> caps;
    if (active_var >= 0)
      caps.push_back(order);
    std::vector<Jet> s1j, s2j;
    int v = 0;
    for (int p = 0; p < k1; ++p, ++v)
      s1j.push_back(v == active_var ? Jet::variable(caps, 0, s.s1[p])
                                    : Jet::constant(caps, s.s1[p]));
    for (int p = 0; p < k2; ++p, ++v)
      s2j.push_back(v == active_var ? Jet::variable(caps, 0, s.s2[p])
                                    : Jet::constant(caps, s.s2[p]));
    return super_measure_integral(beta, c, s1j, s2j, cfg.nodes, gfn);
  };

  auto plain_f = [&](const std::vector<Jet> &s1p, const std::vector<Jet> &s2p) {
    std::vector<Jet> args;
    args.reserve(s1p.size() + s2p.size());
    args.insert(args.end(), s1p.begin(), s1p.end());
    args.insert(args.end(), s2p.begin(), s2p.end());
    return f(args);
  };

  //---------------------------------------------------------------- momentum
  Cplx lhs_p = 0.0;
  for (int v = 0; v < k1 + k2; ++v) {
    Jet I = outer_integral(v, 1, plain_f);
    const Cplx d1 = I.deriv1(0, 1);
    lhs_p += (v < k1) ? d1 : -c * d1;
  }

  auto momentum_inside = [&](const std::vector<Jet> &s1p,
                             const std::vector<Jet> &s2p) {
    std::vector<Jet> args;
    args.insert(args.end(), s1p.begin(), s1p.end());
    args.insert(args.end(), s2p.begin(), s2p.end());
    JetCallDerivs cd = call_with_derivs(f, args, 1);
    Jet acc = cd.value * Cplx(0.0);
    const int m = static_cast<int>(s1p.size());
    for (int q = 0; q < m; ++q)
      acc += cd.d1[q];
    for (int p = 0; p < static_cast<int>(s2p.size()); ++p)
      acc -= c * cd.d1[m + p];
    return acc;
  };
  const Cplx rhs_p = outer_integral(-1, 0, momentum_inside).value();

  //---------------------------------------------------------------- laplacean
  Cplx lhs_d = 0.0;
  for (int v = 0; v < k1 + k2; ++v) {
    Jet I = outer_integral(v, 2, plain_f);
    const bool first = v < k1;
    const VarRef ref{first ? 1 : 2, first ? v : v - k1};
    const Cplx ld = weight_logderiv(outer_w, s, ref);
    lhs_d += (first ? a1 : a2) * (I.deriv1(0, 2) + ld * I.deriv1(0, 1));
  }

  WeightSpec inner_w = outer_w;
  inner_w.k1 = k1 - 1;
  auto laplace_inside = [&](const std::vector<Jet> &s1p,
                            const std::vector<Jet> &s2p) {
    std::vector<Jet> args;
    args.insert(args.end(), s1p.begin(), s1p.end());
    args.insert(args.end(), s2p.begin(), s2p.end());
    JetCallDerivs cd = call_with_derivs(f, args, 2);
    Jet acc = cd.value * Cplx(0.0);
    const int m = static_cast<int>(s1p.size());
    for (int q = 0; q < m; ++q) {
      Jet ld = weight_logderiv<Jet>(inner_w, s1p, s2p, VarRef{1, q});
      acc += Cplx(a1) * (cd.d2[q] + ld * cd.d1[q]);
    }
    for (int p = 0; p < static_cast<int>(s2p.size()); ++p) {
      Jet ld = weight_logderiv<Jet>(inner_w, s1p, s2p, VarRef{2, p});
      acc += Cplx(a2) * (cd.d2[m + p] + ld * cd.d1[m + p]);
    }
    return acc;
  };
  const Cplx rhs_d = outer_integral(-1, 0, laplace_inside).value();

  return {difference_report("invariance-momentum", lhs_p, rhs_p, tol_momentum, s),
          difference_report("invariance-laplace", lhs_d, rhs_d, tol_laplace, s)};
}

//==============================================================================
namespace {

struct B9Context {
  double beta;
  Cplx c;
  std::vector<Cplx> x;  // s1,  size k1
  std::vector<Cplx> xp; // s1', size k1-1
  std::vector<Cplx> y;  // s2,  size k2
  std::vector<Cplx> yp; // s2', size k2
  double A, B, C;       // mixed-factor exponents

  Cplx u(int i) const { return c * yp[i]; }
  Cplx v(int i) const { return c * y[i]; }

  Cplx dlog_x(int p) const {
    Cplx acc = 0.0;
    for (std::size_t l = 0; l < y.size(); ++l)
      acc += -A / (v(int(l)) - x[p]) - B / (u(int(l)) - x[p]);
    return acc;
  }
  Cplx d2log_x(int p) const {
    Cplx acc = 0.0;
    for (std::size_t l = 0; l < y.size(); ++l) {
      const Cplx d1 = v(int(l)) - x[p], d2 = u(int(l)) - x[p];
      acc += -A / (d1 * d1) - B / (d2 * d2);
    }
    return acc;
  }
  Cplx dlog_xp(int q) const {
    Cplx acc = 0.0;
    for (std::size_t l = 0; l < y.size(); ++l)
      acc += -B / (v(int(l)) - xp[q]) - C / (u(int(l)) - xp[q]);
    return acc;
  }
  Cplx d2log_xp(int q) const {
    Cplx acc = 0.0;
    for (std::size_t l = 0; l < y.size(); ++l) {
      const Cplx d1 = v(int(l)) - xp[q], d2 = u(int(l)) - xp[q];
      acc += -B / (d1 * d1) - C / (d2 * d2);
    }
    return acc;
  }
  Cplx dlog_y(int l) const {
    Cplx acc = 0.0;
    for (std::size_t p = 0; p < x.size(); ++p)
      acc += c * A / (v(l) - x[p]);
    for (std::size_t q = 0; q < xp.size(); ++q)
      acc += c * B / (v(l) - xp[q]);
    return acc;
  }
  Cplx d2log_y(int l) const {
    Cplx acc = 0.0;
    for (std::size_t p = 0; p < x.size(); ++p) {
      const Cplx d = v(l) - x[p];
      acc += A / (d * d);
    }
    for (std::size_t q = 0; q < xp.size(); ++q) {
      const Cplx d = v(l) - xp[q];
      acc += B / (d * d);
    }
    return acc;
  }
  Cplx dlog_yp(int l) const {
    Cplx acc = 0.0;
    for (std::size_t p = 0; p < x.size(); ++p)
      acc += c * B / (u(l) - x[p]);
    for (std::size_t q = 0; q < xp.size(); ++q)
      acc += c * C / (u(l) - xp[q]);
    return acc;
  }
  Cplx d2log_yp(int l) const {
    Cplx acc = 0.0;
    for (std::size_t p = 0; p < x.size(); ++p) {
      const Cplx d = u(l) - x[p];
      acc += B / (d * d);
    }
    for (std::size_t q = 0; q < xp.size(); ++q) {
      const Cplx d = u(l) - xp[q];
      acc += C / (d * d);
    }
    return acc;
  }
};

} // namespace

ResidualReport check_B9(double beta, const Configuration &s,
                        const Configuration &sp, double tolerance, Cplx c) {
  const int k1 = s.k1(), k2 = s.k2();
  if (sp.k1() != k1 - 1 || sp.k2() != k2)
    throw DimensionError("check_B9: primed configuration must be (k1-1, k2)");
  if (k1 < 1 || k2 < 1)
    throw DimensionError("check_B9: needs k1 >= 1 and k2 >= 1");

  B9Context ctx;
  ctx.beta = beta;
  ctx.c = c;
  ctx.x.assign(s.s1.begin(), s.s1.end());
  ctx.xp.assign(sp.s1.begin(), sp.s1.end());
  ctx.y.assign(s.s2.begin(), s.s2.end());
  ctx.yp.assign(sp.s2.begin(), sp.s2.end());
  ctx.A = 2.0 - beta / 2.0;
  ctx.B = beta / 2.0 - 1.0;
  ctx.C = -beta / 2.0;

  const double sb = std::sqrt(beta);
  const double a1 = sb / 2.0, a2 = 1.0 / sb;
  const double g = beta / 2.0 - 1.0;

  //---------------------------------------------------------- right-hand side
  WeightSpec w_outer{WeightFamily::two_param, 4.0 / beta, beta, c, k1, k2};
  WeightSpec w_inner{WeightFamily::two_param, 4.0 / beta, beta, c, k1 - 1, k2};
  std::vector<Cplx> x1(ctx.x), x2(ctx.y), p1(ctx.xp), p2(ctx.yp);

  Cplx opsum = 0.0;
  for (int p = 0; p < k1; ++p) {
    const Cplx dl = ctx.dlog_x(p);
    const Cplx L = weight_logderiv<Cplx>(w_outer, x1, x2, VarRef{1, p});
    opsum += a1 * (dl * dl + ctx.d2log_x(p) + L * dl);
  }
  for (int l = 0; l < k2; ++l) {
    const Cplx dl = ctx.dlog_y(l);
    const Cplx L = weight_logderiv<Cplx>(w_outer, x1, x2, VarRef{2, l});
    opsum += a2 * (dl * dl + ctx.d2log_y(l) + L * dl);
  }
  for (int q = 0; q < k1 - 1; ++q) {
    const Cplx dl = ctx.dlog_xp(q);
    const Cplx L = weight_logderiv<Cplx>(w_inner, p1, p2, VarRef{1, q});
    opsum += a1 * (dl * dl + ctx.d2log_xp(q) + L * dl);
  }
  for (int l = 0; l < k2; ++l) {
    const Cplx dl = ctx.dlog_yp(l);
    const Cplx L = weight_logderiv<Cplx>(w_inner, p1, p2, VarRef{2, l});
    opsum += a2 * (dl * dl + ctx.d2log_yp(l) + L * dl);
  }

  Cplx rhs = -opsum;
  for (int q = 0; q < k1 - 1; ++q) {
    const Cplx dl = ctx.dlog_xp(q);
    rhs += sb * dl * dl;
  }
  for (int l = 0; l < k2; ++l) {
    const Cplx dl = ctx.dlog_yp(l);
    rhs += (2.0 / sb) * dl * dl;
  }

  //----------------------------------------------------------- left-hand side
  auto Kx = [&](Cplx z) { // sum_k 1/(z - x_k) - sum_l 1/(z - x'_l)
    Cplx acc = 0.0;
    for (const auto &xx : ctx.x)
      acc += 1.0 / (z - xx);
    for (const auto &xx : ctx.xp)
      acc -= 1.0 / (z - xx);
    return acc;
  };

  Cplx mf = 0.0;
  for (int i = 0; i < k2; ++i)
    for (int j = 0; j < k2; ++j) {
      if (i == j)
        continue;
      const Cplx ui = ctx.u(i), uj = ctx.u(j), vi = ctx.v(i), vj = ctx.v(j);
      mf += sb * g * Kx(ui) / (ui - uj);
      mf += sb * g * g * Kx(ui) * (1.0 / (ui - uj) - 1.0 / (ui - vj));
      mf += sb * g * g * Kx(vi) * (1.0 / (vi - vj) - 1.0 / (vi - uj));
      mf -= sb * g * Kx(vi) / (vi - vj);
    }
  for (int i = 0; i < k2; ++i) {
    const Cplx vi = ctx.v(i);
    Cplx acc = 0.0;
    for (const auto &xx : ctx.x)
      acc += 1.0 / ((vi - xx) * (vi - xx));
    for (const auto &xx : ctx.xp)
      acc -= 1.0 / ((vi - xx) * (vi - xx));
    mf += (2.0 / sb) * g * acc;
  }

  Cplx mb = 0.0;
  for (int l = 0; l < k1 - 1; ++l)
    for (int k = 0; k < k1 - 1; ++k) {
      if (k == l)
        continue;
      for (int i = 0; i < k2; ++i)
        mb += sb * g / (ctx.xp[l] - ctx.xp[k]) *
              (1.0 / (ctx.v(i) - ctx.xp[l]) - 1.0 / (ctx.u(i) - ctx.xp[l]));
    }
  for (int l = 0; l < k1 - 1; ++l)
    for (int k = 0; k < k1; ++k) {
      if (k == l)
        continue;
      for (int i = 0; i < k2; ++i)
        mb += (2.0 / sb) * g * (g - 1.0) / (ctx.x[l] - ctx.x[k]) *
              (1.0 / (ctx.v(i) - ctx.xp[l]) - 1.0 / (ctx.u(i) - ctx.x[l]));
    }
  for (int i = 0; i < k2; ++i)
    for (int k = 0; k < k1; ++k)
      for (int l = 0; l < k1 - 1; ++l) {
        const Cplx vi = ctx.v(i), ui = ctx.u(i);
        mb -= (2.0 / sb) * g * g *
              (1.0 / ((vi - ctx.xp[l]) * (vi - ctx.x[k])) -
               1.0 / ((ui - ctx.xp[l]) * (ui - ctx.x[k])));
      }
  for (int i = 0; i < k2; ++i)
    for (int k = 0; k < k1 - 1; ++k) {
      const Cplx vi = ctx.v(i), ui = ctx.u(i);
      mb += sb * g *
            (1.0 / ((vi - ctx.xp[k]) * (vi - ctx.xp[k])) -
             1.0 / ((ui - ctx.xp[k]) * (ui - ctx.xp[k])));
    }

  const Cplx lhs = mb + mf;
  ResidualReport rep;
  rep.name = "B9";
  rep.point = s;
  rep.applied_value = lhs;
  rep.expected_eigenvalue = rhs;
  const double scale = std::max(1.0, std::abs(lhs) + std::abs(rhs));
  rep.residual = std::abs(lhs - rhs) / scale;
  rep.tolerance = tolerance;
  rep.pass = rep.residual <= tolerance;
  return rep;
}

} // namespace supercms
