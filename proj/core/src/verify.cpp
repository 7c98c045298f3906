#include "supercms/verify.hpp"

#include "supercms/identities.hpp"
#include "supercms/operators.hpp"
#include "supercms/physics.hpp"
#include "supercms/recursion.hpp"
#include "supercms/rng.hpp"
#include "supercms/solutions.hpp"
#include "supercms/weights.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <thread>

namespace supercms {

int resolve_thread_count(int requested) {
  if (requested > 0)
    return requested;
  if (const char *env = std::getenv("CMS_SUPER_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0)
      return n;
  }
  return 1;
}

namespace {

//------------------------------------------------------------------ helpers

CheckResult make_check(std::string name, std::string model,
                       const Configuration &pt, double residual, double tol) {
  CheckResult c;
  c.name = std::move(name);
  c.model = std::move(model);
  c.point = render_point(pt);
  c.residual = residual;
  c.tolerance = tol;
  c.pass = residual <= tol;
  return c;
}

//! Run `n` independent jobs, each appending checks to its own slot; results
//! are concatenated in job order so the report does not depend on the
//! worker count.
std::vector<CheckResult>
run_jobs(int threads, int n,
         const std::function<void(int, std::vector<CheckResult> &)> &job) {
  std::vector<std::vector<CheckResult>> slots(n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i)
      job(i, slots[i]);
  } else {
    std::vector<std::thread> pool;
    std::atomic_int next{0};
    const int workers = std::min(threads, n);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (;;) {
          const int i = next.fetch_add(1);
          if (i >= n)
            return;
          job(i, slots[i]);
        }
      });
    for (auto &t : pool)
      t.join();
  }
  std::vector<CheckResult> out;
  for (auto &s : slots)
    out.insert(out.end(), s.begin(), s.end());
  return out;
}

std::string model_tag(const char *family, double b1, double b2) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%s(beta1=%g,beta2=%g)", family, b1, b2);
  return buf;
}

//------------------------------------------------- closed-form test functions

AnalyticFn plane_wave_fn(std::vector<double> k) {
  return AnalyticFn([k](const auto &v) {
    using S = std::decay_t<decltype(v[0])>;
    S arg = v[0] * Cplx(0.0);
    for (std::size_t i = 0; i < v.size(); ++i)
      arg += v[i] * (kI * Cplx(k[i]));
    return detail::sexp(arg);
  });
}

AnalyticFn phi2_fn(double beta, double r1, double r2) {
  return AnalyticFn([beta, r1, r2](const auto &v) {
    using S = std::decay_t<decltype(v[0])>;
    std::vector<S> s(v.begin(), v.end());
    std::vector<S> r{v[0] * Cplx(0.0) + Cplx(r1), v[0] * Cplx(0.0) + Cplx(r2)};
    return phi2<S>(beta, s, r);
  });
}

AnalyticFn rho11_general_fn(double b1, double b2, SolutionBranch br, double r1,
                            double r2) {
  return AnalyticFn([=](const auto &v) {
    using S = std::decay_t<decltype(v[0])>;
    S c1 = v[0] * Cplx(0.0) + Cplx(r1);
    S c2 = v[0] * Cplx(0.0) + Cplx(r2);
    return rho11_general<S>(b1, b2, br, v[0], v[1], c1, c2);
  });
}

AnalyticFn rho11_hyperbola_fn(double beta, double r1, double r2) {
  return AnalyticFn([=](const auto &v) {
    using S = std::decay_t<decltype(v[0])>;
    S c1 = v[0] * Cplx(0.0) + Cplx(r1);
    S c2 = v[0] * Cplx(0.0) + Cplx(r2);
    return rho11_hyperbola<S>(beta, v[0], v[1], c1, c2);
  });
}

AnalyticFn rho12_fn(double beta, double r1, double p1, double p2) {
  return AnalyticFn([=](const auto &v) {
    using S = std::decay_t<decltype(v[0])>;
    S a = v[0] * Cplx(0.0) + Cplx(r1);
    S b = v[0] * Cplx(0.0) + Cplx(p1);
    S c = v[0] * Cplx(0.0) + Cplx(p2);
    return rho12_hyperbola<S>(beta, v[0], v[1], v[2], a, b, c);
  });
}

} // namespace

//==============================================================================
SuiteReport run_eigen_suite(const VerifyOptions &opt) {
  SuiteReport rep;
  rep.suite = "eigen";
  const int threads = resolve_thread_count(opt.threads);

  struct Item {
    std::string name;
    std::function<void(std::vector<CheckResult> &)> run;
  };
  std::vector<Item> items;

  // plane wave, single coordinate
  items.push_back({"plane-wave", [&](std::vector<CheckResult> &out) {
    ModelSpec m;
    m.family = ModelFamily::ordinary;
    m.beta = 2.0;
    m.k1 = 1;
    const double k = 2.0;
    Configuration pt({0.7}, {});
    Configuration spec({k}, {});
    auto r = eigen_residual(m, plane_wave_fn({k}), pt, spec, 1e-10,
                            "eigen/plane-wave");
    out.push_back(make_check(r.name, "ordinary(beta=2,N=1)", pt, r.residual,
                             r.tolerance));
  }});

  // two-particle closed form under the ordinary operator
  for (double beta : {1.0, 2.0, 4.0}) {
    items.push_back({"phi2", [&, beta](std::vector<CheckResult> &out) {
      Rng rng(opt.seed + std::uint64_t(beta * 16));
      ModelSpec m;
      m.family = ModelFamily::ordinary;
      m.beta = beta;
      m.k1 = 2;
      const double r1 = rng.uniform(0.4, 1.4), r2 = rng.uniform(1.6, 2.4);
      Configuration pt(rng.chamber(2, -1.5, 1.5, 0.3), {});
      Configuration spec({beta * r1 / 2.0, beta * r2 / 2.0}, {});
      auto r = eigen_residual(m, phi2_fn(beta, r1, r2), pt, spec, 1e-8,
                              "eigen/phi2");
      out.push_back(make_check("eigen/phi2", model_tag("ordinary", beta, 0),
                               pt, r.residual, r.tolerance));
    }});
  }

  // general (1,1) solution, both branches
  for (int i = 0; i < 5; ++i) {
    items.push_back({"rho11", [&, i](std::vector<CheckResult> &out) {
      Rng rng(opt.seed * 977 + std::uint64_t(i));
      double b1 = opt.beta1, b2 = opt.beta2;
      if (i > 0) { // vary around the requested pair
        for (int t = 0; t < 100; ++t) {
          b1 = rng.uniform(0.3, 5.5);
          b2 = rng.uniform(0.3, 5.5);
          const double nu = 0.5 * std::sqrt(b1 * b2) + 0.5;
          if (std::abs(std::sqrt(b1) - std::sqrt(b2)) > 0.25 &&
              std::abs(nu - std::round(nu)) > 1e-3)
            break;
        }
      }
      ModelSpec m;
      m.family = ModelFamily::superunitary;
      m.beta1 = b1;
      m.beta2 = b2;
      m.k1 = 1;
      m.k2 = 1;
      for (SolutionBranch br : {SolutionBranch::plus, SolutionBranch::minus}) {
        double r1 = 0, r2 = 0, s1 = 0, s2 = 0;
        for (int t = 0; t < 200; ++t) {
          s1 = rng.uniform(-1.2, 1.2);
          s2 = rng.uniform(0.3, 1.5);
          r1 = rng.uniform(0.4, 1.6);
          r2 = rng.uniform(0.4, 1.6);
          const Cplx z = (std::sqrt(b2) * r1 - kI * std::sqrt(b1) * r2) /
                         (std::sqrt(b2) - std::sqrt(b1)) * Cplx(s1, -s2);
          if (z.real() > 0.3 && std::abs(z) < 8.0)
            break;
        }
        Configuration pt({s1}, {s2});
        Configuration spec({r1}, {r2});
        auto r = eigen_residual(m, rho11_general_fn(b1, b2, br, r1, r2), pt,
                                spec, 1e-6, "eigen/rho11-general");
        const char *bn = br == SolutionBranch::plus ? "+" : "-";
        out.push_back(make_check(std::string("eigen/rho11-general") + bn,
                                 model_tag("superunitary", b1, b2), pt,
                                 r.residual, r.tolerance));
      }
    }});
  }

  // hyperbola solutions under the two-parameter operator
  for (double beta : {1.0, 3.0, 4.0}) {
    items.push_back({"rho12", [&, beta](std::vector<CheckResult> &out) {
      Rng rng(opt.seed * 31 + std::uint64_t(beta));
      ModelSpec m;
      m.family = ModelFamily::superunitary;
      m.form = OperatorForm::laplacean;
      m.beta1 = 4.0 / beta;
      m.beta2 = beta;
      m.k1 = 1;
      m.k2 = 2;
      const double r1 = rng.uniform(0.4, 1.4);
      const double p1 = rng.uniform(0.3, 0.9), p2 = p1 + rng.uniform(0.4, 1.0);
      const auto y = rng.chamber(2, 0.3, 1.8, 0.3);
      Configuration pt({rng.uniform(-1.0, 1.0)}, y);
      Configuration spec({r1}, {beta * p1 / 2.0, beta * p2 / 2.0});
      auto r = eigen_residual(m, rho12_fn(beta, r1, p1, p2), pt, spec, 1e-5,
                              "eigen/rho12");
      out.push_back(make_check("eigen/rho12",
                               model_tag("superunitary", 4.0 / beta, beta), pt,
                               r.residual, r.tolerance));
    }});
  }

  auto results = run_jobs(threads, int(items.size()),
                          [&](int i, std::vector<CheckResult> &out) {
                            items[i].run(out);
                          });
  rep.checks = std::move(results);
  canonicalize(rep);
  return rep;
}

//==============================================================================
SuiteReport run_identities_suite(const VerifyOptions &opt) {
  SuiteReport rep;
  rep.suite = "identities";
  const int threads = resolve_thread_count(opt.threads);
  const double betas[] = {0.5, 1.0, 2.0, 3.0, 4.0};

  struct Job {
    std::function<void(std::vector<CheckResult> &)> run;
  };
  std::vector<Job> jobs;

  for (double beta : betas) {
    jobs.push_back({[&, beta](std::vector<CheckResult> &out) {
      Rng rng(opt.seed + std::uint64_t(beta * 1000));
      // commutation, two and three second-set coordinates
      for (int k2 : {2, 3}) {
        const auto y = rng.chamber(k2, 0.4, 2.2, 0.35);
        AnalyticFn f([](const auto &v) {
          using S = std::decay_t<decltype(v[0])>;
          S e1 = v[0] * Cplx(0.0), e2 = e1;
          for (const auto &x : v)
            e1 += x;
          for (std::size_t p = 0; p < v.size(); ++p)
            for (std::size_t q = p + 1; q < v.size(); ++q)
              e2 += v[p] * v[q];
          return e1 * e1 + e2 * Cplx(0.5);
        });
        auto r = check_commut(beta, k2, f, y, 1e-9);
        out.push_back(make_check("identities/commut-k2=" + std::to_string(k2),
                                 model_tag("hyperbola", 4.0 / beta, beta),
                                 r.point, r.residual, r.tolerance));
      }
      // invariance identities
      for (int k1 : {1, 2}) {
        for (int k2 : {1, 2}) {
          Configuration s(rng.chamber(k1, -1.0, 1.0, 0.4),
                          rng.chamber(k2, 0.4, 2.0, 0.4));
          const int m = k1 - 1;
          AnalyticFn f([m](const auto &v) {
            using S = std::decay_t<decltype(v[0])>;
            S b = v[0] * Cplx(0.0), y = b;
            for (int q = 0; q < m; ++q)
              b += v[q];
            for (std::size_t p = m; p < v.size(); ++p)
              y += v[p];
            return b * b + y * y * Cplx(0.25) + b * Cplx(0.5) + Cplx(1.0);
          });
          QuadratureConfig q;
          q.nodes = opt.nodes;
          const double tol_l = (k1 >= 2) ? 1e-5 : 1e-9;
          auto [rp, rl] = check_invariance(beta, k1, k2, f, s, q, 1e-9, tol_l);
          const std::string tag = "-k1=" + std::to_string(k1) +
                                  ",k2=" + std::to_string(k2);
          out.push_back(make_check("identities/momentum" + tag,
                                   model_tag("hyperbola", 4.0 / beta, beta), s,
                                   rp.residual, rp.tolerance));
          out.push_back(make_check("identities/laplace" + tag,
                                   model_tag("hyperbola", 4.0 / beta, beta), s,
                                   rl.residual, rl.tolerance));
        }
      }
      // mixed-measure cancellation
      for (int k2 : {1, 2}) {
        Configuration s(rng.chamber(2, -1.2, 1.2, 0.5),
                        rng.chamber(k2, 0.4, 2.0, 0.5));
        Configuration sp(rng.chamber(1, -0.4, 0.6, 0.2),
                         rng.chamber(k2, 0.5, 2.3, 0.45));
        auto r = check_B9(beta, s, sp, 1e-9);
        out.push_back(make_check("identities/B9-k2=" + std::to_string(k2),
                                 model_tag("hyperbola", 4.0 / beta, beta), s,
                                 r.residual, r.tolerance));
      }
    }});
  }

  rep.checks = run_jobs(threads, int(jobs.size()),
                        [&](int i, std::vector<CheckResult> &out) {
                          jobs[i].run(out);
                        });
  canonicalize(rep);
  return rep;
}

//==============================================================================
SuiteReport run_recursion_suite(const VerifyOptions &opt) {
  SuiteReport rep;
  rep.suite = "recursion";
  const int threads = resolve_thread_count(opt.threads);

  std::vector<std::function<void(std::vector<CheckResult> &)>> jobs;

  for (double beta : {1.0, 2.0, 4.0}) {
    jobs.push_back([&, beta](std::vector<CheckResult> &out) {
      Rng rng(opt.seed ^ std::uint64_t(beta * 4096));
      QuadratureConfig q;
      q.nodes = opt.nodes;
      q.refine_levels = 3;
      q.tolerance = 1e-8;
      for (int i = 0; i < 3; ++i) {
        const auto x = rng.chamber(2, -1.5, 1.5, 0.4);
        const double r1 = rng.uniform(0.3, 1.2), r2 = rng.uniform(1.4, 2.2);
        const std::vector<double> k{beta * r1 / 2.0, beta * r2 / 2.0};
        const Cplx viaq = recurse_ordinary(beta, 2, x, k, q);
        std::vector<Cplx> s{x[0], x[1]}, r{r1, r2};
        const Cplx closed = phi2<Cplx>(beta, s, r);
        const double dev =
            std::abs(viaq - closed) / std::max(1.0, std::abs(closed));
        out.push_back(make_check("recursion/phi2-match",
                                 model_tag("ordinary", beta, 0),
                                 Configuration(x, {}), dev, 1e-6));
        // symmetry under swapping arguments and spectral parameters
        std::vector<double> xs{k[0], k[1]};
        std::vector<double> ks{x[0], x[1]};
        if (!(xs[0] < xs[1]))
          std::swap(xs[0], xs[1]), std::swap(ks[0], ks[1]);
        const Cplx swapped = recurse_ordinary(beta, 2, xs, ks, q);
        const double sdev =
            std::abs(viaq - swapped) / std::max(1.0, std::abs(swapped));
        out.push_back(make_check("recursion/symmetry",
                                 model_tag("ordinary", beta, 0),
                                 Configuration(x, {}), sdev, 1e-6));
      }
      // normalization constant is independent of the reference point
      QuadratureConfig qg;
      qg.nodes = 2 * opt.nodes;
      const std::vector<double> xa{-0.8, 0.1, 0.9};
      const std::vector<double> xb{-0.3, 0.6, 2.0};
      const double ga = normalization_G(beta, 3, xa, qg);
      const double gb = normalization_G(beta, 3, xb, qg);
      out.push_back(make_check("recursion/G-independence",
                               model_tag("ordinary", beta, 0),
                               Configuration(xa, {}),
                               std::abs(ga - gb) / std::max(1.0, std::abs(gb)),
                               1e-6));
    });
  }

  // superspace recursion against the closed low-rank solutions
  jobs.push_back([&](std::vector<CheckResult> &out) {
    Rng rng(opt.seed + 555);
    QuadratureConfig q;
    q.nodes = opt.nodes;
    for (double beta : {0.7, 1.0, 2.0, 3.0, 4.0}) {
      const double s1 = rng.uniform(-1.0, 1.0), s2 = rng.uniform(0.3, 1.5);
      const double r1 = rng.uniform(0.3, 1.5), r2 = rng.uniform(0.3, 1.5);
      const Cplx rec = recurse_super(beta, 1, 1, Configuration({s1}, {s2}),
                                     Configuration({r1}, {beta * r2 / 2.0}), q);
      const Cplx closed = rho11_hyperbola<Cplx>(beta, s1, s2, r1, r2);
      out.push_back(make_check(
          "recursion/rho11-match", model_tag("hyperbola", 4.0 / beta, beta),
          Configuration({s1}, {s2}),
          std::abs(rec - closed) / std::max(1.0, std::abs(closed)), 1e-10));
    }
    for (double beta : {1.0, 3.0, 4.0}) {
      const double x = rng.uniform(-1.0, 1.0);
      const auto y = rng.chamber(2, 0.3, 1.8, 0.4);
      const double r1 = rng.uniform(0.3, 1.4);
      const double p1 = rng.uniform(0.3, 0.9), p2 = p1 + rng.uniform(0.4, 1.0);
      const Cplx rec = recurse_super(
          beta, 1, 2, Configuration({x}, y),
          Configuration({r1}, {beta * p1 / 2.0, beta * p2 / 2.0}), q);
      const Cplx closed = rho12_hyperbola<Cplx>(beta, x, y[0], y[1], r1, p1, p2);
      out.push_back(make_check(
          "recursion/rho12-match", model_tag("hyperbola", 4.0 / beta, beta),
          Configuration({x}, y),
          std::abs(rec - closed) / std::max(1.0, std::abs(closed)), 1e-6));
    }
  });

  rep.checks = run_jobs(threads, int(jobs.size()),
                        [&](int i, std::vector<CheckResult> &out) {
                          jobs[i](out);
                        });
  canonicalize(rep);
  return rep;
}

//==============================================================================
SuiteReport run_physics_suite(const VerifyOptions &opt) {
  SuiteReport rep;
  rep.suite = "physics";

  // structural zeros of the two-band couplings
  {
    const auto u22 = unitary_couplings(2.0, 2.0);
    const double z =
        std::abs(u22.g11) + std::abs(u22.g22) + std::abs(u22.g12);
    rep.checks.push_back(
        make_check("physics/noninteracting-2-2", "two-band(2,2)",
                   Configuration{}, z, 1e-14));
    const auto ua = unitary_couplings(opt.beta1, opt.beta2);
    const auto ub = unitary_couplings(opt.beta2, opt.beta1);
    rep.checks.push_back(make_check(
        "physics/g12-antisymmetry",
        model_tag("two-band", opt.beta1, opt.beta2), Configuration{},
        std::abs(ua.g12 + ub.g12), 1e-14));
  }

  // angle-constraint table
  {
    const AngleBranch bs[] = {AngleBranch::equal, AngleBranch::half_pi_complement,
                              AngleBranch::three_half_pi_complement};
    double worst = 0.0;
    for (AngleBranch b1 : bs)
      for (AngleBranch b2 : bs) {
        const DipoleFamily fam = solve_dipole_angles(b1, b2);
        const DipoleConfig cfg = fam.sample(0.37, 1.21);
        const auto res = angle_condition_residuals(cfg);
        worst = std::max({worst, std::abs(res[0]), std::abs(res[1]),
                          std::abs(res[2])});
      }
    rep.checks.push_back(make_check("physics/angle-table", "dipole table",
                                    Configuration{}, worst, 1e-12));
  }

  // tensor force at the 45-degree geometry with aligned dipoles
  {
    const double v = tensor_potential({1.0, 0.0}, {0.0, 1.0}, 1.3, 1.3, 0.0, 0.0);
    rep.checks.push_back(make_check("physics/tensor-45deg", "tensor",
                                    Configuration{}, std::abs(v), 1e-14));
  }

  // Hamiltonian match over the grid at fixed dipole angles; cells where the
  // required sigma^2 is negative must report the unphysical configuration
  {
    const DipoleFamily fam =
        solve_dipole_angles(AngleBranch::equal, AngleBranch::equal);
    const DipoleConfig cfg = fam.sample(0.15, 0.25);
    int feasible = 0;
    bool classified_ok = true;
    double worst = 0.0;
    for (double b1 : {0.5, 1.0, 2.0, 3.0, 4.0})
      for (double b2 : {0.5, 1.0, 2.0, 3.0, 4.0}) {
        const double need = -2.0 * (std::sqrt(b1) - std::sqrt(b2)) *
                            (0.5 * std::sqrt(b1 * b2) + 1.0);
        const bool expect_feasible =
            need * std::cos(cfg.th1m + cfg.th2m) >= -1e-12;
        try {
          auto r = hamiltonian_match(b1, b2, cfg, 0, 2, 1, 5, opt.seed);
          ++feasible;
          worst = std::max(worst, r.residual);
          if (!expect_feasible)
            classified_ok = false;
        } catch (const UnphysicalConfigurationError &) {
          if (expect_feasible)
            classified_ok = false;
        }
      }
    rep.checks.push_back(make_check("physics/hamiltonian-match",
                                    "orthosymplectic grid", Configuration{},
                                    feasible > 0 ? worst : 1.0, 1e-10));
    rep.checks.push_back(make_check("physics/feasibility-classification",
                                    "orthosymplectic grid", Configuration{},
                                    classified_ok ? 0.0 : 1.0, 0.5));
  }

  canonicalize(rep);
  return rep;
}

//==============================================================================
std::vector<SuiteReport> run_all_suites(const VerifyOptions &opt) {
  return {run_eigen_suite(opt), run_identities_suite(opt),
          run_recursion_suite(opt), run_physics_suite(opt)};
}

} // namespace supercms
