#include "supercms/physics.hpp"
#include "supercms/rng.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace supercms {

//==============================================================================
UnitaryCouplings unitary_couplings(double beta1, double beta2) {
  if (beta1 < 0.0 || beta2 < 0.0)
    throw DomainError("unitary_couplings: betas must be nonnegative");
  const double p = std::sqrt(beta1), q = std::sqrt(beta2);
  UnitaryCouplings u;
  u.g11 = p * (beta1 / 2.0 - 1.0);
  u.g22 = q * (beta2 / 2.0 - 1.0);
  u.g12 = 0.5 * (p - q) * (0.5 * p * q + 1.0);
  u.m1 = std::sqrt(beta1 / 4.0);
  u.m2 = -std::sqrt(beta2 / 4.0);
  return u;
}

std::vector<std::pair<std::string, double>>
unitary_coefficient_list(double beta1, double beta2) {
  const UnitaryCouplings u = unitary_couplings(beta1, beta2);
  return {{"kinetic-1 (1/2m1)", u.m1 != 0.0 ? 1.0 / (2.0 * u.m1) : 0.0},
          {"kinetic-2 (1/2m2)", u.m2 != 0.0 ? 1.0 / (2.0 * u.m2) : 0.0},
          {"g11", u.g11},
          {"g22 (enters with -)", u.g22},
          {"g12 (enters with -)", u.g12},
          {"m1", u.m1},
          {"m2", u.m2}};
}

//==============================================================================
namespace {

double branch_angle(AngleBranch b, double th_minus) {
  switch (b) {
  case AngleBranch::equal: return th_minus;
  case AngleBranch::half_pi_complement: return kPi / 2.0 - th_minus;
  case AngleBranch::three_half_pi_complement: return 3.0 * kPi / 2.0 - th_minus;
  }
  return th_minus;
}

} // namespace

DipoleFamily solve_dipole_angles(AngleBranch b1, AngleBranch b2) {
  DipoleFamily fam;
  fam.branch1 = b1;
  fam.branch2 = b2;
  fam.th1_free = fam.th2_free = true;
  // the mixed constraint only pins angles when both axes avoid the
  // equal-angle branch and use the same complement
  if (b1 == AngleBranch::half_pi_complement &&
      b2 == AngleBranch::half_pi_complement) {
    fam.th2_free = false;
    fam.pinned_th2 = {kPi / 4.0, 5.0 * kPi / 4.0};
    fam.pinned_th1 = {kPi / 4.0, 5.0 * kPi / 4.0}; // mirrored option
  } else if (b1 == AngleBranch::three_half_pi_complement &&
             b2 == AngleBranch::three_half_pi_complement) {
    fam.th2_free = false;
    fam.pinned_th2 = {3.0 * kPi / 4.0, 7.0 * kPi / 4.0};
    fam.pinned_th1 = {3.0 * kPi / 4.0, 7.0 * kPi / 4.0};
  }
  return fam;
}

DipoleConfig DipoleFamily::sample(double th1, double th2) const {
  DipoleConfig cfg;
  cfg.branch1 = branch1;
  cfg.branch2 = branch2;
  cfg.th1m = th1;
  if (!th2_free) {
    double best = pinned_th2.front();
    for (double v : pinned_th2)
      if (std::abs(v - th2) < std::abs(best - th2))
        best = v;
    cfg.th2m = best;
  } else {
    cfg.th2m = th2;
  }
  cfg.th1p = branch_angle(branch1, cfg.th1m);
  cfg.th2p = branch_angle(branch2, cfg.th2m);
  if (!satisfies_angle_conditions(cfg, 1e-10))
    throw NoDipoleSolutionError("dipole family: sampled angles violate the "
                                "mixed constraint");
  return cfg;
}

std::array<double, 3> angle_condition_residuals(const DipoleConfig &cfg) {
  auto axis = [](double tm, double tp) {
    return std::cos(2.0 * tm) + std::cos(2.0 * tp) - 2.0 * std::cos(tm + tp);
  };
  const double mixed = std::sin(cfg.th1p + cfg.th2m) +
                       std::sin(cfg.th1m + cfg.th2p) -
                       std::sin(cfg.th1m + cfg.th2m) -
                       std::sin(cfg.th1p + cfg.th2p);
  return {axis(cfg.th1m, cfg.th1p), axis(cfg.th2m, cfg.th2p), mixed};
}

bool satisfies_angle_conditions(const DipoleConfig &cfg, double tol) {
  const auto r = angle_condition_residuals(cfg);
  return std::abs(r[0]) <= tol && std::abs(r[1]) <= tol && std::abs(r[2]) <= tol;
}

//==============================================================================
OspCouplings osp_couplings(double beta1, double beta2, const DipoleConfig &cfg,
                           int parity_l) {
  if (beta1 <= 0.0 || beta2 <= 0.0)
    throw DomainError("osp_couplings: betas must be positive");
  if (parity_l != 0 && parity_l != 1)
    throw DomainError("osp_couplings: parity must be 0 or 1");
  if (!satisfies_angle_conditions(cfg, 1e-9))
    throw NoDipoleSolutionError("osp_couplings: angle constraints violated");

  const double p = std::sqrt(beta1), q = std::sqrt(beta2);
  const double gamma = p * q;

  // sum of the four cross-axis angle cosines
  const double sum4 = std::cos(cfg.th1p + cfg.th2p) + std::cos(cfg.th1p + cfg.th2m) +
                      std::cos(cfg.th1m + cfg.th2p) + std::cos(cfg.th1m + cfg.th2m);
  // cross-axis tensor must supply sigma^2 * sum4 / 2 = -2 (p - q)(gamma/2 + 1)
  const double required = -2.0 * (p - q) * (0.5 * gamma + 1.0);
  double sigma_sq = 0.0;
  if (std::abs(sum4) < 1e-12) {
    if (std::abs(required) > 1e-12)
      throw NoDipoleSolutionError(
          "osp_couplings: angular factor vanishes against a nonzero "
          "cross-coupling requirement");
    sigma_sq = 0.0;
  } else {
    sigma_sq = 2.0 * required / sum4;
  }
  if (sigma_sq < -1e-12)
    throw UnphysicalConfigurationError(
        "osp_couplings: required dipole modulus squared is negative");
  sigma_sq = std::max(sigma_sq, 0.0);

  OspCouplings h;
  h.parity_l = parity_l;
  h.sigma_sq = sigma_sq;
  h.h11 = p * (beta1 / 2.0 - 1.0);
  h.h22 = q * (beta2 / 2.0 - 1.0);
  h.h12 = (parity_l == 0 ? 1.0 : -1.0) * (gamma / 4.0) * (q - p);
  h.f1 = p * (beta1 / 2.0 - 1.0) * (4.0 * parity_l - 1.0) / 8.0;
  h.f2 = q * (beta2 / 2.0 - 1.0) * (3.0 - 4.0 * parity_l) / 8.0;
  h.m1 = std::sqrt(beta1 / 4.0);
  h.m2 = std::sqrt(beta2 / 4.0);
  return h;
}

//==============================================================================
double tensor_potential(std::array<double, 2> rp, std::array<double, 2> rq,
                        double sigma_p, double sigma_q, double theta_p,
                        double theta_q) {
  const double dx = rp[0] - rq[0], dy = rp[1] - rq[1];
  const double d2 = dx * dx + dy * dy;
  if (d2 == 0.0)
    throw SingularConfigurationError("tensor_potential: coincident particles",
                                     0, 1);
  const double e1 = dx / std::sqrt(d2), e2 = dy / std::sqrt(d2);
  const double th = theta_p + theta_q;
  const double angular =
      0.5 * (e1 * e1 - e2 * e2) * std::cos(th) + e1 * e2 * std::sin(th);
  return sigma_p * sigma_q * angular / d2;
}

//==============================================================================
namespace {

struct Particle {
  std::array<double, 2> r;
  double sigma;
  double theta;
  int axis; // 1 or 2
};

// All particles of the mirrored configuration: coordinates a_p > 0 on the
// first axis at (+-a_p, 0), b_q > 0 on the second axis at (0, +-b_q).
std::vector<Particle> mirrored_particles(const std::vector<double> &a,
                                         const std::vector<double> &b,
                                         const DipoleConfig &cfg, double sigma) {
  std::vector<Particle> ps;
  for (double x : a) {
    ps.push_back({{x, 0.0}, sigma, cfg.th1p, 1});
    ps.push_back({{-x, 0.0}, sigma, cfg.th1m, 1});
  }
  for (double y : b) {
    ps.push_back({{0.0, y}, sigma, cfg.th2p, 2});
    ps.push_back({{0.0, -y}, sigma, cfg.th2m, 2});
  }
  return ps;
}

} // namespace

ResidualReport hamiltonian_match(double beta1, double beta2,
                                 const DipoleConfig &cfg, int parity_l, int k1,
                                 int k2, int samples, std::uint64_t seed,
                                 double tolerance) {
  const OspCouplings h = osp_couplings(beta1, beta2, cfg, parity_l);
  const double sigma = std::sqrt(h.sigma_sq);

  ModelSpec target;
  target.family = ModelFamily::orthosymplectic;
  target.form = OperatorForm::schroedinger;
  target.beta1 = beta1;
  target.beta2 = beta2;
  target.k1 = k1;
  target.k2 = k2;
  target.parity_l = parity_l;

  Rng rng(seed);
  double worst = 0.0;
  Configuration worst_pt;
  for (int it = 0; it < samples; ++it) {
    const std::vector<double> a = rng.chamber(k1, 0.3, 2.5, 0.15);
    const std::vector<double> b = rng.chamber(k2, 0.3, 2.5, 0.15);
    const auto ps = mirrored_particles(a, b, cfg, sigma);

    // pair part: same-axis inverse-square with h11/h22, cross-axis central
    // with -h12, plus the cross-axis tensor force
    double vphys = 0.0;
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = i + 1; j < ps.size(); ++j) {
        const auto &P = ps[i], &Q = ps[j];
        const double dx = P.r[0] - Q.r[0], dy = P.r[1] - Q.r[1];
        const double d2 = dx * dx + dy * dy;
        if (P.axis == Q.axis) {
          vphys += (P.axis == 1 ? h.h11 : h.h22) / d2;
        } else {
          vphys -= h.h12 / d2;
          vphys += tensor_potential(P.r, Q.r, P.sigma, Q.sigma, P.theta, Q.theta);
        }
      }
    for (const auto &P : ps) {
      const double x2 = P.r[0] * P.r[0] + P.r[1] * P.r[1];
      vphys += (P.axis == 1 ? h.f1 : h.f2) / x2;
    }

    const Configuration pt(a, b);
    const Cplx vmodel = schroedinger_potential(target, pt);
    // the mirrored Hamiltonian equals (-2) times the model operator
    const double ref = 2.0 * vmodel.real();
    const double dev = std::abs(vphys - ref) / std::max(1.0, std::abs(ref));
    if (dev > worst) {
      worst = dev;
      worst_pt = pt;
    }
  }

  ResidualReport rep;
  rep.name = "hamiltonian-match";
  rep.model = target;
  rep.point = worst_pt;
  rep.residual = worst;
  rep.tolerance = tolerance;
  rep.pass = worst <= tolerance;
  return rep;
}

//==============================================================================
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

const char *branch_name(AngleBranch b) {
  switch (b) {
  case AngleBranch::equal: return "equal";
  case AngleBranch::half_pi_complement: return "pi/2-complement";
  case AngleBranch::three_half_pi_complement: return "3pi/2-complement";
  }
  return "?";
}

} // namespace

std::string couplings_unitary_csv(const std::vector<double> &beta1_grid,
                                  const std::vector<double> &beta2_grid) {
  std::ostringstream os;
  os << "beta1,beta2,g11,g22,g12,f1,f2,m1,m2,sigma2,angles,feasible\n";
  for (double b1 : beta1_grid)
    for (double b2 : beta2_grid) {
      const UnitaryCouplings u = unitary_couplings(b1, b2);
      os << fmt(b1) << ',' << fmt(b2) << ',' << fmt(u.g11) << ',' << fmt(u.g22)
         << ',' << fmt(u.g12) << ",,," << fmt(u.m1) << ',' << fmt(u.m2)
         << ",,,1\n";
    }
  return os.str();
}

std::string couplings_osp_csv(const std::vector<double> &beta1_grid,
                              const std::vector<double> &beta2_grid,
                              double theta1, double theta2, int parity_l) {
  std::ostringstream os;
  os << "beta1,beta2,h11,h22,h12,f1,f2,m1,m2,sigma2,angles,feasible\n";
  const DipoleFamily fam =
      solve_dipole_angles(AngleBranch::equal, AngleBranch::equal);
  const DipoleConfig cfg = fam.sample(theta1, theta2);
  for (double b1 : beta1_grid)
    for (double b2 : beta2_grid) {
      os << fmt(b1) << ',' << fmt(b2) << ',';
      try {
        const OspCouplings h = osp_couplings(b1, b2, cfg, parity_l);
        os << fmt(h.h11) << ',' << fmt(h.h22) << ',' << fmt(h.h12) << ','
           << fmt(h.f1) << ',' << fmt(h.f2) << ',' << fmt(h.m1) << ','
           << fmt(h.m2) << ',' << fmt(h.sigma_sq) << ','
           << "th1=" << fmt(theta1) << ";th2=" << fmt(theta2) << ",1\n";
      } catch (const UnphysicalConfigurationError &) {
        os << ",,,,,,,," << "th1=" << fmt(theta1) << ";th2=" << fmt(theta2)
           << ",0\n";
      } catch (const NoDipoleSolutionError &) {
        os << ",,,,,,,," << "th1=" << fmt(theta1) << ";th2=" << fmt(theta2)
           << ",0\n";
      }
    }
  return os.str();
}

std::string dipole_angles_csv() {
  std::ostringstream os;
  os << "branch1,branch2,free_angles,pinned_angle,pinned_values\n";
  const AngleBranch branches[] = {AngleBranch::equal,
                                  AngleBranch::half_pi_complement,
                                  AngleBranch::three_half_pi_complement};
  for (AngleBranch b1 : branches)
    for (AngleBranch b2 : branches) {
      const DipoleFamily fam = solve_dipole_angles(b1, b2);
      os << branch_name(b1) << ',' << branch_name(b2) << ',';
      if (fam.th1_free && fam.th2_free) {
        os << "th1-;th2-,,\n";
      } else {
        os << "th1-,th2-,";
        for (std::size_t i = 0; i < fam.pinned_th2.size(); ++i)
          os << (i ? ";" : "") << fmt(fam.pinned_th2[i]);
        os << '\n';
      }
    }
  return os.str();
}

} // namespace supercms
