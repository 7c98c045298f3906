#pragma once
#include "supercms/operators.hpp"
#include "supercms/types.hpp"

#include <array>
#include <string>
#include <vector>

namespace supercms {

//==============================================================================
// Physical parameter maps of the two many-body Hamiltonians: couplings and
// masses of the two-band model, and the dipole construction that matches the
// quasi-two-dimensional model onto the orthosymplectic operator.

struct UnitaryCouplings {
  double g11, g22, g12;
  double m1, m2; // m2 < 0: lower-band effective mass
};

UnitaryCouplings unitary_couplings(double beta1, double beta2);

//! Coefficient list of the two-band Hamiltonian for report rendering.
std::vector<std::pair<std::string, double>>
unitary_coefficient_list(double beta1, double beta2);

//==============================================================================
// Dipole directions. Per axis the admissible relations between the two
// half-axis angles are theta+ = theta-, or theta- + theta+ = pi/2, or
// theta- + theta+ = 3 pi/2.

enum class AngleBranch { equal, half_pi_complement, three_half_pi_complement };

struct DipoleConfig {
  double th1m = 0.0, th1p = 0.0; // first-axis angles (negative/positive side)
  double th2m = 0.0, th2p = 0.0; // second-axis angles
  double sigma1 = 0.0, sigma2 = 0.0;
  AngleBranch branch1 = AngleBranch::equal;
  AngleBranch branch2 = AngleBranch::equal;
};

//! Free/pinned structure of one cell of the angle-constraint table.
struct DipoleFamily {
  AngleBranch branch1, branch2;
  bool th1_free = true, th2_free = true;
  std::vector<double> pinned_th1; // admissible values when not free
  std::vector<double> pinned_th2;

  //! Build a configuration from the free parameters (pinned angles take the
  //! admissible value closest to the hint, or the first one).
  DipoleConfig sample(double th1, double th2) const;
};

DipoleFamily solve_dipole_angles(AngleBranch b1, AngleBranch b2);

//! All three printed constraints, to the stated tolerance.
bool satisfies_angle_conditions(const DipoleConfig &cfg, double tol = 1e-12);

//! Residuals of the three constraints (two per-axis, one mixed).
std::array<double, 3> angle_condition_residuals(const DipoleConfig &cfg);

//==============================================================================
struct OspCouplings {
  double h11, h22, h12;
  double f1, f2;
  double m1, m2;
  int parity_l;
  double sigma_sq; // common dipole modulus squared solving the cross matching
};

//! Couplings of the quasi-two-dimensional Hamiltonian that reproduce the
//! orthosymplectic operator; throws UnphysicalConfigurationError when the
//! required sigma^2 is negative and NoDipoleSolutionError when the angular
//! factor vanishes against a nonzero right-hand side.
OspCouplings osp_couplings(double beta1, double beta2, const DipoleConfig &cfg,
                           int parity_l);

//==============================================================================
//! Dipole-dipole (tensor) interaction between particles at rp, rq carrying
//! dipole moments (sigma, theta): 1/|rp-rq|^2 times the angular form
//! (e.sig_p)(e.sig_q) - sig_p.sig_q / 2.
double tensor_potential(std::array<double, 2> rp, std::array<double, 2> rq,
                        double sigma_p, double sigma_q, double theta_p,
                        double theta_q);

//==============================================================================
//! Assemble the quasi-two-dimensional Hamiltonian potential coefficient by
//! coefficient (mirrored particles, pair terms, centrals, cross-axis tensor)
//! and compare against the orthosymplectic potential at `samples` random
//! chamber points. Reports the maximum relative discrepancy.
ResidualReport hamiltonian_match(double beta1, double beta2,
                                 const DipoleConfig &cfg, int parity_l, int k1,
                                 int k2, int samples, std::uint64_t seed,
                                 double tolerance = 1e-10);

//==============================================================================
//! CSV emitters (columns: beta1, beta2, g11/h11, g22/h22, g12/h12, f1, f2,
//! m1, m2, sigma^2, angle set, feasible).
std::string couplings_unitary_csv(const std::vector<double> &beta1_grid,
                                  const std::vector<double> &beta2_grid);
std::string couplings_osp_csv(const std::vector<double> &beta1_grid,
                              const std::vector<double> &beta2_grid,
                              double theta1, double theta2, int parity_l);
std::string dipole_angles_csv();

} // namespace supercms
