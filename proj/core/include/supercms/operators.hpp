#pragma once
#include "supercms/jet.hpp"
#include "supercms/types.hpp"
#include "supercms/weights.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace supercms {

//==============================================================================
// The radial Laplace-type operators and their Schroedinger forms.
//
// Families (k1/k2 always count coordinates; for the osp families k1 is the
// number of first-set radial coordinates and parity_l carries the group
// parity that decides where the single-coordinate weight factor sits):
//   ordinary         weight |Delta|^beta, prefactor 1, N = k1 coordinates
//   superunitary     two-parameter weight, prefactors 1/sqrt(beta1), 1/sqrt(beta2)
//   gl_osp           fixed-exponent weight, prefactors (1, 1/2), c = +-i
//   osp              orthosymplectic weight to the power beta, prefactors (1/2, 1/2)
//   orthosymplectic  two-parameter orthosymplectic model, Schroedinger form
//                    implemented from its explicit coefficient list

enum class ModelFamily { ordinary, superunitary, gl_osp, osp, orthosymplectic };
enum class OperatorForm { laplacean, schroedinger };

struct ModelSpec {
  ModelFamily family = ModelFamily::ordinary;
  OperatorForm form = OperatorForm::laplacean;
  double beta = 2.0;   // ordinary and osp
  double beta1 = 1.0;  // superunitary and orthosymplectic
  double beta2 = 1.0;
  Cplx c = kI;
  int k1 = 1;
  int k2 = 0;
  int parity_l = 0;

  void validate() const {
    if (k1 < 0 || k2 < 0)
      throw DimensionError("model: negative coordinate count");
    switch (family) {
    case ModelFamily::ordinary:
      if (beta <= 0.0)
        throw DomainError("model: ordinary family needs beta > 0");
      if (k2 != 0)
        throw DimensionError("model: ordinary family has one coordinate set");
      break;
    case ModelFamily::superunitary:
    case ModelFamily::orthosymplectic:
      if ((k1 > 0 && beta1 <= 0.0) || (k2 > 0 && beta2 <= 0.0))
        throw DomainError("model: two-parameter family needs positive betas");
      break;
    case ModelFamily::gl_osp:
      if (c != kI && c != -kI)
        throw DomainError("model: gl_osp needs c = +-i");
      break;
    case ModelFamily::osp:
      if (beta <= 0.0)
        throw DomainError("model: osp family needs beta > 0");
      break;
    }
    if (parity_l != 0 && parity_l != 1)
      throw DomainError("model: parity must be 0 or 1");
  }

  double pref1() const {
    switch (family) {
    case ModelFamily::ordinary: return 1.0;
    case ModelFamily::superunitary:
    case ModelFamily::orthosymplectic: return 1.0 / std::sqrt(beta1);
    case ModelFamily::gl_osp: return 1.0;
    case ModelFamily::osp: return 0.5;
    }
    return 1.0;
  }
  double pref2() const {
    switch (family) {
    case ModelFamily::ordinary: return 1.0;
    case ModelFamily::superunitary:
    case ModelFamily::orthosymplectic: return 1.0 / std::sqrt(beta2);
    case ModelFamily::gl_osp: return 0.5;
    case ModelFamily::osp: return 0.5;
    }
    return 1.0;
  }

  WeightSpec weight() const {
    WeightSpec w;
    w.k1 = k1;
    w.k2 = k2;
    switch (family) {
    case ModelFamily::ordinary:
      w.family = WeightFamily::vandermonde;
      w.beta1 = beta;
      break;
    case ModelFamily::superunitary:
      w.family = WeightFamily::two_param;
      w.beta1 = beta1;
      w.beta2 = beta2;
      w.c = c;
      break;
    case ModelFamily::gl_osp:
      w.family = (c == kI) ? WeightFamily::gl_osp_plus : WeightFamily::gl_osp_minus;
      break;
    case ModelFamily::osp:
      w.family = (parity_l == 0) ? WeightFamily::osp_even : WeightFamily::osp_odd;
      w.beta1 = beta;
      break;
    case ModelFamily::orthosymplectic:
      throw UsageError("model: the orthosymplectic model is implemented in "
                       "Schroedinger form only");
    }
    return w;
  }
};

//==============================================================================
// Interaction coefficients, kept separate so structural zeros can be asserted
// directly.

//! Same-set coefficient of the ordinary model: beta(beta/2 - 1).
inline double ordinary_coupling(double beta) { return beta * (beta / 2.0 - 1.0); }

//! Mixed-set coefficient of the superunitary model:
//! (sqrt(beta1)-sqrt(beta2)) (sqrt(beta1 beta2)/2 + 1) / 2.
inline double superunitary_cross_coupling(double beta1, double beta2) {
  const double p = std::sqrt(beta1), q = std::sqrt(beta2);
  return 0.5 * (p - q) * (0.5 * p * q + 1.0);
}

//==============================================================================
//! Potential of the Schroedinger form, as a function of the point.
Cplx schroedinger_potential(const ModelSpec &m, const Configuration &pt);

//! Eigenvalue for the given spectral parameters.
Cplx eigen_value(const ModelSpec &m, const Configuration &spectral);

//==============================================================================
struct ResidualReport {
  std::string name;
  ModelSpec model;
  Configuration point;
  Cplx expected_eigenvalue{};
  Cplx applied_value{};
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

inline ResidualReport make_residual_report(std::string name, const ModelSpec &m,
                                           const Configuration &pt, Cplx applied,
                                           Cplx expected_times_f, Cplx eigenvalue,
                                           double tol) {
  ResidualReport r;
  r.name = std::move(name);
  r.model = m;
  r.point = pt;
  r.expected_eigenvalue = eigenvalue;
  r.applied_value = applied;
  r.residual = std::abs(applied - expected_times_f) /
               std::max(1.0, std::abs(expected_times_f));
  r.tolerance = tol;
  r.pass = r.residual <= tol;
  return r;
}

//! Apply the model's operator to a black-box analytic function at a point.
Cplx apply_operator(const ModelSpec &m, const AnalyticFn &f,
                    const Configuration &pt);

//! Compare the applied operator against eigenvalue * f.
ResidualReport eigen_residual(const ModelSpec &m, const AnalyticFn &f,
                              const Configuration &pt,
                              const Configuration &spectral,
                              double tolerance = 1e-8,
                              std::string name = "eigen-residual");

//! Center-of-mass momentum: sum_p df/ds_p1 - c sum_p df/ds_p2.
Cplx com_momentum(Cplx c, const AnalyticFn &f, const Configuration &pt);

//==============================================================================
// Exchange statistics. The wave function is assembled from a symmetric
// factor with the branch rule that every coordinate crossing contributes
// exp(-i pi beta / 2).

inline Cplx exchange_phase(double beta) {
  return std::exp(-kI * (kPi * beta / 2.0));
}

struct TranspositionCheck {
  Cplx expected;
  Cplx measured;
  double deviation;
  bool pass;
};

//! Builds Psi = Delta^{beta/2}(x) Delta^{beta/2}(k) Phi with the crossing
//! branch rule and measures the phase picked up by swapping x_n and x_m.
//! For non-adjacent swaps the path crosses the coordinates in between, so
//! the expected phase is exchange_phase(beta)^(number of crossings).
TranspositionCheck apply_transposition(double beta, const AnalyticFn &symmetric_phi,
                                       std::vector<double> x,
                                       std::vector<double> k, int n, int m);

} // namespace supercms
