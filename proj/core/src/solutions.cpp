#include "supercms/solutions.hpp"

#include <vector>

namespace supercms {

Cplx rho12_via_L(double beta, Cplx x, Cplx y1, Cplx y2, Cplx r1, Cplx p1,
                 Cplx p2) {
  // mixed first partials of Phi2 in the two second-set coordinates
  std::vector<int> caps{1, 1};
  std::vector<Jet> args{Jet::variable(caps, 0, y1), Jet::variable(caps, 1, y2)};
  std::vector<Jet> spec{Jet::constant(caps, p1), Jet::constant(caps, p2)};
  const Jet phi = phi2<Jet>(beta, args, spec);

  const Cplx f = phi.value();
  const Cplx f1 = phi.deriv1(0, 1);
  const Cplx f2 = phi.deriv1(1, 1);
  std::vector<int> a12{1, 1};
  const Cplx f12 = phi.deriv(a12);

  const Cplx u1 = kI * y1 - x;
  const Cplx u2 = kI * y2 - x;
  const Cplx ctil = beta / 2.0 - 1.0;
  const Cplx a = kI * (beta / 2.0) * r1;
  const Cplx A1 = a + ctil / u1;
  const Cplx A2 = a + ctil / u2;

  // product of the two bracket operators, then the two scalar tails
  Cplx acc = u1 * u2 *
             (A1 * A2 * f - kI * A1 * f2 - kI * A2 * f1 - f12);
  acc += (beta / 2.0) * ctil * f;
  acc += (beta / 2.0) * (u1 * u2 / (y1 - y2)) * (f1 - f2);
  return std::exp(kI * r1 * x) * acc;
}

} // namespace supercms
