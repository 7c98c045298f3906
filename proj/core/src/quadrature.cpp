#include "supercms/quadrature.hpp"
#include "supercms/special.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>

namespace supercms {

namespace {

// Implicit-shift QL for a symmetric tridiagonal matrix, accumulating only the
// first component of each eigenvector (all that Golub-Welsch needs).
// d: diagonal, e: subdiagonal (e[0] unused), z: first-row components.
void tridiagonal_ql(std::vector<double> &d, std::vector<double> &e,
                    std::vector<double> &z) {
  const int n = static_cast<int>(d.size());
  if (n == 0)
    return;
  for (int i = 1; i < n; ++i)
    e[i - 1] = e[i];
  e[n - 1] = 0.0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-15 * dd)
          break;
      }
      if (m != l) {
        if (iter++ == 60)
          throw AccuracyError("gauss_jacobi: tridiagonal QL did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0 ? std::abs(r) : -std::abs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          f = z[i + 1];
          z[i + 1] = s * z[i] + c * f;
          z[i] = c * z[i] - s * f;
        }
        if (underflow)
          continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

QuadratureRule build_rule(int n, double alpha) {
  if (n < 1)
    throw UsageError("gauss_jacobi: need at least one node");
  if (!(alpha > -1.0))
    throw DomainError("gauss_jacobi: exponent must exceed -1");

  // Jacobi-matrix recurrence coefficients for the weight (1-x)^a (1+x)^a
  // on [-1,1]; the symmetric case has a zero diagonal.
  std::vector<double> d(n, 0.0), e(n, 0.0), z(n, 0.0);
  z[0] = 1.0;
  const double a = alpha;
  for (int k = 1; k < n; ++k) {
    if (k == 1) {
      // the generic expression is 0/0 at 2*alpha = -1; cancelled form
      e[1] = std::sqrt(4.0 * (1.0 + a) * (1.0 + a) /
                       ((2.0 * a + 2.0) * (2.0 * a + 2.0) * (2.0 * a + 3.0)));
      continue;
    }
    const double num = 4.0 * k * (k + a) * (k + a) * (k + 2.0 * a);
    const double den = (2.0 * k + 2.0 * a) * (2.0 * k + 2.0 * a) *
                       (2.0 * k + 2.0 * a + 1.0) * (2.0 * k + 2.0 * a - 1.0);
    e[k] = std::sqrt(num / den);
  }
  tridiagonal_ql(d, e, z);

  // mu0 = int_{-1}^{1} (1-x^2)^a dx = 2^{2a+1} B(a+1, a+1)
  const double mu0 = std::pow(2.0, 2.0 * a + 1.0) * gamma_fn(a + 1.0) *
                     gamma_fn(a + 1.0) / gamma_fn(2.0 * a + 2.0);

  std::vector<std::pair<double, double>> nw(n);
  for (int i = 0; i < n; ++i)
    nw[i] = {d[i], mu0 * z[i] * z[i]};
  std::sort(nw.begin(), nw.end());

  // map to [0,1] with weight (t(1-t))^a
  QuadratureRule rule;
  rule.t.resize(n);
  rule.w.resize(n);
  const double scale = std::pow(0.5, 2.0 * a + 1.0);
  for (int i = 0; i < n; ++i) {
    rule.t[i] = 0.5 * (nw[i].first + 1.0);
    rule.w[i] = scale * nw[i].second;
  }
  return rule;
}

} // namespace

QuadratureRule gauss_jacobi_rule(int n, double alpha) {
  static std::mutex mtx;
  static std::map<std::pair<int, std::int64_t>, QuadratureRule> cache;
  const std::int64_t key = static_cast<std::int64_t>(std::llround(alpha * 1e12));
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find({n, key});
    if (it != cache.end())
      return it->second;
  }
  QuadratureRule rule = build_rule(n, alpha);
  std::lock_guard<std::mutex> lock(mtx);
  return cache.emplace(std::make_pair(n, key), std::move(rule)).first->second;
}

} // namespace supercms
