#pragma once
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace supercms {

using Cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Cplx kI{0.0, 1.0};

//==============================================================================
// A point of the models: two ordered coordinate sets. The same container is
// used for spectral parameters (quantum numbers).
struct Configuration {
  std::vector<double> s1;
  std::vector<double> s2;

  Configuration() = default;
  Configuration(std::vector<double> a, std::vector<double> b)
      : s1(std::move(a)), s2(std::move(b)) {}

  int k1() const { return static_cast<int>(s1.size()); }
  int k2() const { return static_cast<int>(s2.size()); }
};

// Chamber = strictly increasing coordinates within each set.
inline bool in_chamber(const std::vector<double> &v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i - 1] < v[i]))
      return false;
  return true;
}

//==============================================================================
// Error taxonomy. Everything derives from Error so callers can catch broadly.

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedOrderError : Error {
  using Error::Error;
};

struct DimensionError : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct AccuracyError : Error {
  using Error::Error;
};

//! Raised when a weight or operator is evaluated at a pole/zero collision.
//! Carries the indices of the offending coordinate pair.
struct SingularConfigurationError : Error {
  int p, q;
  SingularConfigurationError(const std::string &msg, int p_, int q_)
      : Error(msg), p(p_), q(q_) {}
};

struct DegenerateParametersError : Error {
  using Error::Error;
};

struct NoDipoleSolutionError : Error {
  using Error::Error;
};

struct UnphysicalConfigurationError : Error {
  using Error::Error;
};

struct UsageError : Error {
  using Error::Error;
};

} // namespace supercms
