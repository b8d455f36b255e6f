#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <boost/rational.hpp>

namespace qwalk {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Exact rational used for torus rates and the degree-of-freedom bookkeeping.
using Rational = boost::rational<long long>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Malformed or invalid input (spec files, state files, arguments).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Band tracking could not separate two bands near a degeneracy.
class UnresolvedCrossing : public std::runtime_error {
 public:
  UnresolvedCrossing(double k_lo, double k_hi)
      : std::runtime_error("unresolved band crossing in k-interval [" + std::to_string(k_lo) +
                           ", " + std::to_string(k_hi) + "]"),
        k_lo_(k_lo),
        k_hi_(k_hi) {}

  double k_lo() const { return k_lo_; }
  double k_hi() const { return k_hi_; }

 private:
  double k_lo_;
  double k_hi_;
};

class ConstantBand : public std::logic_error {
 public:
  ConstantBand() : std::logic_error("minimal period is undefined for a constant band") {}
};

class NonIntegerWinding : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cross-module consistency failure (should never fire on valid input).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class MemoryCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qwalk
