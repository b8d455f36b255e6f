#pragma once

#include <span>
#include <vector>

#include "qwalk/types.hpp"

namespace qwalk {

/// Unnormalized DFT, out[j] = sum_i in[i] exp(-2 pi i i j / N).
std::vector<Complex> dft(std::span<const Complex> in);
/// Unnormalized inverse DFT, out[i] = sum_j in[j] exp(+2 pi i i j / N).
std::vector<Complex> inverse_dft(std::span<const Complex> in);

/// Periodic function f(k) = sum_j c_j exp(i j rate k), period 2 pi / rate.
///
/// Coefficients are stored for j in [min_index, min_index + size).
class TrigSeries {
 public:
  TrigSeries() = default;
  TrigSeries(Rational rate, int min_index, std::vector<Complex> coeffs);

  /// Samples uniform on [0, 2 pi / rate). The Nyquist coefficient is dropped.
  static TrigSeries from_samples(std::span<const Complex> samples, Rational rate);

  Rational rate() const { return rate_; }
  double rate_value() const;
  double period() const { return kTwoPi / rate_value(); }
  int min_index() const { return min_index_; }
  int max_index() const { return min_index_ + static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coefficients() const { return coeffs_; }
  Complex coefficient(int j) const;

  Complex operator()(double k) const;
  /// count values on the uniform grid of one period; exact for any count.
  std::vector<Complex> sample(int count) const;

  TrigSeries derivative() const;
  /// k -> f(k + alpha)
  TrigSeries translated(double alpha) const;
  /// Drops leading/trailing coefficients with modulus <= tol.
  TrigSeries trimmed(double tol) const;
  /// Series of the same function seen with period divided by m: keeps c_{mj}.
  TrigSeries decimated(int m) const;

  /// gcd of the indices j != 0 with |c_j| > tol (0 when there are none).
  int support_gcd(double tol) const;
  /// Envelope ratio rho with |c_j| <= |c_peak| rho^(|j| - |j_peak|) past the peak index.
  double decay_ratio(double noise_floor = 1e-12) const;

 private:
  Rational rate_{1};
  int min_index_ = 0;
  std::vector<Complex> coeffs_;
};

}  // namespace qwalk
