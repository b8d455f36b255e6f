#include "qwalk/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fftw3.h>

namespace qwalk {

namespace {

std::vector<Complex> run_fftw(std::span<const Complex> in, int sign) {
  const int n = static_cast<int>(in.size());
  std::vector<Complex> buffer(in.begin(), in.end());
  std::vector<Complex> out(in.size());
  if (n == 0) return out;
  auto* src = reinterpret_cast<fftw_complex*>(buffer.data());
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan = fftw_plan_dft_1d(n, src, dst, sign, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  return out;
}

}  // namespace

std::vector<Complex> dft(std::span<const Complex> in) { return run_fftw(in, FFTW_FORWARD); }

std::vector<Complex> inverse_dft(std::span<const Complex> in) {
  return run_fftw(in, FFTW_BACKWARD);
}

TrigSeries::TrigSeries(Rational rate, int min_index, std::vector<Complex> coeffs)
    : rate_(rate), min_index_(min_index), coeffs_(std::move(coeffs)) {
  if (rate_ <= 0) throw std::invalid_argument("TrigSeries rate must be positive");
}

double TrigSeries::rate_value() const {
  return static_cast<double>(rate_.numerator()) / static_cast<double>(rate_.denominator());
}

TrigSeries TrigSeries::from_samples(std::span<const Complex> samples, Rational rate) {
  const int n = static_cast<int>(samples.size());
  if (n == 0) return TrigSeries(rate, 0, {});
  const std::vector<Complex> raw = dft(samples);
  // Indices -(n-1)/2 .. (n-1)/2 for odd n; the Nyquist bin n/2 is dropped for even n.
  const int half = (n - 1) / 2;
  std::vector<Complex> coeffs(2 * half + 1);
  for (int j = -half; j <= half; ++j) coeffs[j + half] = raw[(j + n) % n] / static_cast<double>(n);
  return TrigSeries(rate, -half, std::move(coeffs));
}

Complex TrigSeries::coefficient(int j) const {
  const int idx = j - min_index_;
  if (idx < 0 || idx >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[idx];
}

Complex TrigSeries::operator()(double k) const {
  const double w = rate_value() * k;
  Complex sum = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0.0) sum += coeffs_[i] * std::polar(1.0, (min_index_ + static_cast<int>(i)) * w);
  }
  return sum;
}

std::vector<Complex> TrigSeries::sample(int count) const {
  std::vector<Complex> bins(count, 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const int j = min_index_ + static_cast<int>(i);
    bins[((j % count) + count) % count] += coeffs_[i];
  }
  return inverse_dft(bins);
}

TrigSeries TrigSeries::derivative() const {
  std::vector<Complex> d(coeffs_.size());
  const double r = rate_value();
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    d[i] = Complex(0.0, r * (min_index_ + static_cast<int>(i))) * coeffs_[i];
  }
  return TrigSeries(rate_, min_index_, std::move(d));
}

TrigSeries TrigSeries::translated(double alpha) const {
  std::vector<Complex> t(coeffs_.size());
  const double w = rate_value() * alpha;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    t[i] = coeffs_[i] * std::polar(1.0, (min_index_ + static_cast<int>(i)) * w);
  }
  return TrigSeries(rate_, min_index_, std::move(t));
}

TrigSeries TrigSeries::trimmed(double tol) const {
  std::size_t first = 0;
  std::size_t last = coeffs_.size();
  while (first < last && std::abs(coeffs_[first]) <= tol) ++first;
  while (last > first && std::abs(coeffs_[last - 1]) <= tol) --last;
  if (first == last) return TrigSeries(rate_, 0, {});
  return TrigSeries(rate_, min_index_ + static_cast<int>(first),
                    std::vector<Complex>(coeffs_.begin() + first, coeffs_.begin() + last));
}

TrigSeries TrigSeries::decimated(int m) const {
  if (m <= 0) throw std::invalid_argument("decimation factor must be positive");
  auto floor_div = [m](int a) { return (a >= 0) ? a / m : -((-a + m - 1) / m); };
  const int lo = -floor_div(-min_index_);  // ceil(min_index / m)
  const int hi = floor_div(max_index());
  std::vector<Complex> c;
  for (int j = lo; j <= hi; ++j) c.push_back(coefficient(j * m));
  return TrigSeries(rate_ * Rational(m), lo, std::move(c));
}

int TrigSeries::support_gcd(double tol) const {
  int g = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const int j = min_index_ + static_cast<int>(i);
    if (j != 0 && std::abs(coeffs_[i]) > tol) g = std::gcd(g, std::abs(j));
  }
  return g;
}

double TrigSeries::decay_ratio(double noise_floor) const {
  // Smallest rho with |c_j| <= |c_peak| rho^(|j| - |j_peak|) for every |j| beyond the
  // peak index, the first index past the support counting as a noise-floor value.
  double peak = 0.0;
  int peak_index = 0;
  int last_index = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const double a = std::abs(coeffs_[i]);
    const int j = std::abs(min_index_ + static_cast<int>(i));
    if (a > peak) {
      peak = a;
      peak_index = j;
    }
    if (a > noise_floor) last_index = std::max(last_index, j);
  }
  if (peak <= noise_floor) return 0.0;
  double rho = std::pow(noise_floor / peak, 1.0 / (last_index + 1 - peak_index));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const double a = std::abs(coeffs_[i]);
    const int j = std::abs(min_index_ + static_cast<int>(i));
    if (j <= peak_index || a <= noise_floor) continue;
    rho = std::max(rho, std::pow(a / peak, 1.0 / (j - peak_index)));
  }
  return rho;
}

}  // namespace qwalk
