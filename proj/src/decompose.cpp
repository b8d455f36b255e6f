#include "qwalk/decompose.hpp"

#include <cmath>

namespace qwalk {

namespace {

constexpr double kSameConstant = 1e-9;

long long floor_div(long long a, long long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

}  // namespace

Rational Decomposition::degrees_of_freedom() const {
  Rational total(0);
  for (const auto& c : constants) total += c.multiplicity;
  for (const auto& p : primes) total += Rational(p.multiplicity) / p.rate;
  return total;
}

Decomposition decompose(const WalkSpec& spec, int grid_size) {
  return decompose(sample_bands(spec, grid_size));
}

Decomposition decompose(BandSet bands) {
  Decomposition dec;
  dec.source_n = bands.n;
  for (std::size_t idx = 0; idx < bands.bands.size(); ++idx) {
    const Band& band = bands.bands[idx];
    if (band.is_constant) {
      const Complex alpha = band.values[0];
      const int copies = band.degree * band.multiplicity;
      bool merged = false;
      for (auto& c : dec.constants) {
        if (std::abs(c.alpha - alpha) < kSameConstant) {
          c.multiplicity += copies;
          merged = true;
          break;
        }
      }
      if (!merged) dec.constants.push_back({alpha, copies, idx});
      continue;
    }
    const int m = minimal_period(band);
    if (band.winding % m != 0) {
      throw InternalError("band winding is not divisible by its period divisor");
    }
    PrimeModelWalk prime;
    prime.rate = Rational(m, band.degree);
    prime.multiplicity = band.multiplicity * m;
    prime.band = band.fourier.decimated(m);
    prime.winding = band.winding / m;
    prime.source_band = idx;
    prime.period_divisor = m;
    if (m > 1) dec.homogeneity_broken = true;
    dec.primes.push_back(std::move(prime));
  }
  if (dec.degrees_of_freedom() != Rational(dec.source_n)) {
    throw InternalError("degree-of-freedom bookkeeping does not add up to n");
  }
  dec.bands = std::move(bands);
  return dec;
}

std::vector<Summand> summands(const Decomposition& dec) {
  std::vector<Summand> out;
  for (const auto& c : dec.constants) out.emplace_back(c);
  for (const auto& p : dec.primes) out.emplace_back(p);
  return out;
}

WalkSpec render_band(const TrigSeries& band_on_cover, int degree, double tol) {
  if (band_on_cover.rate() != Rational(1, degree)) {
    throw ValidationError("render_band expects a series with rate 1/degree");
  }
  std::map<int, CMatrix> terms;
  for (int j = band_on_cover.min_index(); j <= band_on_cover.max_index(); ++j) {
    const Complex c = band_on_cover.coefficient(j);
    if (std::abs(c) <= tol) continue;
    // P^j = e^{i q k} P^r; P^r has ones at (i, i + r) and e^{ik} at (i, i + r - d).
    const long long q = floor_div(j, degree);
    const int r = static_cast<int>(j - q * degree);
    for (int row = 0; row < degree; ++row) {
      const int col = (row + r) % degree;
      const int shift = static_cast<int>(q) + (row + r >= degree ? 1 : 0);
      auto [it, inserted] = terms.try_emplace(shift, CMatrix::Zero(degree, degree));
      (void)inserted;
      it->second(row, col) += c;
    }
  }
  return WalkSpec::create(degree, std::move(terms));
}

WalkSpec synthesize(const Decomposition& dec) {
  std::vector<WalkSpec> parts;
  for (const auto& c : dec.constants) {
    parts.push_back(WalkSpec::create(c.multiplicity,
                                     {{0, c.alpha * CMatrix::Identity(c.multiplicity, c.multiplicity)}}));
  }
  for (const auto& p : dec.primes) {
    const Band& band = dec.bands.bands.at(p.source_band);
    const WalkSpec rendered = render_band(band.fourier, band.degree);
    for (int copy = 0; copy < band.multiplicity; ++copy) parts.push_back(rendered);
  }
  if (parts.empty()) throw ValidationError("empty decomposition");
  WalkSpec out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = direct_sum(out, parts[i]);
  return out;
}

}  // namespace qwalk
