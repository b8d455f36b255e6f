#pragma once

#include <variant>
#include <vector>

#include "qwalk/spectral.hpp"

namespace qwalk {

/// Model walk M[lambda] on L2(T_{2 pi / rate}) with lambda free of nontrivial periods.
struct PrimeModelWalk {
  Rational rate;
  int multiplicity = 1;
  /// lambda restricted to its minimal period (series with the same rate).
  TrigSeries band;
  /// Winding of lambda over its minimal period.
  int winding = 0;
  /// Index into BandSet::bands and the period divisor m used for the split.
  std::size_t source_band = 0;
  int period_divisor = 1;
};

struct ConstantWalk {
  Complex alpha;
  int multiplicity = 1;
  std::size_t source_band = 0;
};

/// Prime and constant summands of a walk, up to similarity.
struct Decomposition {
  std::vector<PrimeModelWalk> primes;
  std::vector<ConstantWalk> constants;
  int source_n = 0;
  /// True when some band was split by its minimal period; such summands are
  /// similar to the source walk as walks but not as homogeneous walks.
  bool homogeneity_broken = false;
  /// Tracked bands including the sampled eigenvector sections.
  BandSet bands;

  /// sum of constant multiplicities plus sum of prime multiplicity / rate, exactly.
  Rational degrees_of_freedom() const;
};

using Summand = std::variant<ConstantWalk, PrimeModelWalk>;

Decomposition decompose(const WalkSpec& spec, int grid_size = kDefaultGridSize);
Decomposition decompose(BandSet bands);

/// Constants first, then primes, in decomposition order.
std::vector<Summand> summands(const Decomposition& dec);

/// Walk on l2(Z) (x) C^d whose bands are the sheets of a degree-d band:
/// sum_j c_j P(k)^j with P(k)^d = e^{ik}. Coefficients below tol are dropped.
WalkSpec render_band(const TrigSeries& band_on_cover, int degree, double tol = 1e-15);

/// Direct sum of constants (as diagonal phases) and every prime, rendered
/// through its original covering band.
WalkSpec synthesize(const Decomposition& dec);

}  // namespace qwalk
