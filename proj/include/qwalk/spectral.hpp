#pragma once

#include <functional>
#include <vector>

#include "qwalk/fourier.hpp"
#include "qwalk/walkspec.hpp"

namespace qwalk {

inline constexpr int kDefaultGridSize = 2048;

/// One eigenvalue function lambda on its covering torus T_{2 pi d}.
///
/// Sample i sits at k~_i = 2 pi i / grid_size, i < grid_size * degree, so the
/// base point is k~ mod 2 pi and the sheet index is k~ div 2 pi.
struct Band {
  int degree = 1;
  int multiplicity = 1;
  int grid_size = 0;
  std::vector<Complex> values;
  /// n x multiplicity orthonormal eigenvectors per sample, continuous in k~.
  std::vector<CMatrix> sections;
  /// Fourier series of lambda with rate 1/degree.
  TrigSeries fourier;
  int winding = 0;
  /// m with minimal period 2 pi degree / m; 0 for constant bands.
  int period_divisor = 0;
  bool is_constant = false;
  /// Envelope decay ratio of the Fourier coefficients (analyticity witness).
  double decay = 0.0;
  /// Tracked sheets (0-based, in the order they are visited) forming this band.
  std::vector<std::vector<int>> sheet_cycles;

  int sample_count() const { return static_cast<int>(values.size()); }
  double k_tilde(int i) const { return kTwoPi * i / grid_size; }
  double torus_length() const { return kTwoPi * degree; }
};

struct BandSet {
  int n = 0;
  int grid_size = 0;
  std::vector<Band> bands;
  /// Sheet permutation from continuing k: 0 -> 2 pi (sheet s ends on sheet monodromy[s]).
  std::vector<int> monodromy;
  /// Grid index (per 2 pi) where tracking started.
  int start_index = 0;
};

struct Monodromy {
  std::vector<int> permutation;
  /// Cycle lengths, sorted ascending.
  std::vector<int> cycle_lengths;
};

/// Tracks the eigenvalue bands of the symbol around the torus.
/// grid_size must be a power of two >= 64. Throws UnresolvedCrossing.
BandSet sample_bands(const WalkSpec& spec, int grid_size = kDefaultGridSize);

Monodromy monodromy(const WalkSpec& spec, int grid_size = kDefaultGridSize);
Monodromy monodromy_of(const BandSet& bands);

/// m such that the minimal period is 2 pi degree / m. Throws ConstantBand.
int minimal_period(const Band& band);

/// Degree of lambda as a loop T_{2 pi d} -> T. Throws NonIntegerWinding.
int winding_number(const Band& band);
int winding_number(std::span<const Complex> loop);

/// Winding of k -> det U^(k) over T_{2 pi}, cross-checked against the bands.
int det_winding(const WalkSpec& spec, int grid_size = kDefaultGridSize);
/// Same, from the determinant alone.
int det_winding_direct(const WalkSpec& spec, int grid_size = kDefaultGridSize);
/// sum over bands of multiplicity * winding
int band_winding_sum(const BandSet& bands);

/// All sheet values at base point k (multiplicities expanded), from the Fourier series.
std::vector<Complex> sheet_values_at(const BandSet& bands, double k);
/// Largest distance in an optimal matching between sheet values and eigenvalues of U^(k).
double fiber_mismatch(const WalkSpec& spec, const BandSet& bands, double k);
/// n x n matrix of all band sections at base grid index i (columns grouped per band/sheet).
CMatrix sections_at(const BandSet& bands, int grid_index);

/// Band coordinates of a momentum-space state: per band, a (samples x multiplicity)
/// matrix of <v(k~), f(k~ mod 2 pi)>.
using BandCoordinates = std::vector<CMatrix>;
BandCoordinates project_onto_bands(const BandSet& bands, const std::function<CVector(double)>& f);

}  // namespace qwalk
