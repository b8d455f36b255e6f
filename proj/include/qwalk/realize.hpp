#pragma once

#include <optional>
#include <vector>

#include "qwalk/spectral.hpp"

namespace qwalk {

struct BandWinding {
  std::size_t band = 0;
  int degree = 1;
  int multiplicity = 1;
  int winding = 0;
};

struct RealizabilityVerdict {
  bool realizable = false;
  std::vector<BandWinding> band_windings;
  int det_winding = 0;
  /// Per band: h(k~) on the band's sample grid with exp(i h) = lambda.
  std::optional<std::vector<std::vector<double>>> witness;
};

/// Continuous-time realizability: realizable iff every band winding is zero.
RealizabilityVerdict is_ct_realizable(const WalkSpec& spec, int grid_size = kDefaultGridSize);
RealizabilityVerdict is_ct_realizable(const BandSet& bands, int det_winding);

/// Multiplies band coordinates by exp(i t h). Throws std::logic_error without a witness.
BandCoordinates witness_step(const RealizabilityVerdict& verdict, double t, const BandCoordinates& state);

}  // namespace qwalk
