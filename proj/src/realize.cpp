#include "qwalk/realize.hpp"

#include <cmath>
#include <stdexcept>

namespace qwalk {

namespace {

// Continuous branch of arg(lambda), starting from the principal value at k~ = 0.
std::vector<double> log_band(const Band& band) {
  std::vector<double> h(band.values.size());
  h[0] = std::arg(band.values[0]);
  for (std::size_t i = 1; i < h.size(); ++i) h[i] = h[i - 1] + std::arg(band.values[i] / band.values[i - 1]);
  return h;
}

}  // namespace

RealizabilityVerdict is_ct_realizable(const BandSet& bands, int det_winding) {
  RealizabilityVerdict verdict;
  verdict.det_winding = det_winding;
  verdict.realizable = true;
  for (std::size_t i = 0; i < bands.bands.size(); ++i) {
    const Band& band = bands.bands[i];
    verdict.band_windings.push_back({i, band.degree, band.multiplicity, band.winding});
    if (band.winding != 0) verdict.realizable = false;
  }
  if (det_winding != 0 && verdict.realizable) {
    throw InternalError("nonzero det winding with all band windings zero");
  }
  if (verdict.realizable) {
    std::vector<std::vector<double>> witness;
    for (const auto& band : bands.bands) witness.push_back(log_band(band));
    verdict.witness = std::move(witness);
  }
  return verdict;
}

RealizabilityVerdict is_ct_realizable(const WalkSpec& spec, int grid_size) {
  const BandSet bands = sample_bands(spec, grid_size);
  const int det = det_winding_direct(spec, grid_size);
  if (det != band_winding_sum(bands)) {
    throw InternalError("det winding differs from the band winding sum");
  }
  return is_ct_realizable(bands, det);
}

BandCoordinates witness_step(const RealizabilityVerdict& verdict, double t, const BandCoordinates& state) {
  if (!verdict.realizable || !verdict.witness) {
    throw std::logic_error("witness_step needs a realizable verdict with a witness");
  }
  const auto& witness = *verdict.witness;
  if (state.size() != witness.size()) throw std::invalid_argument("band count mismatch");
  BandCoordinates out = state;
  for (std::size_t b = 0; b < state.size(); ++b) {
    if (static_cast<std::size_t>(state[b].rows()) != witness[b].size()) {
      throw std::invalid_argument("sample count mismatch");
    }
    for (Eigen::Index i = 0; i < state[b].rows(); ++i) out[b].row(i) *= std::polar(1.0, t * witness[b][i]);
  }
  return out;
}

}  // namespace qwalk
