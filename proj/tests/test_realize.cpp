#include "doctest.h"
#include "qwalk/dynamics.hpp"
#include "qwalk/fixtures.hpp"
#include "qwalk/realize.hpp"

using namespace qwalk;

namespace {

double max_diff(const BandCoordinates& a, const BandCoordinates& b) {
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, (a[i] - b[i]).cwiseAbs().maxCoeff());
  return worst;
}

}  // namespace

TEST_CASE("verdicts") {
  const RealizabilityVerdict g3 = is_ct_realizable(fixtures::grover3());
  CHECK(g3.realizable);
  CHECK(g3.witness.has_value());
  CHECK(g3.det_winding == 0);

  const RealizabilityVerdict g4 = is_ct_realizable(fixtures::grover4());
  CHECK_FALSE(g4.realizable);
  CHECK_FALSE(g4.witness.has_value());
  std::vector<int> w;
  for (const auto& b : g4.band_windings) w.push_back(b.winding);
  CHECK(std::count(w.begin(), w.end(), 1) == 1);
  CHECK(std::count(w.begin(), w.end(), -1) == 1);

  for (double r : {0.3, 0.5, 0.9}) {
    const RealizabilityVerdict c = is_ct_realizable(fixtures::coined(r));
    CHECK(c.realizable);
    for (const auto& b : c.band_windings) CHECK(b.winding == 0);
  }

  const RealizabilityVerdict dw = is_ct_realizable(fixtures::det_winding_walk(0.6, 0.8));
  CHECK_FALSE(dw.realizable);
  CHECK(dw.det_winding == 1);
}

TEST_CASE("inconsistent determinant winding is an internal error") {
  const BandSet bands = sample_bands(fixtures::grover3());
  CHECK_THROWS_AS(is_ct_realizable(bands, 1), InternalError);
}

TEST_CASE("witness generates the walk") {
  const WalkSpec w = fixtures::grover3();
  const BandSet bands = sample_bands(w);
  const RealizabilityVerdict v = is_ct_realizable(bands, det_winding(w));
  REQUIRE(v.witness);

  // exp(i h) reproduces lambda on every sample.
  for (std::size_t b = 0; b < bands.bands.size(); ++b)
    for (int i = 0; i < bands.bands[b].sample_count(); i += 97)
      CHECK(std::abs(std::polar(1.0, (*v.witness)[b][i]) - bands.bands[b].values[i]) < 1e-12);

  State xi;
  xi.first_site = -1;
  xi.amplitudes = CMatrix::Zero(3, 3);
  xi.amplitudes << 0.3, 0.1, 0.0, Complex(0, 0.5), 0.2, -0.4, 0.1, 0.0, Complex(0.6, 0.2);
  const BandCoordinates c = project_onto_bands(bands, [&](double k) { return xi.fourier(k); });

  CHECK(max_diff(witness_step(v, 0.0, c), c) == 0.0);

  const BandCoordinates once = witness_step(v, 1.0, c);
  const BandCoordinates direct = project_onto_bands(bands, [&](double k) -> CVector { return w.symbol(k) * xi.fourier(k); });
  CHECK(max_diff(once, direct) < 1e-8);

  const BandCoordinates halves = witness_step(v, 0.5, witness_step(v, 0.5, c));
  CHECK(max_diff(halves, once) < 1e-9);

  const RealizabilityVerdict g4 = is_ct_realizable(fixtures::grover4());
  CHECK_THROWS_AS(witness_step(g4, 1.0, c), std::logic_error);
}
