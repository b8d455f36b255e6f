#include "doctest.h"
#include "oracles.hpp"
#include "qwalk/fixtures.hpp"
#include "qwalk/spectral.hpp"

using namespace qwalk;

namespace {

std::vector<int> degrees(const BandSet& s) {
  std::vector<int> d;
  for (const auto& b : s.bands)
    for (int c = 0; c < b.multiplicity; ++c) d.push_back(b.degree);
  std::sort(d.begin(), d.end());
  return d;
}

const Band* find_constant(const BandSet& s, Complex value) {
  for (const auto& b : s.bands)
    if (b.is_constant && std::abs(b.values.front() - value) < 1e-9) return &b;
  return nullptr;
}

}  // namespace

TEST_CASE("4-state Grover bands") {
  const BandSet s = sample_bands(fixtures::grover4());
  CHECK(degrees(s) == std::vector<int>{1, 1, 1, 1});
  CHECK(find_constant(s, 1.0) != nullptr);
  CHECK(find_constant(s, -1.0) != nullptr);
  for (int sign : {-1, 1}) {
    bool matched = false;
    for (const auto& b : s.bands) {
      if (b.is_constant) continue;
      double worst = 0;
      for (int i = 0; i < b.sample_count(); ++i)
        worst = std::max(worst, std::abs(b.values[i] - oracle::grover4_lambda(b.k_tilde(i), sign)));
      matched = matched || worst < 1e-8;
    }
    CHECK(matched);
  }
}

TEST_CASE("3-state Grover bands and monodromy") {
  const WalkSpec g = fixtures::grover3();
  const BandSet s = sample_bands(g);
  CHECK(degrees(s) == std::vector<int>{1, 2});
  CHECK(find_constant(s, 1.0) != nullptr);
  CHECK(monodromy_of(s).cycle_lengths == std::vector<int>{1, 2});
  // Closed form distinguishes the two sheets: lambda(k + 2 pi) != lambda(k).
  CHECK(std::abs(oracle::grover3_lambda(M_PI / 2) - oracle::grover3_lambda(M_PI / 2 + kTwoPi)) > 0.1);
  for (const auto& b : s.bands)
    if (b.degree == 2) {
      CHECK(minimal_period(b) == 1);
      CHECK(winding_number(b) == 0);
    }
}

TEST_CASE("identity walk is one constant band of multiplicity two") {
  const BandSet s = sample_bands(fixtures::identity(2));
  REQUIRE(s.bands.size() == 1);
  CHECK(s.bands[0].is_constant);
  CHECK(s.bands[0].multiplicity == 2);
  CHECK(s.bands[0].degree == 1);
  CHECK(std::abs(s.bands[0].values[0] - 1.0) < 1e-12);
  CHECK_THROWS_AS(minimal_period(s.bands[0]), ConstantBand);
  CHECK(winding_number(s.bands[0]) == 0);
}

TEST_CASE("monodromy cycle types") {
  CHECK(monodromy(fixtures::cube_root()).cycle_lengths == std::vector<int>{3});
  CMatrix coin = CMatrix::Identity(2, 2);
  coin(1, 1) = std::polar(1.0, 0.4);
  const Monodromy diag = monodromy(fixtures::shift_coin({2, -1}, coin));
  CHECK(diag.permutation == std::vector<int>{0, 1});
}

TEST_CASE("minimal period") {
  const BandSet cube = sample_bands(fixtures::cube_root());
  REQUIRE(cube.bands.size() == 1);
  CHECK(cube.bands[0].degree == 3);
  CHECK(minimal_period(cube.bands[0]) == 2);
  const BandSet free = sample_bands(fixtures::free_walk());
  CHECK(minimal_period(free.bands[0]) == 1);
}

TEST_CASE("windings") {
  const BandSet s = sample_bands(fixtures::grover4());
  std::vector<int> w;
  for (const auto& b : s.bands) w.push_back(winding_number(b));
  std::sort(w.begin(), w.end());
  CHECK(w == std::vector<int>{-1, 0, 0, 1});

  std::vector<Complex> loop(100);
  for (int i = 0; i < 100; ++i) loop[i] = std::polar(1.0, -3 * kTwoPi * i / 100);
  CHECK(winding_number(loop) == -3);
}

TEST_CASE("determinant winding") {
  CHECK(det_winding(fixtures::det_winding_walk(0.6, 0.8)) == 1);
  CHECK(det_winding(fixtures::grover4()) == 0);
  CHECK(det_winding(fixtures::identity(2)) == 0);
  CHECK(det_winding(fixtures::cube_root()) == 2);
  CHECK(det_winding_direct(fixtures::free_walk()) == 1);
}

TEST_CASE("fibers agree with dense eigenvalues") {
  for (const char* name : {"grover4", "grover3", "cube_root", "coined(0.3)", "grover3_subwalk"}) {
    CAPTURE(name);
    const WalkSpec w = fixtures::by_name(name);
    const BandSet s = sample_bands(w);
    CHECK(fiber_mismatch(w, s, 0.123) < 1e-10);
    CHECK(fiber_mismatch(w, s, 4.5) < 1e-10);
    for (Complex z : sheet_values_at(s, 2.2)) CHECK(oracle::nearest(oracle::eigenvalues(w, 2.2), z) < 1e-10);
  }
}

TEST_CASE("sections are orthonormal eigenvectors") {
  const WalkSpec w = fixtures::grover3();
  const BandSet s = sample_bands(w, 256);
  for (const auto& b : s.bands)
    for (int i : {0, 37, b.sample_count() - 1}) {
      const CMatrix& v = b.sections[i];
      const CMatrix u = w.symbol(b.k_tilde(i));
      CHECK((v.adjoint() * v - CMatrix::Identity(v.cols(), v.cols())).norm() < 1e-10);
      CHECK((u * v - b.values[i] * v).norm() < 1e-9);
    }
}

TEST_CASE("grid doubling changes nothing discrete") {
  const WalkSpec w = fixtures::grover3();
  const BandSet a = sample_bands(w, 1024);
  const BandSet b = sample_bands(w, 2048);
  REQUIRE(a.bands.size() == b.bands.size());
  for (std::size_t i = 0; i < a.bands.size(); ++i) {
    CHECK(a.bands[i].degree == b.bands[i].degree);
    CHECK(a.bands[i].winding == b.bands[i].winding);
    CHECK(a.bands[i].multiplicity == b.bands[i].multiplicity);
    CHECK(a.bands[i].period_divisor == b.bands[i].period_divisor);
    double worst = 0;
    for (int j = 0; j < a.bands[i].sample_count(); ++j)
      worst = std::max(worst, std::abs(a.bands[i].values[j] - b.bands[i].values[2 * j]));
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("grid size is validated") {
  CHECK_THROWS_AS(sample_bands(fixtures::free_walk(), 100), ValidationError);
  CHECK_THROWS_AS(sample_bands(fixtures::free_walk(), 32), ValidationError);
}
