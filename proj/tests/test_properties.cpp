// Randomized checks over shift-block x Haar-coin walks (n <= 4, bandwidth <= 3).
// Pass --seed=N (default 0) to change the sample.

#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <cstring>
#include <random>

#include "qwalk/dynamics.hpp"
#include "qwalk/fixtures.hpp"

using namespace qwalk;

namespace {

unsigned g_seed = 0;
constexpr int kWalks = 200;

CMatrix haar_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = Complex(g(rng), g(rng)) / std::sqrt(2.0);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

struct Sample {
  std::vector<int> shifts;
  WalkSpec spec;
};

std::vector<Sample> samples() {
  std::mt19937_64 rng(g_seed);
  std::uniform_int_distribution<int> dim(1, 4), shift(-3, 3);
  std::vector<Sample> out;
  for (int i = 0; i < kWalks; ++i) {
    const int n = dim(rng);
    std::vector<int> s(n);
    for (int& a : s) a = shift(rng);
    const CMatrix coin = haar_unitary(n, rng);
    out.push_back({s, fixtures::shift_coin(s, coin)});
  }
  return out;
}

const std::vector<Sample>& walks() {
  static const std::vector<Sample> all = samples();
  return all;
}

std::string describe(const Sample& s) {
  std::string t = "shifts";
  for (int a : s.shifts) t += " " + std::to_string(a);
  return t;
}

// Distance at common grid points; the fine band may start on another sheet of the same cover.
double common_point_distance(const Band& coarse, const Band& fine) {
  if (coarse.degree != fine.degree) return INFINITY;
  double best = INFINITY;
  for (int s = 0; s < fine.degree; ++s) {
    double worst = 0;
    for (int j = 0; j < coarse.sample_count(); ++j) {
      const int fj = (2 * j + s * fine.grid_size) % fine.sample_count();
      worst = std::max(worst, std::abs(coarse.values[j] - fine.values[fj]));
    }
    best = std::min(best, worst);
  }
  return best;
}

}  // namespace

TEST_CASE("random walks are unitary") {
  for (const auto& w : walks()) {
    CAPTURE(describe(w));
    CHECK(check_coefficient_unitarity(w.spec.dimension(), w.spec.terms()).worst_residual < 1e-12);
    CHECK(symbol_unitarity_residual(w.spec, 64) < 1e-12);
    CHECK(w.spec.bandwidth() <= 3);
  }
}

TEST_CASE("band structure of random walks") {
  std::mt19937_64 rng(g_seed + 1);
  std::uniform_real_distribution<double> k(0.0, kTwoPi);
  for (const auto& w : walks()) {
    CAPTURE(describe(w));
    BandSet coarse, fine;
    REQUIRE_NOTHROW(coarse = sample_bands(w.spec, 2048));
    REQUIRE_NOTHROW(fine = sample_bands(w.spec, 4096));

    // Fiber consistency.
    for (int trial = 0; trial < 3; ++trial) CHECK(fiber_mismatch(w.spec, coarse, k(rng)) < 1e-9);

    // Windings are integers and add up to the determinant winding.
    for (const auto& b : coarse.bands) {
      int recomputed = 0;
      CHECK_NOTHROW(recomputed = winding_number(b));
      CHECK(recomputed == b.winding);
    }
    CHECK(det_winding_direct(w.spec) == band_winding_sum(coarse));

    // Grid doubling: every coarse band reappears with the same integers.
    REQUIRE(coarse.bands.size() == fine.bands.size());
    CHECK(monodromy_of(coarse).cycle_lengths == monodromy_of(fine).cycle_lengths);
    for (const Band& a : coarse.bands) {
      const Band* match = nullptr;
      double best = INFINITY;
      for (const Band& b : fine.bands)
        if (const double d = common_point_distance(a, b); d < best) best = d, match = &b;
      REQUIRE(match != nullptr);
      CHECK(best < 1e-8);
      CHECK(a.degree == match->degree);
      CHECK(a.multiplicity == match->multiplicity);
      CHECK(a.winding == match->winding);
      CHECK(a.period_divisor == match->period_divisor);
    }
  }
}

TEST_CASE("norm is preserved over 100 steps") {
  for (const auto& w : walks()) {
    CAPTURE(describe(w));
    const State s = evolve(w.spec, uniform_coin_state(w.spec.dimension()), 100);
    CHECK(std::abs(s.norm() - 1.0) < 1e-12);
  }
}

int main(int argc, char** argv) {
  std::vector<char*> rest;
  for (int i = 0; i < argc; ++i) {
    if (std::strncmp(argv[i], "--seed=", 7) == 0) {
      g_seed = static_cast<unsigned>(std::stoul(argv[i] + 7));
    } else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
      g_seed = static_cast<unsigned>(std::stoul(argv[++i]));
    } else {
      rest.push_back(argv[i]);
    }
  }
  std::printf("property suite: %d walks, seed %u\n", kWalks, g_seed);
  doctest::Context context(static_cast<int>(rest.size()), rest.data());
  return context.run();
}
