#include "doctest.h"
#include "oracles.hpp"
#include "qwalk/decompose.hpp"
#include "qwalk/fixtures.hpp"

using namespace qwalk;

namespace {

// Eigenvalue multisets of two symbols agree at k (greedy nearest matching).
double fiber_distance(const WalkSpec& a, const WalkSpec& b, double k) {
  auto x = oracle::eigenvalues(a, k);
  auto y = oracle::eigenvalues(b, k);
  if (x.size() != y.size()) return INFINITY;
  double worst = 0;
  for (Complex z : x) {
    auto it = std::min_element(y.begin(), y.end(), [z](Complex p, Complex q) { return std::abs(p - z) < std::abs(q - z); });
    worst = std::max(worst, std::abs(*it - z));
    y.erase(it);
  }
  return worst;
}

}  // namespace

TEST_CASE("3-state Grover: constant 1 plus a rate-1/2 prime") {
  const Decomposition d = decompose(fixtures::grover3());
  REQUIRE(d.constants.size() == 1);
  CHECK(std::abs(d.constants[0].alpha - 1.0) < 1e-12);
  CHECK(d.constants[0].multiplicity == 1);
  REQUIRE(d.primes.size() == 1);
  CHECK(d.primes[0].rate == Rational(1, 2));
  CHECK(d.primes[0].multiplicity == 1);
  CHECK(d.primes[0].winding == 0);
  CHECK_FALSE(d.homogeneity_broken);
  CHECK(d.degrees_of_freedom() == Rational(3));
}

TEST_CASE("cube-root walk: two primes of rate 2/3") {
  const Decomposition d = decompose(fixtures::cube_root());
  CHECK(d.constants.empty());
  REQUIRE(d.primes.size() == 1);
  CHECK(d.primes[0].rate == Rational(2, 3));
  CHECK(d.primes[0].multiplicity == 2);
  CHECK(d.primes[0].period_divisor == 2);
  CHECK(d.homogeneity_broken);
  CHECK(d.degrees_of_freedom() == Rational(3));
  // lambda = e^{2ik~/3} seen on T_{3 pi} is e^{i rate k}, winding 1.
  CHECK(d.primes[0].winding == 1);
  // Which sheet the band starts on only changes the phase of the coefficient.
  CHECK(std::abs(std::abs(d.primes[0].band.coefficient(1)) - 1.0) < 1e-10);
}

TEST_CASE("4-state Grover: two constants, two primes") {
  const Decomposition d = decompose(fixtures::grover4());
  REQUIRE(d.constants.size() == 2);
  std::vector<double> alphas{d.constants[0].alpha.real(), d.constants[1].alpha.real()};
  std::sort(alphas.begin(), alphas.end());
  CHECK(alphas[0] == doctest::Approx(-1.0));
  CHECK(alphas[1] == doctest::Approx(1.0));
  REQUIRE(d.primes.size() == 2);
  for (const auto& p : d.primes) {
    CHECK(p.rate == Rational(1));
    CHECK(p.multiplicity == 1);
  }
  CHECK(d.degrees_of_freedom() == Rational(4));
  const auto all = summands(d);
  REQUIRE(all.size() == 4);
  CHECK(std::holds_alternative<ConstantWalk>(all[0]));
  CHECK(std::holds_alternative<PrimeModelWalk>(all[3]));
}

TEST_CASE("identity: one constant with multiplicity two") {
  const Decomposition d = decompose(fixtures::identity(2));
  REQUIRE(d.constants.size() == 1);
  CHECK(d.constants[0].multiplicity == 2);
  CHECK(d.primes.empty());
}

TEST_CASE("render_band builds the covering walk") {
  // lambda(k~) = e^{2ik~/3}: P^2, whose fibers are those of the cube-root walk.
  const WalkSpec p = render_band(TrigSeries(Rational(1, 3), 2, {Complex(1.0)}), 3);
  CHECK(p.dimension() == 3);
  CHECK(fiber_distance(p, fixtures::cube_root(), 0.8) < 1e-12);
  CHECK_THROWS_AS(render_band(TrigSeries(Rational(1, 2), 1, {Complex(1.0)}), 3), ValidationError);
}

TEST_CASE("synthesized walk is spectrally equivalent") {
  for (const char* name : {"grover3", "grover4", "cube_root", "coined(0.5)", "det_winding(0.6,0.8)"}) {
    CAPTURE(name);
    const WalkSpec w = fixtures::by_name(name);
    const Decomposition d = decompose(w);
    CHECK(d.degrees_of_freedom() == Rational(w.dimension()));
    const WalkSpec s = synthesize(d);
    CHECK(s.dimension() == w.dimension());
    for (double k : {0.0, 0.9, 2.5, 5.1}) CHECK(fiber_distance(w, s, k) < 1e-9);
  }
}
