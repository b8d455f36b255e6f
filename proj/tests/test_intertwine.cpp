#include "doctest.h"
#include "qwalk/fixtures.hpp"
#include "qwalk/intertwine.hpp"

using namespace qwalk;

namespace {

const PrimeModelWalk& degree_two_prime(const Decomposition& d) {
  for (const auto& p : d.primes)
    if (p.rate == Rational(1, 2)) return p;
  throw std::runtime_error("no rate-1/2 prime");
}

// Coefficients of b(. + alpha), built from b's series.
TrigSeries shifted(const TrigSeries& b, double alpha) {
  std::vector<Complex> c;
  for (int j = b.min_index(); j <= b.max_index(); ++j) c.push_back(b.coefficient(j) * std::polar(1.0, j * b.rate_value() * alpha));
  return TrigSeries(b.rate(), b.min_index(), c);
}

}  // namespace

TEST_CASE("find_translation") {
  const Decomposition g3 = decompose(fixtures::grover3());
  const TrigSeries& b = degree_two_prime(g3).band;

  const TranslationMatch self = find_translation(b, b);
  REQUIRE(self.alpha);
  CHECK(*self.alpha == doctest::Approx(0.0).epsilon(1e-12));

  const TranslationMatch moved = find_translation(b, shifted(b, 0.7));
  REQUIRE(moved.alpha);
  CHECK(std::abs(*moved.alpha - 0.7) < 1e-7);
  // The same check through a resampled (not coefficient-shifted) series.
  std::vector<Complex> samples(4096);
  for (int i = 0; i < 4096; ++i) samples[i] = b(4 * M_PI * i / 4096 + 0.7);
  const TranslationMatch resampled = find_translation(b, TrigSeries::from_samples(samples, b.rate()).trimmed(1e-14));
  REQUIRE(resampled.alpha);
  CHECK(std::abs(*resampled.alpha - 0.7) < 1e-7);

  const Decomposition g4 = decompose(fixtures::grover4());
  REQUIRE(g4.primes.size() == 2);
  CHECK_FALSE(find_translation(g4.primes[0].band, g4.primes[1].band).alpha);
  CHECK_FALSE(find_translation(g4.primes[0].band, b).alpha);  // rate mismatch
}

TEST_CASE("intertwiner spaces between summands") {
  const Decomposition g3 = decompose(fixtures::grover3());
  const Summand one = g3.constants.at(0);
  const Summand lambda = degree_two_prime(g3);
  CHECK(intertwiner_space(one, lambda).kind == IntertwinerKind::Zero);
  CHECK(intertwiner_space(lambda, one).kind == IntertwinerKind::Zero);
  CHECK(intertwiner_space(one, one).kind == IntertwinerKind::BandAlgebra);
  CHECK(intertwiner_space(lambda, lambda).kind == IntertwinerKind::ModelTranslation);
  CHECK(to_string(IntertwinerKind::ModelTranslation) == "model_translation");
  CHECK(to_string(IntertwinerKind::BandAlgebra) == "band_algebra");
  CHECK(to_string(IntertwinerKind::Zero) == "zero");
}

TEST_CASE("coined walks with different r have no intertwiners") {
  const auto a = summands(decompose(fixtures::coined(0.3)));
  const auto b = summands(decompose(fixtures::coined(0.7)));
  for (const auto& x : a)
    for (const auto& y : b) CHECK(intertwiner_space(x, y).kind == IntertwinerKind::Zero);
}

TEST_CASE("commutant reports") {
  const CommutantReport g4 = commutant_report(decompose(fixtures::grover4()));
  REQUIRE(g4.summands.size() == 4);
  CHECK(g4.summands[0].kind == CommutantSummand::Kind::Torus);
  CHECK(g4.summands[1].kind == CommutantSummand::Kind::Torus);
  for (int i : {0, 1}) {
    CHECK(g4.summands[i].rate == Rational(1));
    CHECK(g4.summands[i].matrix_size == 1);
  }
  for (int i : {2, 3}) {
    CHECK(g4.summands[i].kind == CommutantSummand::Kind::BandAlgebra);
    CHECK(g4.summands[i].matrix_size == 1);
  }

  const CommutantReport id = commutant_report(decompose(fixtures::identity(2)));
  REQUIRE(id.summands.size() == 1);
  CHECK(id.summands[0].kind == CommutantSummand::Kind::BandAlgebra);
  CHECK(id.summands[0].matrix_size == 2);

  const CommutantReport free = commutant_report(decompose(fixtures::free_walk()));
  REQUIRE(free.summands.size() == 1);
  CHECK(free.summands[0].kind == CommutantSummand::Kind::Torus);
  CHECK(free.summands[0].matrix_size == 1);

  // Two copies of the same prime: one torus class with 2 x 2 matrix values.
  const CommutantReport twice = commutant_report(decompose(amplify(fixtures::free_walk(), 2)));
  REQUIRE(twice.summands.size() == 1);
  CHECK(twice.summands[0].matrix_size == 2);
}

TEST_CASE("built intertwiners") {
  const TrigSeries one(Rational(1), 0, {Complex(1.0)});

  SUBCASE("rho = 1, alpha = 0 is the identity") {
    const TrigSeries b = decompose(fixtures::grover4()).primes[0].band;
    const BuiltIntertwiner v = build_intertwiner(b, 0.0, one, 128);
    CHECK((v.v - CMatrix::Identity(128, 128)).norm() == 0.0);
    CHECK(v.interior_residual() < 1e-14);
  }
  SUBCASE("rho = e^{ik} on the free walk is the shift and commutes with it") {
    const TrigSeries free(Rational(1), 1, {Complex(1.0)});
    const TrigSeries shift(Rational(1), 1, {Complex(1.0)});
    const BuiltIntertwiner v = build_intertwiner(free, 0.0, shift, 32);
    CHECK((v.v - v.u1).norm() == 0.0);
    CHECK(v.interior_residual() == 0.0);
  }
  SUBCASE("3-state Grover band against its translate") {
    const TrigSeries b = degree_two_prime(decompose(fixtures::grover3())).band;
    const TrigSeries half_one(Rational(1, 2), 0, {Complex(1.0)});
    const BuiltIntertwiner v = build_intertwiner(b, 0.7, half_one, 256);
    // U2 carries the coefficients of b(. + 0.7).
    const TrigSeries b2 = shifted(b, 0.7).trimmed(1e-14);
    CHECK(std::abs(v.u2(130, 128) - b2.coefficient(2)) < 1e-15);
    CHECK(v.interior_residual() < 1e-6);
    double near_one = 0;
    for (const auto& [ratio, mass] : v.transition_measure(200))
      if (ratio > 0.9 && ratio < 1.1) near_one += mass;
    CHECK(near_one >= 0.95);
  }
  CHECK_THROWS_AS(build_intertwiner(TrigSeries(Rational(1), -40, std::vector<Complex>(81, 0.1)), 0.0, one, 64),
                  ValidationError);
}
