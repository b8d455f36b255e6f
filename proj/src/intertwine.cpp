#include "qwalk/intertwine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/SVD>

namespace qwalk {

namespace {

constexpr double kSignificant = 1e-8;
constexpr double kSameConstant = 1e-9;

double wrap_angle(double a) { return std::remainder(a, kTwoPi); }

std::string rational_text(Rational r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << "/" << r.denominator();
  return os.str();
}

// max_k |b2(k) - b1(k + alpha)|, with theta = rate * alpha.
double translation_residual(const TrigSeries& b1, const TrigSeries& b2, double theta) {
  const int lo = std::min(b1.min_index(), b2.min_index());
  const int hi = std::max(b1.max_index(), b2.max_index());
  std::vector<Complex> diff;
  for (int j = lo; j <= hi; ++j) diff.push_back(b2.coefficient(j) - b1.coefficient(j) * std::polar(1.0, j * theta));
  const TrigSeries d(b1.rate(), lo, std::move(diff));
  const int count = std::max(256, 4 * (hi - lo + 1));
  double worst = 0.0;
  for (const Complex& z : d.sample(count)) worst = std::max(worst, std::abs(z));
  return worst;
}

}  // namespace

TranslationMatch find_translation(const TrigSeries& b1, const TrigSeries& b2) {
  TranslationMatch out;
  if (b1.rate() != b2.rate()) return out;

  std::vector<int> support;
  int anchor = 0;
  double anchor_size = 0.0;
  for (int j = b1.min_index(); j <= b1.max_index(); ++j) {
    const double a = std::abs(b1.coefficient(j));
    if (j == 0 || a <= kSignificant) continue;
    support.push_back(j);
    if (a > anchor_size) {
      anchor_size = a;
      anchor = j;
    }
  }
  if (support.empty() || b2.support_gcd(kSignificant) == 0) return out;

  // c2_j = c1_j exp(i j theta); the anchor coefficient fixes theta up to 2 pi / |anchor|.
  const double phase = std::arg(b2.coefficient(anchor) / b1.coefficient(anchor));
  double best_theta = 0.0;
  for (int t = 0; t < std::abs(anchor); ++t) {
    double theta = (phase + kTwoPi * t) / anchor;
    for (int iter = 0; iter < 3; ++iter) {
      double num = 0.0, den = 0.0;
      for (int j : support) {
        const Complex c1 = b1.coefficient(j);
        const Complex c2 = b2.coefficient(j);
        if (std::abs(c2) <= kSignificant) continue;
        const double w = std::norm(c1);
        num += w * j * wrap_angle(std::arg(c2 / c1) - j * theta);
        den += w * j * j;
      }
      if (den > 0.0) theta += num / den;
    }
    const double residual = translation_residual(b1, b2, theta);
    if (residual < out.residual) {
      out.residual = residual;
      best_theta = theta;
    }
  }
  if (out.residual <= kTranslationTolerance) {
    double theta = std::fmod(best_theta, kTwoPi);
    if (theta < 0.0) theta += kTwoPi;
    const double alpha = theta / b1.rate_value();
    out.alpha = alpha >= b1.period() ? 0.0 : alpha;
  }
  return out;
}

std::string to_string(IntertwinerKind kind) {
  switch (kind) {
    case IntertwinerKind::Zero:
      return "zero";
    case IntertwinerKind::ModelTranslation:
      return "model_translation";
    case IntertwinerKind::BandAlgebra:
      return "band_algebra";
  }
  return "zero";
}

IntertwinerSpace intertwiner_space(const Summand& w1, const Summand& w2) {
  IntertwinerSpace out;
  const auto* c1 = std::get_if<ConstantWalk>(&w1);
  const auto* c2 = std::get_if<ConstantWalk>(&w2);
  const auto* p1 = std::get_if<PrimeModelWalk>(&w1);
  const auto* p2 = std::get_if<PrimeModelWalk>(&w2);

  if (c1 && c2) {
    if (std::abs(c1->alpha - c2->alpha) < kSameConstant) {
      out.kind = IntertwinerKind::BandAlgebra;
      out.constant = c1->alpha;
      out.description = "equal constants: every uniform operator intertwines";
    } else {
      out.description = "distinct constants";
    }
    return out;
  }
  if (!p1 || !p2) {
    out.description = "constant vs prime: the prime walk has no eigenvectors";
    return out;
  }
  if (p1->rate != p2->rate) {
    out.description = "rate mismatch " + rational_text(p1->rate) + " vs " + rational_text(p2->rate);
    return out;
  }
  const TranslationMatch match = find_translation(p1->band, p2->band);
  if (!match.alpha) {
    out.description = "bands are not translates";
    return out;
  }
  out.kind = IntertwinerKind::ModelTranslation;
  out.rate = p1->rate;
  out.alpha = *match.alpha;
  std::ostringstream os;
  os << "F M[rho] F^-1 exp(i alpha D) with rate " << rational_text(p1->rate) << ", alpha " << out.alpha;
  out.description = os.str();
  return out;
}

CommutantReport commutant_report(const Decomposition& dec) {
  CommutantReport report;
  const std::size_t count = dec.primes.size();
  std::vector<std::size_t> parent(count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = a + 1; b < count; ++b) {
      if (find(a) == find(b) || dec.primes[a].rate != dec.primes[b].rate) continue;
      if (find_translation(dec.primes[a].band, dec.primes[b].band).alpha) parent[find(b)] = find(a);
    }
  for (std::size_t a = 0; a < count; ++a) {
    if (find(a) != a) continue;
    CommutantSummand s{CommutantSummand::Kind::Torus, dec.primes[a].rate, 0, {}};
    for (std::size_t b = 0; b < count; ++b)
      if (find(b) == a) {
        s.matrix_size += dec.primes[b].multiplicity;
        s.members.push_back(b);
      }
    report.summands.push_back(std::move(s));
  }
  for (std::size_t c = 0; c < dec.constants.size(); ++c) {
    report.summands.push_back(
        {CommutantSummand::Kind::BandAlgebra, Rational(1), dec.constants[c].multiplicity, {c}});
  }
  return report;
}

double BuiltIntertwiner::interior_residual() const {
  const int size = static_cast<int>(v.rows());
  const int inner = size - 2 * margin;
  const CMatrix commutator = v * u1 - u2 * v;
  const CMatrix block = commutator.block(margin, margin, inner, inner);
  Eigen::BDCSVD<CMatrix> svd(block);
  return svd.singularValues()(0);
}

std::vector<std::pair<double, double>> BuiltIntertwiner::transition_measure(int column_site) const {
  const int col = column_site - first_site;
  if (col < 0 || col >= v.cols()) throw ValidationError("column outside the intertwiner window");
  if (column_site == 0) throw ValidationError("transition measure needs a nonzero column site");
  std::vector<std::pair<double, double>> out;
  for (int row = 0; row < v.rows(); ++row) {
    const double mass = std::norm(v(row, col));
    if (mass > 0.0) out.emplace_back(static_cast<double>(first_site + row) / column_site, mass);
  }
  return out;
}

BuiltIntertwiner build_intertwiner(const TrigSeries& band, double alpha, const TrigSeries& rho, int size,
                                   int first_site, double coefficient_tol) {
  if (band.rate() != rho.rate()) throw ValidationError("rho must live on the same torus as the band");
  const TrigSeries lam = band.trimmed(coefficient_tol);
  const TrigSeries r = rho.trimmed(coefficient_tol);
  const int bw_u = std::max(std::abs(lam.min_index()), std::abs(lam.max_index()));
  const int bw_v = std::max(std::abs(r.min_index()), std::abs(r.max_index()));

  BuiltIntertwiner out;
  out.first_site = first_site;
  out.margin = bw_u + bw_v;
  if (size - 2 * out.margin <= 0) {
    throw ValidationError("intertwiner window of " + std::to_string(size) +
                          " sites leaves no interior for margin " + std::to_string(out.margin));
  }
  const double theta = band.rate_value() * alpha;
  out.u1 = CMatrix::Zero(size, size);
  out.u2 = CMatrix::Zero(size, size);
  CMatrix conv = CMatrix::Zero(size, size);
  for (int a = 0; a < size; ++a)
    for (int b = 0; b < size; ++b) {
      const int j = a - b;
      out.u1(a, b) = lam.coefficient(j);
      out.u2(a, b) = lam.coefficient(j) * std::polar(1.0, j * theta);
      conv(a, b) = r.coefficient(j);
    }
  // exp(i alpha D_r) is diagonal with e^{i alpha x}, x = rate * site.
  Eigen::VectorXcd phases(size);
  for (int a = 0; a < size; ++a) phases(a) = std::polar(1.0, theta * (first_site + a));
  out.v = conv * phases.asDiagonal();
  return out;
}

}  // namespace qwalk
