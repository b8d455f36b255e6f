#include "qwalk/walkspec.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <boost/math/tools/minima.hpp>
#include <nlohmann/json.hpp>

namespace qwalk {

using nlohmann::json;

namespace {

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

UnitarityError::UnitarityError(int offset, double residual)
    : ValidationError("walk is not unitary: coefficient identity for m = " + std::to_string(offset) +
                      " has residual " + [residual] {
                        std::ostringstream os;
                        os << residual;
                        return os.str();
                      }()),
      offset_(offset),
      residual_(residual) {}

CoefficientCheck check_coefficient_unitarity(int n, const std::map<int, CMatrix>& terms) {
  CoefficientCheck check;
  if (terms.empty()) return check;
  const int lo = terms.begin()->first;
  const int hi = terms.rbegin()->first;
  const CMatrix identity = CMatrix::Identity(n, n);
  // Only offsets in [-(hi - lo), hi - lo] can produce nonzero sums.
  for (int m = lo - hi; m <= hi - lo; ++m) {
    CMatrix sum = CMatrix::Zero(n, n);
    for (const auto& [j, a] : terms) {
      auto it = terms.find(j + m);
      if (it != terms.end()) sum += it->second * a.adjoint();
    }
    if (m == 0) sum -= identity;
    const double r = max_abs(sum);
    if (r > check.worst_residual) {
      check.worst_residual = r;
      check.worst_offset = m;
    }
  }
  return check;
}

WalkSpec::WalkSpec(int n, std::map<int, CMatrix> terms) : n_(n), terms_(std::move(terms)) {
  for (const auto& [j, a] : terms_) bandwidth_ = std::max(bandwidth_, std::abs(j));
}

WalkSpec WalkSpec::create(int n, std::map<int, CMatrix> terms) {
  if (n <= 0) throw ValidationError("coin dimension n must be positive");
  for (auto it = terms.begin(); it != terms.end();) {
    const CMatrix& a = it->second;
    if (a.rows() != n || a.cols() != n) {
      throw ValidationError("term for shift " + std::to_string(it->first) + " is " +
                            std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                            ", expected " + std::to_string(n) + "x" + std::to_string(n));
    }
    if (!a.allFinite()) {
      throw ValidationError("term for shift " + std::to_string(it->first) +
                            " has non-finite entries");
    }
    if (max_abs(a) == 0.0) {
      it = terms.erase(it);
    } else {
      ++it;
    }
  }
  if (terms.empty()) throw ValidationError("walk has no nonzero terms");
  const CoefficientCheck check = check_coefficient_unitarity(n, terms);
  if (check.worst_residual > kUnitarityTolerance) {
    throw UnitarityError(check.worst_offset, check.worst_residual);
  }
  return WalkSpec(n, std::move(terms));
}

CMatrix WalkSpec::symbol(double k) const {
  CMatrix u = CMatrix::Zero(n_, n_);
  for (const auto& [j, a] : terms_) u += std::polar(1.0, j * k) * a;
  return u;
}

CMatrix WalkSpec::commutator_symbol(double k) const {
  CMatrix u = CMatrix::Zero(n_, n_);
  for (const auto& [j, a] : terms_) {
    if (j != 0) u += (static_cast<double>(j) * std::polar(1.0, j * k)) * a;
  }
  return u;
}

bool operator==(const WalkSpec& a, const WalkSpec& b) {
  if (a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) return false;
  auto ib = b.terms_.begin();
  for (const auto& [j, m] : a.terms_) {
    if (j != ib->first || m != ib->second) return false;
    ++ib;
  }
  return true;
}

SymbolMatrix symbol_at(const WalkSpec& spec, double k) { return {k, spec.symbol(k)}; }

double symbol_unitarity_residual(const WalkSpec& spec, int samples) {
  const int n = spec.dimension();
  const CMatrix identity = CMatrix::Identity(n, n);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const CMatrix u = spec.symbol(kTwoPi * i / samples);
    worst = std::max(worst, (u * u.adjoint() - identity).norm());
  }
  return worst;
}

namespace {

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace

double commutator_norm(const WalkSpec& spec) {
  constexpr int kGrid = 4096;
  const double h = kTwoPi / kGrid;
  std::vector<double> values(kGrid);
  for (int i = 0; i < kGrid; ++i) values[i] = spectral_norm(spec.commutator_symbol(i * h));
  const double grid_max = *std::max_element(values.begin(), values.end());
  if (grid_max == 0.0) return 0.0;

  // Refine every grid-local maximum close to the global one.
  double best = grid_max;
  auto negated = [&spec](double k) { return -spectral_norm(spec.commutator_symbol(k)); };
  for (int i = 0; i < kGrid; ++i) {
    const double prev = values[(i + kGrid - 1) % kGrid];
    const double next = values[(i + 1) % kGrid];
    if (values[i] < prev || values[i] < next) continue;
    if (values[i] < grid_max - 1e-3 * std::max(1.0, grid_max)) continue;
    const double k = i * h;
    const auto [arg, val] = boost::math::tools::brent_find_minima(negated, k - h, k + h, 50);
    (void)arg;
    best = std::max(best, -val);
  }
  return best;
}

// ---------------------------------------------------------------------------
// JSON format: {"n": int, "terms": [{"shift": int, "matrix": [[[re,im],...],...]}]}

namespace {

Complex parse_complex(const json& v) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ValidationError("complex numbers must be [re, im] pairs");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

}  // namespace

WalkSpec parse_walk_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed walk-spec document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("terms")) {
    throw ValidationError("walk-spec document needs \"n\" and \"terms\"");
  }
  if (!doc["n"].is_number_integer()) throw ValidationError("\"n\" must be an integer");
  const int n = doc["n"].get<int>();
  if (n <= 0) throw ValidationError("\"n\" must be positive");
  if (!doc["terms"].is_array()) throw ValidationError("\"terms\" must be an array");

  std::map<int, CMatrix> terms;
  for (const json& term : doc["terms"]) {
    if (!term.is_object() || !term.contains("shift") || !term.contains("matrix") ||
        !term["shift"].is_number_integer()) {
      throw ValidationError("each term needs an integer \"shift\" and a \"matrix\"");
    }
    const int shift = term["shift"].get<int>();
    const json& rows = term["matrix"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
      throw ValidationError("matrix for shift " + std::to_string(shift) + " must have " +
                            std::to_string(n) + " rows");
    }
    CMatrix a(n, n);
    for (int r = 0; r < n; ++r) {
      if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != n) {
        throw ValidationError("matrix for shift " + std::to_string(shift) +
                              " is not square of size " + std::to_string(n));
      }
      for (int c = 0; c < n; ++c) a(r, c) = parse_complex(rows[r][c]);
    }
    if (!terms.emplace(shift, std::move(a)).second) {
      throw ValidationError("duplicate shift " + std::to_string(shift));
    }
  }
  return WalkSpec::create(n, std::move(terms));
}

std::string serialize_walk_spec(const WalkSpec& spec) {
  json terms = json::array();
  for (const auto& [j, a] : spec.terms()) {
    json rows = json::array();
    for (int r = 0; r < a.rows(); ++r) {
      json row = json::array();
      for (int c = 0; c < a.cols(); ++c) row.push_back(complex_json(a(r, c)));
      rows.push_back(std::move(row));
    }
    terms.push_back({{"shift", j}, {"matrix", std::move(rows)}});
  }
  json doc = {{"n", spec.dimension()}, {"terms", std::move(terms)}};
  return doc.dump(2) + "\n";
}

WalkSpec amplify(const WalkSpec& spec, int copies) {
  if (copies <= 0) throw ValidationError("amplification factor must be positive");
  const int n = spec.dimension();
  std::map<int, CMatrix> terms;
  for (const auto& [j, a] : spec.terms()) {
    CMatrix big = CMatrix::Zero(n * copies, n * copies);
    // Coin space C^n (x) C^m, coin index major.
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        big.block(r * copies, c * copies, copies, copies) =
            a(r, c) * CMatrix::Identity(copies, copies);
    terms.emplace(j, std::move(big));
  }
  return WalkSpec::create(n * copies, std::move(terms));
}

WalkSpec direct_sum(const WalkSpec& a, const WalkSpec& b) {
  const int na = a.dimension();
  const int nb = b.dimension();
  std::set<int> shifts;
  for (const auto& t : a.terms()) shifts.insert(t.first);
  for (const auto& t : b.terms()) shifts.insert(t.first);
  std::map<int, CMatrix> terms;
  for (int j : shifts) {
    CMatrix m = CMatrix::Zero(na + nb, na + nb);
    if (auto it = a.terms().find(j); it != a.terms().end()) m.topLeftCorner(na, na) = it->second;
    if (auto it = b.terms().find(j); it != b.terms().end())
      m.bottomRightCorner(nb, nb) = it->second;
    terms.emplace(j, std::move(m));
  }
  return WalkSpec::create(na + nb, std::move(terms));
}

}  // namespace qwalk
