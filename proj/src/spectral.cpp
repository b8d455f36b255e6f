#include "qwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>

#include <Eigen/Eigenvalues>

#include "qwalk/assignment.hpp"

namespace qwalk {

namespace {

// Eigenvalues closer than this are treated as one near-degenerate cluster.
constexpr double kClusterGap = 1e-4;
// Clusters tighter than this are numerically degenerate: individual Schur
// vectors carry no information and the eigenspace is used instead.
constexpr double kExactGap = 1e-9;
constexpr double kMergeTolerance = 1e-9;
constexpr double kConstantTolerance = 1e-9;
constexpr double kPeriodSupportTolerance = 1e-9;
constexpr double kPeriodCheckTolerance = 1e-8;
constexpr int kMaxRefinements = 4;

struct EigenData {
  std::vector<Complex> values;
  CMatrix vectors;
};

EigenData decompose_symbol(const CMatrix& u) {
  // The symbol is normal, so its Schur form is diagonal up to rounding and the
  // Schur vectors are an orthonormal eigenbasis.
  Eigen::ComplexSchur<CMatrix> schur(u);
  EigenData out;
  const CMatrix& t = schur.matrixT();
  out.values.resize(t.rows());
  for (int i = 0; i < t.rows(); ++i) out.values[i] = t(i, i);
  out.vectors = schur.matrixU();
  return out;
}

Complex unit_phase(Complex z) {
  const double a = std::abs(z);
  return a > 0.0 ? z / a : Complex(1.0);
}

// Single-linkage clusters of eigenvalues; returns cluster id per eigenvalue.
std::vector<int> cluster_values(const std::vector<Complex>& values, double gap) {
  const int n = static_cast<int>(values.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (std::abs(values[a] - values[b]) < gap) parent[find(a)] = find(b);
  std::vector<int> id(n);
  for (int a = 0; a < n; ++a) id[a] = find(a);
  return id;
}

struct SheetState {
  Complex value;
  CVector vec;
};

/// Continues every sheet along k with eigenvalue extrapolation and
/// eigenvector overlaps, refining the step where the matching is ambiguous.
class Tracker {
 public:
  Tracker(const WalkSpec& spec, double k0, const EigenData& start) : spec_(spec) {
    n_ = spec.dimension();
    const CMatrix du = Complex(0.0, 1.0) * spec.commutator_symbol(k0);
    ks_.push_back(k0);
    values_.resize(n_);
    vecs_.resize(n_);
    slopes_.resize(n_);
    for (int s = 0; s < n_; ++s) {
      values_[s].push_back(start.values[s]);
      vecs_[s].push_back(start.vectors.col(s));
      // Hellmann-Feynman slope seeds the first extrapolation.
      slopes_[s] = start.vectors.col(s).dot(du * start.vectors.col(s));
    }
  }

  /// Advances from the current point to k_next; grid_data is reused when given.
  void advance(double k_next, const EigenData* grid_data) { advance_impl(k_next, grid_data, 0); }

  std::vector<SheetState> current() const {
    std::vector<SheetState> out(n_);
    for (int s = 0; s < n_; ++s) out[s] = {values_[s].back(), vecs_[s].back()};
    return out;
  }

 private:
  void advance_impl(double k_next, const EigenData* data, int depth) {
    const double k_prev = ks_.back();
    std::optional<EigenData> local;
    if (data == nullptr) {
      local = decompose_symbol(spec_.symbol(k_next));
      data = &*local;
    }
    std::vector<SheetState> next;
    if (try_step(k_next, *data, next)) {
      commit(k_next, next);
      return;
    }
    if (depth >= kMaxRefinements) throw UnresolvedCrossing(k_prev, k_next);
    const double mid = 0.5 * (k_prev + k_next);
    advance_impl(mid, nullptr, depth + 1);
    advance_impl(k_next, data, depth + 1);
  }

  Complex predict_value(int s, double k) const {
    const auto& lam = values_[s];
    if (ks_.size() == 1) return lam[0] + (k - ks_[0]) * slopes_[s];
    // Lagrange extrapolation through the stored points.
    Complex sum = 0.0;
    for (std::size_t a = 0; a < ks_.size(); ++a) {
      double w = 1.0;
      for (std::size_t b = 0; b < ks_.size(); ++b)
        if (b != a) w *= (k - ks_[b]) / (ks_[a] - ks_[b]);
      sum += w * lam[a];
    }
    return sum;
  }

  CVector predict_vector(int s, double k) const {
    const auto& v = vecs_[s];
    CVector p = v.back();
    if (v.size() >= 2) {
      const double k1 = ks_[ks_.size() - 1];
      const double k0 = ks_[ks_.size() - 2];
      p += ((k - k1) / (k1 - k0)) * (v[v.size() - 1] - v[v.size() - 2]);
    }
    return p.normalized();
  }

  bool try_step(double k, const EigenData& data, std::vector<SheetState>& out) const {
    std::vector<Complex> pred(n_);
    CMatrix pred_vecs(n_, n_);
    for (int s = 0; s < n_; ++s) {
      pred[s] = predict_value(s, k);
      pred_vecs.col(s) = predict_vector(s, k);
    }

    Eigen::MatrixXd cost(n_, n_);
    for (int s = 0; s < n_; ++s)
      for (int j = 0; j < n_; ++j) cost(s, j) = std::abs(pred[s] - data.values[j]);
    const std::vector<int> match = solve_assignment(cost);
    const std::vector<int> cluster = cluster_values(data.values, kClusterGap);

    // Each sheet must be clearly closer to its own cluster than to any other.
    for (int s = 0; s < n_; ++s) {
      const int own = cluster[match[s]];
      double d_own = std::numeric_limits<double>::infinity();
      double d_other = std::numeric_limits<double>::infinity();
      for (int j = 0; j < n_; ++j) {
        if (cluster[j] == own) {
          d_own = std::min(d_own, cost(s, j));
        } else {
          d_other = std::min(d_other, cost(s, j));
        }
      }
      if (d_own > 0.25 * d_other) return false;
    }

    out.assign(n_, {});
    const CMatrix u = spec_.symbol(k);
    std::vector<bool> done(n_, false);
    for (int seed = 0; seed < n_; ++seed) {
      if (done[seed]) continue;
      const int id = cluster[match[seed]];
      std::vector<int> sheets;
      std::vector<int> pairs;
      for (int s = 0; s < n_; ++s)
        if (cluster[match[s]] == id) {
          sheets.push_back(s);
          pairs.push_back(match[s]);
          done[s] = true;
        }
      const int m = static_cast<int>(sheets.size());

      double spread = 0.0;
      for (int a : pairs)
        for (int b : pairs) spread = std::max(spread, std::abs(data.values[a] - data.values[b]));

      if (m > 1 && spread < kExactGap) {
        // Degenerate eigenspace: continue the predicted vectors into it.
        CMatrix basis(n_, m);
        for (int c = 0; c < m; ++c) basis.col(c) = data.vectors.col(pairs[c]);
        CMatrix pv(n_, m);
        for (int c = 0; c < m; ++c) pv.col(c) = pred_vecs.col(sheets[c]);
        CMatrix w = basis * (basis.adjoint() * pv);
        Eigen::SelfAdjointEigenSolver<CMatrix> gram(w.adjoint() * w);
        if (gram.eigenvalues().minCoeff() < 0.5) return false;
        w = w * gram.operatorInverseSqrt();
        for (int c = 0; c < m; ++c) {
          const CVector v = w.col(c);
          out[sheets[c]] = {v.dot(u * v), v};
        }
        continue;
      }

      std::vector<int> assigned(m);
      if (m == 1) {
        assigned[0] = pairs[0];
      } else {
        // Distinct but close eigenvalues: eigenvectors decide.
        Eigen::MatrixXd ocost(m, m);
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            ocost(a, b) = -std::norm(pred_vecs.col(sheets[a]).dot(data.vectors.col(pairs[b])));
        const std::vector<int> om = solve_assignment(ocost);
        for (int a = 0; a < m; ++a) assigned[a] = pairs[om[a]];
      }
      const double min_overlap = (m == 1) ? 0.5 : 0.8;
      for (int a = 0; a < m; ++a) {
        const int s = sheets[a];
        const CVector q = data.vectors.col(assigned[a]);
        if (std::norm(pred_vecs.col(s).dot(q)) < min_overlap) return false;
        out[s] = {data.values[assigned[a]], q};
      }
    }

    // Parallel-transport gauge: overlap with the previous vector is real positive.
    for (int s = 0; s < n_; ++s) {
      const Complex g = vecs_[s].back().dot(out[s].vec);
      out[s].vec *= std::conj(unit_phase(g));
    }
    return true;
  }

  void commit(double k, const std::vector<SheetState>& next) {
    ks_.push_back(k);
    if (ks_.size() > 3) ks_.pop_front();
    for (int s = 0; s < n_; ++s) {
      values_[s].push_back(next[s].value);
      vecs_[s].push_back(next[s].vec);
      if (values_[s].size() > 3) values_[s].pop_front();
      if (vecs_[s].size() > 3) vecs_[s].pop_front();
    }
  }

  const WalkSpec& spec_;
  int n_ = 0;
  std::deque<double> ks_;
  std::vector<std::deque<Complex>> values_;
  std::vector<std::deque<CVector>> vecs_;
  std::vector<Complex> slopes_;
};

// Grid point with the fewest near-degenerate pairs, then the widest gap.
int choose_start(const std::vector<EigenData>& grid) {
  int best = 0;
  int best_near = std::numeric_limits<int>::max();
  double best_gap = -1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& v = grid[i].values;
    int near = 0;
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < v.size(); ++a)
      for (std::size_t b = a + 1; b < v.size(); ++b) {
        const double d = std::abs(v[a] - v[b]);
        if (d < kClusterGap) ++near;
        if (d >= kExactGap) gap = std::min(gap, d);
      }
    if (near < best_near || (near == best_near && gap > best_gap + 1e-12)) {
      best = static_cast<int>(i);
      best_near = near;
      best_gap = gap;
    }
  }
  return best;
}

double max_distance(const std::vector<Complex>& a, const std::vector<Complex>& b, int shift) {
  const int total = static_cast<int>(a.size());
  double worst = 0.0;
  for (int i = 0; i < total; ++i) worst = std::max(worst, std::abs(a[i] - b[(i + shift) % total]));
  return worst;
}

int detect_period_divisor(const Band& band) {
  const int g = band.fourier.support_gcd(kPeriodSupportTolerance);
  if (g <= 1) return 1;
  const int total = band.sample_count();
  for (int m = g; m > 1; --m) {
    if (g % m != 0) continue;
    double worst = 0.0;
    if (total % m == 0) {
      worst = max_distance(band.values, band.values, total / m);
    } else {
      const TrigSeries shifted = band.fourier.translated(band.torus_length() / m);
      for (int i = 0; i < total; ++i)
        worst = std::max(worst, std::abs(shifted(band.k_tilde(i)) - band.values[i]));
    }
    if (worst <= kPeriodCheckTolerance) return m;
  }
  return 1;
}

void finalize_band(Band& band) {
  band.fourier = TrigSeries::from_samples(band.values, Rational(1, band.degree));
  double dev = 0.0;
  for (const Complex& z : band.values) dev = std::max(dev, std::abs(z - band.values[0]));
  band.is_constant = dev < kConstantTolerance;
  band.decay = band.is_constant ? 0.0 : band.fourier.decay_ratio();
  band.period_divisor = band.is_constant ? 0 : detect_period_divisor(band);
  band.winding = band.is_constant ? 0 : winding_number(band);
}

}  // namespace

BandSet sample_bands(const WalkSpec& spec, int grid_size) {
  if (grid_size < 64 || (grid_size & (grid_size - 1)) != 0) {
    throw ValidationError("grid size must be a power of two >= 64");
  }
  const int n = spec.dimension();
  const double h = kTwoPi / grid_size;

  std::vector<EigenData> grid(grid_size);
  for (int i = 0; i < grid_size; ++i) grid[i] = decompose_symbol(spec.symbol(i * h));
  const int i0 = choose_start(grid);

  // sheet_values[s][j], sheet_vecs[s][j]: sheet s at k = (i0 + j) h, j in [0, grid_size].
  std::vector<std::vector<Complex>> sheet_values(n, std::vector<Complex>(grid_size + 1));
  std::vector<std::vector<CVector>> sheet_vecs(n, std::vector<CVector>(grid_size + 1));

  Tracker tracker(spec, i0 * h, grid[i0]);
  auto record = [&](int j) {
    const auto state = tracker.current();
    for (int s = 0; s < n; ++s) {
      sheet_values[s][j] = state[s].value;
      sheet_vecs[s][j] = state[s].vec;
    }
  };
  record(0);
  for (int j = 1; j <= grid_size; ++j) {
    // The last step lands on k0 + 2 pi, whose symbol equals the start one.
    const int idx = (i0 + j) % grid_size;
    tracker.advance((i0 + j) * h, j == grid_size ? nullptr : &grid[idx]);
    record(j);
  }

  // Monodromy: sheet s after one loop continues as sheet sigma(s).
  Eigen::MatrixXd close_cost(n, n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      close_cost(s, t) = std::abs(sheet_values[s][grid_size] - sheet_values[t][0]) + 1.0 -
                         std::norm(sheet_vecs[s][grid_size].dot(sheet_vecs[t][0]));
    }
  const std::vector<int> sigma = solve_assignment(close_cost);
  for (int s = 0; s < n; ++s) {
    if (std::abs(sheet_values[s][grid_size] - sheet_values[sigma[s]][0]) > 1e-6) {
      throw InternalError("tracked sheets do not close up after one loop");
    }
  }

  BandSet set;
  set.n = n;
  set.grid_size = grid_size;
  set.monodromy = sigma;
  set.start_index = i0;

  std::vector<Band> raw;
  std::vector<bool> visited(n, false);
  for (int s0 = 0; s0 < n; ++s0) {
    if (visited[s0]) continue;
    std::vector<int> cycle;
    for (int s = s0; !visited[s]; s = sigma[s]) {
      visited[s] = true;
      cycle.push_back(s);
    }
    const int d = static_cast<int>(cycle.size());
    const int total = d * grid_size;

    // Align phases at the sheet junctions, then spread the holonomy over the loop.
    std::vector<Complex> seq_values(total);
    std::vector<CVector> seq_vecs(total);
    Complex carry = 1.0;
    for (int c = 0; c < d; ++c) {
      const int s = cycle[c];
      if (c > 0) {
        const CVector& prev_end = sheet_vecs[cycle[c - 1]][grid_size];
        carry *= std::conj(unit_phase(prev_end.dot(sheet_vecs[s][0])));
      }
      for (int j = 0; j < grid_size; ++j) {
        seq_values[c * grid_size + j] = sheet_values[s][j];
        seq_vecs[c * grid_size + j] = carry * sheet_vecs[s][j];
      }
      if (c == d - 1) {
        const CVector end = carry * sheet_vecs[s][grid_size];
        const double holonomy = std::arg(end.dot(seq_vecs[0]));
        for (int j = 0; j < total; ++j)
          seq_vecs[j] *= std::polar(1.0, holonomy * j / static_cast<double>(total));
      }
    }

    Band band;
    band.degree = d;
    band.multiplicity = 1;
    band.grid_size = grid_size;
    band.values.resize(total);
    band.sections.resize(total);
    for (int j = 0; j < total; ++j) {
      const int i = (i0 + j) % total;
      band.values[i] = seq_values[j];
      band.sections[i] = seq_vecs[j];
    }
    // Gauge: largest-modulus component real positive at k~ = 0.
    Eigen::Index big = 0;
    band.sections[0].col(0).cwiseAbs().maxCoeff(&big);
    const Complex gauge = std::conj(unit_phase(band.sections[0](big, 0)));
    for (auto& v : band.sections) v *= gauge;
    band.sheet_cycles.push_back(cycle);
    raw.push_back(std::move(band));
  }

  // Merge globally coincident bands into one band with multiplicity.
  for (auto& band : raw) {
    bool merged = false;
    for (auto& target : set.bands) {
      if (target.degree != band.degree) continue;
      for (int r = 0; r < band.degree && !merged; ++r) {
        const int shift = r * grid_size;
        if (max_distance(target.values, band.values, shift) >= kMergeTolerance) continue;
        const int total = target.sample_count();
        for (int i = 0; i < total; ++i) {
          CMatrix joined(n, target.multiplicity + 1);
          joined << target.sections[i], band.sections[(i + shift) % total];
          target.sections[i] = std::move(joined);
        }
        target.multiplicity += 1;
        target.sheet_cycles.push_back(band.sheet_cycles.front());
        merged = true;
      }
      if (merged) break;
    }
    if (!merged) set.bands.push_back(std::move(band));
  }
  for (auto& band : set.bands) finalize_band(band);
  return set;
}

Monodromy monodromy_of(const BandSet& bands) {
  Monodromy out;
  out.permutation = bands.monodromy;
  for (const auto& band : bands.bands)
    for (std::size_t c = 0; c < band.sheet_cycles.size(); ++c) out.cycle_lengths.push_back(band.degree);
  std::sort(out.cycle_lengths.begin(), out.cycle_lengths.end());
  return out;
}

Monodromy monodromy(const WalkSpec& spec, int grid_size) {
  return monodromy_of(sample_bands(spec, grid_size));
}

int minimal_period(const Band& band) {
  if (band.is_constant) throw ConstantBand();
  return band.period_divisor;
}

int winding_number(std::span<const Complex> loop) {
  const std::size_t count = loop.size();
  double total = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double step = std::arg(loop[(i + 1) % count] / loop[i]);
    if (std::abs(step) > 0.5 * M_PI) {
      throw NonIntegerWinding("argument increment too large to unwrap; grid too coarse");
    }
    total += step;
  }
  const double turns = total / kTwoPi;
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 1e-6) {
    throw NonIntegerWinding("winding " + std::to_string(turns) + " is not an integer");
  }
  return static_cast<int>(rounded);
}

int winding_number(const Band& band) {
  if (band.is_constant) return 0;
  try {
    return winding_number(band.values);
  } catch (const NonIntegerWinding&) {
    // One refinement: evaluate the Fourier series on a doubled grid.
    const std::vector<Complex> fine = band.fourier.sample(2 * band.sample_count());
    return winding_number(fine);
  }
}

int det_winding_direct(const WalkSpec& spec, int grid_size) {
  for (int size = grid_size, attempt = 0;; size *= 2, ++attempt) {
    std::vector<Complex> det(size);
    for (int i = 0; i < size; ++i) det[i] = spec.symbol(kTwoPi * i / size).determinant();
    try {
      return winding_number(det);
    } catch (const NonIntegerWinding&) {
      if (attempt >= 4) throw;
    }
  }
}

int band_winding_sum(const BandSet& bands) {
  int sum = 0;
  for (const auto& band : bands.bands) sum += band.multiplicity * band.winding;
  return sum;
}

int det_winding(const WalkSpec& spec, int grid_size) {
  const int direct = det_winding_direct(spec, grid_size);
  const int from_bands = band_winding_sum(sample_bands(spec, grid_size));
  if (direct != from_bands) {
    throw InternalError("det winding " + std::to_string(direct) +
                        " differs from the band winding sum " + std::to_string(from_bands));
  }
  return direct;
}

std::vector<Complex> sheet_values_at(const BandSet& bands, double k) {
  std::vector<Complex> out;
  for (const auto& band : bands.bands)
    for (int s = 0; s < band.degree; ++s) {
      const Complex z = band.fourier(k + kTwoPi * s);
      for (int c = 0; c < band.multiplicity; ++c) out.push_back(z);
    }
  return out;
}

double fiber_mismatch(const WalkSpec& spec, const BandSet& bands, double k) {
  const std::vector<Complex> sheets = sheet_values_at(bands, k);
  const Eigen::VectorXcd eig = spec.symbol(k).eigenvalues();
  const int n = static_cast<int>(eig.size());
  if (static_cast<int>(sheets.size()) != n) return std::numeric_limits<double>::infinity();
  Eigen::MatrixXd cost(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) cost(a, b) = std::abs(sheets[a] - eig(b));
  const std::vector<int> match = solve_assignment(cost);
  double worst = 0.0;
  for (int a = 0; a < n; ++a) worst = std::max(worst, cost(a, match[a]));
  return worst;
}

CMatrix sections_at(const BandSet& bands, int grid_index) {
  CMatrix out(bands.n, bands.n);
  int col = 0;
  for (const auto& band : bands.bands)
    for (int s = 0; s < band.degree; ++s) {
      const CMatrix& v = band.sections[grid_index + s * bands.grid_size];
      out.middleCols(col, v.cols()) = v;
      col += static_cast<int>(v.cols());
    }
  return out;
}

BandCoordinates project_onto_bands(const BandSet& bands, const std::function<CVector(double)>& f) {
  const int grid = bands.grid_size;
  std::vector<CVector> base(grid);
  for (int i = 0; i < grid; ++i) base[i] = f(kTwoPi * i / grid);
  BandCoordinates out;
  for (const auto& band : bands.bands) {
    CMatrix coords(band.sample_count(), band.multiplicity);
    for (int i = 0; i < band.sample_count(); ++i)
      coords.row(i) = (band.sections[i].adjoint() * base[i % grid]).transpose();
    out.push_back(std::move(coords));
  }
  return out;
}

}  // namespace qwalk
