#include "qwalk/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

namespace qwalk {

using nlohmann::json;

CVector State::fourier(double k) const {
  CVector out = CVector::Zero(dimension());
  for (long i = 0; i < sites(); ++i) out += std::polar(1.0, k * (first_site + i)) * amplitudes.col(i);
  return out;
}

State localized_state(int n, int component) {
  if (component < 0 || component >= n) throw ValidationError("coin component out of range");
  State s;
  s.amplitudes = CMatrix::Zero(n, 1);
  s.amplitudes(component, 0) = 1.0;
  return s;
}

State uniform_coin_state(int n) {
  State s;
  s.amplitudes = CMatrix::Constant(n, 1, 1.0 / std::sqrt(static_cast<double>(n)));
  return s;
}

State builtin_state(std::string_view name, int n) {
  if (name == "uniform") return uniform_coin_state(n);
  constexpr std::string_view prefix = "delta0:e";
  if (name.substr(0, prefix.size()) == prefix) {
    const std::string digits(name.substr(prefix.size()));
    try {
      std::size_t used = 0;
      const int j = std::stoi(digits, &used);
      if (used == digits.size()) return localized_state(n, j - 1);
    } catch (const std::logic_error&) {
    }
  }
  throw ValidationError("unknown built-in state '" + std::string(name) + "' (use uniform or delta0:e<j>)");
}

State parse_state(std::string_view text, int n) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed state document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array() || doc["entries"].empty()) {
    throw ValidationError("state document needs a nonempty \"entries\" array");
  }
  std::map<long, CVector> blocks;
  for (const json& entry : doc["entries"]) {
    if (!entry.contains("site") || !entry["site"].is_number_integer() || !entry.contains("vector") ||
        !entry["vector"].is_array()) {
      throw ValidationError("each state entry needs an integer \"site\" and a \"vector\"");
    }
    const json& vec = entry["vector"];
    if (static_cast<int>(vec.size()) != n) {
      throw ValidationError("state vector has " + std::to_string(vec.size()) + " components, walk has n = " +
                            std::to_string(n));
    }
    CVector v(n);
    for (int c = 0; c < n; ++c) {
      const json& z = vec[c];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        throw ValidationError("complex numbers must be [re, im] pairs");
      }
      v(c) = Complex(z[0].get<double>(), z[1].get<double>());
    }
    if (!blocks.emplace(entry["site"].get<long>(), std::move(v)).second) {
      throw ValidationError("duplicate site in state");
    }
  }
  State s;
  s.first_site = blocks.begin()->first;
  const long width = blocks.rbegin()->first - s.first_site + 1;
  s.amplitudes = CMatrix::Zero(n, width);
  for (const auto& [site, v] : blocks) s.amplitudes.col(site - s.first_site) = v;
  if (std::abs(s.norm() - 1.0) > 1e-12) throw ValidationError("initial state must have unit norm");
  return s;
}

std::string serialize_state(const State& state) {
  json entries = json::array();
  for (long i = 0; i < state.sites(); ++i) {
    if (state.amplitudes.col(i).squaredNorm() == 0.0) continue;
    json vec = json::array();
    for (int c = 0; c < state.dimension(); ++c) {
      vec.push_back({state.amplitudes(c, i).real(), state.amplitudes(c, i).imag()});
    }
    entries.push_back({{"site", state.first_site + i}, {"vector", std::move(vec)}});
  }
  return json{{"entries", std::move(entries)}}.dump(2) + "\n";
}

std::size_t memory_cap_bytes() {
  std::size_t megabytes = 2048;
  if (const char* env = std::getenv("QWALK_MEM_CAP_MB")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) megabytes = static_cast<std::size_t>(v);
  }
  return megabytes * 1024 * 1024;
}

namespace {

State run(const std::map<int, CMatrix>& terms, int bandwidth, const State& state, int steps,
          std::size_t memory_cap) {
  if (steps < 0) throw ValidationError("step count must be nonnegative");
  const int n = state.dimension();
  const double final_sites = static_cast<double>(state.sites()) + 2.0 * bandwidth * steps;
  const double bytes = 2.0 * n * final_sites * sizeof(Complex);
  if (bytes > static_cast<double>(memory_cap)) {
    throw MemoryCapExceeded("evolution window needs " + std::to_string(static_cast<long long>(bytes / 1048576)) +
                            " MB, above the cap of " + std::to_string(memory_cap / 1048576) + " MB");
  }
  State cur = state;
  for (int step = 0; step < steps; ++step) {
    const long width = cur.sites();
    State next;
    next.first_site = cur.first_site - bandwidth;
    next.amplitudes = CMatrix::Zero(n, width + 2 * bandwidth);
    // (U psi)(y) = sum_j A_j psi(y - j)
    for (const auto& [j, a] : terms) next.amplitudes.middleCols(j + bandwidth, width).noalias() += a * cur.amplitudes;
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

State evolve(const WalkSpec& spec, const State& state, int steps, std::size_t memory_cap) {
  if (state.dimension() != spec.dimension()) throw ValidationError("state and walk dimensions differ");
  return run(spec.terms(), spec.bandwidth(), state, steps, memory_cap);
}

State evolve_adjoint(const WalkSpec& spec, const State& state, int steps, std::size_t memory_cap) {
  if (state.dimension() != spec.dimension()) throw ValidationError("state and walk dimensions differ");
  std::map<int, CMatrix> adjoint_terms;
  for (const auto& [j, a] : spec.terms()) adjoint_terms.emplace(-j, a.adjoint());
  return run(adjoint_terms, spec.bandwidth(), state, steps, memory_cap);
}

double DistributionSnapshot::total() const {
  double sum = 0.0;
  for (double m : masses) sum += m;
  return sum;
}

double DistributionSnapshot::mass_between(double lo, double hi) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    const double v = rescaled(i);
    if (v > lo && v < hi) sum += masses[i];
  }
  return sum;
}

DistributionSnapshot position_distribution(const State& state, int t) {
  if (t < 1) throw ValidationError("rescaling time must be >= 1");
  DistributionSnapshot snap;
  snap.t = t;
  snap.first_site = state.first_site;
  snap.masses.resize(state.sites());
  for (long i = 0; i < state.sites(); ++i) snap.masses[i] = state.amplitudes.col(i).squaredNorm();
  return snap;
}

double empirical_moment(const DistributionSnapshot& snapshot, int m) {
  if (m < 0) throw ValidationError("moment order must be nonnegative");
  double sum = 0.0;
  for (std::size_t i = 0; i < snapshot.masses.size(); ++i) sum += std::pow(snapshot.rescaled(i), m) * snapshot.masses[i];
  return sum;
}

double amplitude_moment(const State& state, int t, int m) {
  if (m < 0) throw ValidationError("moment order must be nonnegative");
  // Apply the position operator D/t m times to the amplitude vector, then pair with psi.
  CMatrix applied = state.amplitudes;
  for (int r = 0; r < m; ++r)
    for (long i = 0; i < state.sites(); ++i) applied.col(i) *= static_cast<double>(state.first_site + i) / t;
  Complex inner = 0.0;
  for (long i = 0; i < state.sites(); ++i) inner += state.amplitudes.col(i).dot(applied.col(i));
  return inner.real();
}

double LimitLaw::total_mass() const {
  double sum = 0.0;
  for (const auto& a : atoms) sum += a.mass;
  for (const auto& s : samples) sum += s.second;
  return sum;
}

double LimitLaw::cdf(double x) const {
  double sum = 0.0;
  for (const auto& a : atoms)
    if (a.velocity <= x) sum += a.mass;
  const auto it = std::upper_bound(samples.begin(), samples.end(), x,
                                   [](double value, const auto& s) { return value < s.first; });
  for (auto p = samples.begin(); p != it; ++p) sum += p->second;
  return sum;
}

LimitLaw limit_law(const Decomposition& dec, const State& initial, const LimitLawOptions& options) {
  const BandSet& bands = dec.bands;
  if (bands.bands.empty()) throw ValidationError("decomposition carries no band data");
  for (const auto& band : bands.bands)
    if (band.sections.size() != band.values.size()) throw ValidationError("decomposition is missing eigenvector sections");
  if (initial.dimension() != bands.n) throw ValidationError("state and walk dimensions differ");

  const BandCoordinates coords = project_onto_bands(bands, [&initial](double k) { return initial.fourier(k); });
  const double cell = 1.0 / bands.grid_size;  // dk / 2 pi

  LimitLaw law;
  double atom_mass = 0.0;
  for (std::size_t b = 0; b < bands.bands.size(); ++b) {
    const Band& band = bands.bands[b];
    const CMatrix& c = coords[b];
    if (band.is_constant) {
      atom_mass += c.squaredNorm() * cell;
      continue;
    }
    // Group velocity Re[lambda' / (i lambda)] from the differentiated series.
    const std::vector<Complex> dlam = band.fourier.derivative().sample(band.sample_count());
    for (int i = 0; i < band.sample_count(); ++i) {
      // Snapped to 1e-12 so that flat velocities give exact point masses.
      const double v = std::round((dlam[i] / (Complex(0.0, 1.0) * band.values[i])).real() * 1e12) / 1e12;
      law.samples.emplace_back(v, c.row(i).squaredNorm() * cell);
      law.max_speed = std::max(law.max_speed, std::abs(v));
    }
  }
  if (atom_mass > 0.0) law.atoms.push_back({0.0, atom_mass});
  std::sort(law.samples.begin(), law.samples.end());

  const double half = options.half_width > 0.0 ? options.half_width : law.max_speed + 0.05;
  law.hist_lo = -half;
  law.hist_hi = half;
  law.histogram.assign(std::max(1, options.bins), 0.0);
  const double width = (law.hist_hi - law.hist_lo) / law.histogram.size();
  for (const auto& [v, w] : law.samples) {
    int bin = static_cast<int>(std::floor((v - law.hist_lo) / width));
    bin = std::clamp(bin, 0, static_cast<int>(law.histogram.size()) - 1);
    law.histogram[bin] += w;
  }

  law.moments.assign(options.max_moment + 1, 0.0);
  for (int m = 0; m <= options.max_moment; ++m) {
    double sum = 0.0;
    for (const auto& a : law.atoms) sum += std::pow(a.velocity, m) * a.mass;
    for (const auto& [v, w] : law.samples) sum += std::pow(v, m) * w;
    law.moments[m] = sum;
  }
  return law;
}

double kolmogorov_distance(const DistributionSnapshot& snapshot, const LimitLaw& law, double atom_window) {
  std::vector<std::pair<double, double>> emp;
  for (std::size_t i = 0; i < snapshot.masses.size(); ++i)
    if (snapshot.masses[i] > 0.0) emp.emplace_back(snapshot.rescaled(i), snapshot.masses[i]);
  std::vector<double> emp_cum(emp.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < emp.size(); ++i) emp_cum[i] = (acc += emp[i].second);
  auto emp_cdf = [&](double x) {
    const auto it = std::upper_bound(emp.begin(), emp.end(), x, [](double v, const auto& e) { return v < e.first; });
    return it == emp.begin() ? 0.0 : emp_cum[it - emp.begin() - 1];
  };

  std::set<double> points;
  for (const auto& e : emp) points.insert(e.first);
  for (const auto& s : law.samples) points.insert(s.first);
  for (const auto& a : law.atoms) {
    points.insert(a.velocity - atom_window);
    points.insert(a.velocity + atom_window);
  }

  double worst = 0.0;
  for (double p : points) {
    bool near_atom = false;
    for (const auto& a : law.atoms)
      if (std::abs(p - a.velocity) < atom_window) near_atom = true;
    if (near_atom) continue;
    const double below = std::nextafter(p, -std::numeric_limits<double>::infinity());
    worst = std::max(worst, std::abs(emp_cdf(p) - law.cdf(p)));
    worst = std::max(worst, std::abs(emp_cdf(below) - law.cdf(below)));
  }
  return worst;
}

BallisticReport ballistic_bound_check(const WalkSpec& spec, const State& initial, double bound, int t_max) {
  BallisticReport report;
  report.bound = bound;
  if (t_max < 4 || bound <= commutator_norm(spec)) return report;
  report.valid = true;
  State state = initial;
  int t = 0;
  for (int checkpoint : {t_max / 4, t_max / 2, t_max}) {
    state = evolve(spec, state, checkpoint - t);
    t = checkpoint;
    const DistributionSnapshot snap = position_distribution(state, t);
    double outside = 0.0;
    for (std::size_t i = 0; i < snap.masses.size(); ++i)
      if (std::abs(snap.rescaled(i)) >= bound) outside += snap.masses[i];
    report.outside.emplace_back(t, outside);
  }
  report.passed = report.outside.back().second < 1e-3;
  return report;
}

}  // namespace qwalk
