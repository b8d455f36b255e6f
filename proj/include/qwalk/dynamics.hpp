#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/decompose.hpp"

namespace qwalk {

/// Finitely supported state: column x - first_site holds the C^n block at site x.
struct State {
  long first_site = 0;
  CMatrix amplitudes;  // n x sites

  int dimension() const { return static_cast<int>(amplitudes.rows()); }
  long sites() const { return static_cast<long>(amplitudes.cols()); }
  long last_site() const { return first_site + sites() - 1; }
  double norm() const { return amplitudes.norm(); }
  /// Fourier transform sum_x e^{ikx} xi_x.
  CVector fourier(double k) const;
};

/// delta_0 (x) e_component
State localized_state(int n, int component);
/// delta_0 (x) (1, ..., 1)/sqrt(n)
State uniform_coin_state(int n);
/// "delta0:e<j>" (1-based) or "uniform".
State builtin_state(std::string_view name, int n);

State parse_state(std::string_view text, int n);
std::string serialize_state(const State& state);

/// Default cap in bytes, from QWALK_MEM_CAP_MB (2048 when unset).
std::size_t memory_cap_bytes();

/// U^steps applied on a window grown by steps * bandwidth on each side.
State evolve(const WalkSpec& spec, const State& state, int steps, std::size_t memory_cap = memory_cap_bytes());
/// (U^*)^steps, same window growth.
State evolve_adjoint(const WalkSpec& spec, const State& state, int steps,
                     std::size_t memory_cap = memory_cap_bytes());

struct DistributionSnapshot {
  int t = 1;
  long first_site = 0;
  std::vector<double> masses;

  double rescaled(std::size_t i) const { return static_cast<double>(first_site + static_cast<long>(i)) / t; }
  double total() const;
  /// Mass at rescaled values v with lo < v < hi.
  double mass_between(double lo, double hi) const;
};

DistributionSnapshot position_distribution(const State& state, int t);

/// sum_x (x/t)^m mass(x)
double empirical_moment(const DistributionSnapshot& snapshot, int m);
/// <(D/t)^m psi, psi> evaluated on the amplitudes.
double amplitude_moment(const State& state, int t, int m);

struct Atom {
  double velocity = 0.0;
  double mass = 0.0;
};

struct LimitLaw {
  std::vector<Atom> atoms;
  double hist_lo = 0.0;
  double hist_hi = 0.0;
  std::vector<double> histogram;  // mass per bin of the continuous part
  std::vector<double> moments;    // moments[m], m = 0..max_moment
  /// Weighted velocity samples (velocity, mass) of the continuous part, sorted by velocity.
  std::vector<std::pair<double, double>> samples;
  double max_speed = 0.0;

  double total_mass() const;
  /// Limit CDF at x (right-continuous).
  double cdf(double x) const;
};

struct LimitLawOptions {
  int bins = 401;
  /// Histogram covers [-half_width, half_width]; <= 0 selects max speed + 0.05.
  double half_width = 0.0;
  int max_moment = 8;
};

/// Weak limit of the rescaled position distribution from the band data.
LimitLaw limit_law(const Decomposition& dec, const State& initial, const LimitLawOptions& options = {});

/// Kolmogorov distance sup_x |F_emp(x) - F_lim(x)|, skipping x within atom_window of an atom
/// so that each atom is compared through the cumulative jump across its window.
double kolmogorov_distance(const DistributionSnapshot& snapshot, const LimitLaw& law, double atom_window);

struct BallisticReport {
  bool valid = false;  // false when L <= ||[D, U]||
  double bound = 0.0;
  std::vector<std::pair<int, double>> outside;  // (t, mass outside [-L, L])
  bool passed = false;
};

BallisticReport ballistic_bound_check(const WalkSpec& spec, const State& initial, double bound, int t_max);

}  // namespace qwalk
