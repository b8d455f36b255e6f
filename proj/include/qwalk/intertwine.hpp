#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qwalk/decompose.hpp"

namespace qwalk {

/// Translation alpha with lambda2(k) = lambda1(k + alpha), if one exists.
struct TranslationMatch {
  std::optional<double> alpha;  // in [0, 2 pi / rate)
  /// max_k |lambda2(k) - lambda1(k + alpha)| for the best candidate alpha.
  double residual = std::numeric_limits<double>::infinity();
};

inline constexpr double kTranslationTolerance = 1e-7;

/// Both series must be non-constant bands with the same rate; otherwise no match.
TranslationMatch find_translation(const TrigSeries& b1, const TrigSeries& b2);

enum class IntertwinerKind { Zero, ModelTranslation, BandAlgebra };

std::string to_string(IntertwinerKind kind);

struct IntertwinerSpace {
  IntertwinerKind kind = IntertwinerKind::Zero;
  Rational rate{1};      // ModelTranslation only
  double alpha = 0.0;    // ModelTranslation only
  Complex constant{1.0};  // BandAlgebra only
  std::string description;
};

/// Uniform intertwiners from summand w1 to summand w2.
IntertwinerSpace intertwiner_space(const Summand& w1, const Summand& w2);

struct CommutantSummand {
  enum class Kind { Torus, BandAlgebra } kind;
  Rational rate{1};  // Torus only
  int matrix_size = 1;
  /// Indices into Decomposition::primes or ::constants forming this class.
  std::vector<std::size_t> members;
};

struct CommutantReport {
  std::vector<CommutantSummand> summands;
};

CommutantReport commutant_report(const Decomposition& dec);

/// Truncation of V = F M[rho] F^{-1} exp(i alpha D_r) to sites m in [first_site, first_site + size)
/// of l2(rZ) (site m sits at position rate * m), together with U1 = M[lambda1] and
/// U2 = M[lambda1(. + alpha)] on the same window.
struct BuiltIntertwiner {
  int first_site = 0;
  CMatrix v;
  CMatrix u1;
  CMatrix u2;
  /// Rows/columns within this distance of the window edge are boundary-affected.
  int margin = 0;

  /// Operator norm of (V U1 - U2 V) on the interior block.
  double interior_residual() const;
  /// Transition measure p_y = sum_x |V_{x,y}|^2 delta_{x/y} as (x/y, mass) pairs.
  std::vector<std::pair<double, double>> transition_measure(int column_site) const;
};

/// Coefficients of band and rho below coefficient_tol are dropped.
/// Throws ValidationError when the window leaves no interior.
BuiltIntertwiner build_intertwiner(const TrigSeries& band, double alpha, const TrigSeries& rho,
                                   int size, int first_site = 0, double coefficient_tol = 1e-14);

}  // namespace qwalk
