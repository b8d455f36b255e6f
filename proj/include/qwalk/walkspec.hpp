#pragma once

#include <map>
#include <string>
#include <string_view>

#include "qwalk/types.hpp"

namespace qwalk {

/// Homogeneous walk U = sum_j S^j (x) A_j on l2(Z) (x) C^n.
///
/// S is the bilateral shift delta_x -> delta_{x+1}; the Fourier symbol is
/// U^(k) = sum_j e^{ijk} A_j. Instances are always validated: every
/// coefficient identity sum_j A_{j+m} A_j^* = delta_{m,0} I holds to
/// kUnitarityTolerance entrywise.
class WalkSpec {
 public:
  static constexpr double kUnitarityTolerance = 1e-12;

  /// Validates and builds. Exactly-zero terms are dropped.
  /// Throws ValidationError (or UnitarityError) on bad input.
  static WalkSpec create(int n, std::map<int, CMatrix> terms);

  int dimension() const { return n_; }
  int bandwidth() const { return bandwidth_; }
  const std::map<int, CMatrix>& terms() const { return terms_; }

  /// sum_j e^{ijk} A_j
  CMatrix symbol(double k) const;
  /// sum_j j e^{ijk} A_j, the symbol of the commutator [D, U].
  CMatrix commutator_symbol(double k) const;

  friend bool operator==(const WalkSpec& a, const WalkSpec& b);

 private:
  WalkSpec(int n, std::map<int, CMatrix> terms);

  int n_ = 0;
  int bandwidth_ = 0;
  std::map<int, CMatrix> terms_;
};

class UnitarityError : public ValidationError {
 public:
  UnitarityError(int offset, double residual);
  int offset() const { return offset_; }
  double residual() const { return residual_; }

 private:
  int offset_;
  double residual_;
};

struct CoefficientCheck {
  int worst_offset = 0;     // m with the largest residual
  double worst_residual = 0.0;  // max entrywise |sum_j A_{j+m} A_j^* - delta_{m,0} I|
};

CoefficientCheck check_coefficient_unitarity(int n, const std::map<int, CMatrix>& terms);

struct SymbolMatrix {
  double k = 0.0;
  CMatrix entries;
};

SymbolMatrix symbol_at(const WalkSpec& spec, double k);

/// max_k ||U^(k)U^(k)^* - I|| over a uniform grid of the given size.
double symbol_unitarity_residual(const WalkSpec& spec, int samples = 256);

/// ||[D (x) id, U]||, maximized over k with local refinement.
double commutator_norm(const WalkSpec& spec);

WalkSpec parse_walk_spec(std::string_view text);
std::string serialize_walk_spec(const WalkSpec& spec);

WalkSpec amplify(const WalkSpec& spec, int copies);
WalkSpec direct_sum(const WalkSpec& a, const WalkSpec& b);

}  // namespace qwalk
