#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "qwalk/dynamics.hpp"
#include "qwalk/intertwine.hpp"
#include "qwalk/realize.hpp"

namespace qwalk {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a 64 of the canonical serialization, as 16 hex digits.
std::string spec_digest(const WalkSpec& spec);

nlohmann::json rational_json(Rational r);
nlohmann::json band_table_json(const BandSet& bands);
nlohmann::json decomposition_json(const Decomposition& dec);
nlohmann::json commutant_json(const CommutantReport& report);
nlohmann::json verdict_json(const RealizabilityVerdict& verdict);
nlohmann::json limit_law_json(const LimitLaw& law);

/// Full analysis: bands, decomposition, commutant and verdict from one tracking pass.
nlohmann::json analysis_report(const WalkSpec& spec, int grid_size);

/// Pairwise intertwiner spaces between the summands of two walks.
struct IntertwinerTable {
  std::vector<std::string> row_labels;
  std::vector<std::string> column_labels;
  std::vector<std::vector<IntertwinerSpace>> entries;

  bool nonzero() const;
  int count(IntertwinerKind kind) const;
};

IntertwinerTable intertwiner_table(const Decomposition& first, const Decomposition& second);
nlohmann::json intertwiner_json(const IntertwinerTable& table);

std::string summand_label(const Summand& s);

// CSV writers; numbers use 17 significant digits.
void write_band_csv(std::ostream& out, const BandSet& bands);
void write_witness_csv(std::ostream& out, const BandSet& bands, const RealizabilityVerdict& verdict);
void write_distribution_csv(std::ostream& out, const DistributionSnapshot& snapshot);
void write_distribution_header(std::ostream& out);
void write_triplet_csv(std::ostream& out, const CMatrix& m, double tol = 0.0);

}  // namespace qwalk
