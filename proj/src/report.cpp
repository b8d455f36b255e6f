#include "qwalk/report.hpp"

#include <cstdio>
#include <sstream>

namespace qwalk {

using nlohmann::json;

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

std::string rational_text(Rational r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace

std::string spec_digest(const WalkSpec& spec) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_walk_spec(spec)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json rational_json(Rational r) { return {{"num", r.numerator()}, {"den", r.denominator()}}; }

json band_table_json(const BandSet& bands) {
  json rows = json::array();
  for (const Band& b : bands.bands) {
    json row = {{"degree", b.degree},
                {"multiplicity", b.multiplicity},
                {"winding", b.winding},
                {"constant", b.is_constant}};
    if (b.is_constant) {
      row["period_divisor"] = nullptr;
      row["min_period_over_2pi"] = nullptr;
      row["value"] = complex_json(b.values.front());
    } else {
      row["period_divisor"] = b.period_divisor;
      row["min_period_over_2pi"] = rational_json(Rational(b.degree, b.period_divisor));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json decomposition_json(const Decomposition& dec) {
  json constants = json::array();
  for (const auto& c : dec.constants) constants.push_back({{"alpha", complex_json(c.alpha)}, {"mult", c.multiplicity}});
  json primes = json::array();
  for (const auto& p : dec.primes) {
    primes.push_back({{"rate", rational_json(p.rate)}, {"mult", p.multiplicity}, {"winding", p.winding}});
  }
  return {{"constants", std::move(constants)},
          {"primes", std::move(primes)},
          {"homogeneity_broken", dec.homogeneity_broken},
          {"degrees_of_freedom", rational_json(dec.degrees_of_freedom())}};
}

json commutant_json(const CommutantReport& report) {
  json out = json::array();
  for (const auto& s : report.summands) {
    json entry = {{"kind", s.kind == CommutantSummand::Kind::Torus ? "torus" : "band_algebra"},
                  {"matrix_size", s.matrix_size},
                  {"members", s.members}};
    if (s.kind == CommutantSummand::Kind::Torus) entry["rate"] = rational_json(s.rate);
    out.push_back(std::move(entry));
  }
  return out;
}

json verdict_json(const RealizabilityVerdict& verdict) {
  json bands = json::array();
  for (const auto& b : verdict.band_windings) {
    bands.push_back({{"degree", b.degree}, {"multiplicity", b.multiplicity}, {"winding", b.winding}});
  }
  return {{"realizable", verdict.realizable}, {"det_winding", verdict.det_winding}, {"bands", std::move(bands)}};
}

json limit_law_json(const LimitLaw& law) {
  json atoms = json::array();
  for (const auto& a : law.atoms) atoms.push_back({{"velocity", a.velocity}, {"mass", a.mass}});
  return {{"atoms", std::move(atoms)},
          {"histogram", {{"lo", law.hist_lo}, {"hi", law.hist_hi}, {"bins", law.histogram.size()}, {"mass", law.histogram}}},
          {"moments", law.moments},
          {"max_speed", law.max_speed},
          {"total_mass", law.total_mass()}};
}

json analysis_report(const WalkSpec& spec, int grid_size) {
  const int det = det_winding(spec, grid_size);
  Decomposition dec = decompose(spec, grid_size);
  const BandSet& bands = dec.bands;
  if (det != band_winding_sum(bands)) throw InternalError("determinant winding disagrees with the band sum");
  const RealizabilityVerdict verdict = is_ct_realizable(bands, det);
  const Monodromy mono = monodromy_of(bands);
  return {{"schema_version", kSchemaVersion},
          {"tool_version", kToolVersion},
          {"spec", {{"digest", spec_digest(spec)}, {"n", spec.dimension()}, {"bandwidth", spec.bandwidth()}}},
          {"grid", {{"grid_size", grid_size}, {"start_index", bands.start_index}}},
          {"monodromy", {{"permutation", mono.permutation}, {"cycle_lengths", mono.cycle_lengths}}},
          {"bands", band_table_json(bands)},
          {"decomposition", decomposition_json(dec)},
          {"commutant", commutant_json(commutant_report(dec))},
          {"verdict", verdict_json(verdict)}};
}

bool IntertwinerTable::nonzero() const {
  for (const auto& row : entries)
    for (const auto& e : row)
      if (e.kind != IntertwinerKind::Zero) return true;
  return false;
}

int IntertwinerTable::count(IntertwinerKind kind) const {
  int total = 0;
  for (const auto& row : entries)
    for (const auto& e : row) total += e.kind == kind;
  return total;
}

std::string summand_label(const Summand& s) {
  if (const auto* c = std::get_if<ConstantWalk>(&s)) {
    return "constant(" + num(c->alpha.real()) + "," + num(c->alpha.imag()) + ")x" + std::to_string(c->multiplicity);
  }
  const auto& p = std::get<PrimeModelWalk>(s);
  return "prime(rate=" + rational_text(p.rate) + ",winding=" + std::to_string(p.winding) + ")x" +
         std::to_string(p.multiplicity);
}

IntertwinerTable intertwiner_table(const Decomposition& first, const Decomposition& second) {
  const auto rows = summands(first);
  const auto cols = summands(second);
  IntertwinerTable table;
  for (const auto& r : rows) table.row_labels.push_back(summand_label(r));
  for (const auto& c : cols) table.column_labels.push_back(summand_label(c));
  for (const auto& r : rows) {
    auto& line = table.entries.emplace_back();
    for (const auto& c : cols) line.push_back(intertwiner_space(r, c));
  }
  return table;
}

json intertwiner_json(const IntertwinerTable& table) {
  json entries = json::array();
  for (std::size_t i = 0; i < table.entries.size(); ++i)
    for (std::size_t j = 0; j < table.entries[i].size(); ++j) {
      const IntertwinerSpace& e = table.entries[i][j];
      json item = {{"row", i}, {"col", j}, {"kind", to_string(e.kind)}, {"description", e.description}};
      if (e.kind == IntertwinerKind::ModelTranslation) {
        item["rate"] = rational_json(e.rate);
        item["alpha"] = e.alpha;
      } else if (e.kind == IntertwinerKind::BandAlgebra) {
        item["constant"] = complex_json(e.constant);
      }
      entries.push_back(std::move(item));
    }
  return {{"schema_version", kSchemaVersion},
          {"tool_version", kToolVersion},
          {"rows", table.row_labels},
          {"cols", table.column_labels},
          {"entries", std::move(entries)},
          {"counts",
           {{"zero", table.count(IntertwinerKind::Zero)},
            {"model_translation", table.count(IntertwinerKind::ModelTranslation)},
            {"band_algebra", table.count(IntertwinerKind::BandAlgebra)}}},
          {"nonzero", table.nonzero()}};
}

void write_band_csv(std::ostream& out, const BandSet& bands) {
  out << "k";
  int sheet = 0;
  for (const Band& b : bands.bands)
    for (int copy = 0; copy < b.multiplicity; ++copy)
      for (int s = 0; s < b.degree; ++s, ++sheet) out << ",re_" << sheet << ",im_" << sheet;
  out << "\n";
  for (int i = 0; i < bands.grid_size; ++i) {
    out << num(kTwoPi * i / bands.grid_size);
    for (const Band& b : bands.bands)
      for (int copy = 0; copy < b.multiplicity; ++copy)
        for (int s = 0; s < b.degree; ++s) {
          const Complex z = b.values[i + s * bands.grid_size];
          out << "," << num(z.real()) << "," << num(z.imag());
        }
    out << "\n";
  }
}

void write_witness_csv(std::ostream& out, const BandSet& bands, const RealizabilityVerdict& verdict) {
  if (!verdict.witness) throw std::logic_error("no witness: the walk is not continuous-time realizable");
  out << "band,k_tilde,h\n";
  for (std::size_t b = 0; b < bands.bands.size(); ++b) {
    const auto& h = (*verdict.witness)[b];
    for (std::size_t i = 0; i < h.size(); ++i)
      out << b << "," << num(bands.bands[b].k_tilde(static_cast<int>(i))) << "," << num(h[i]) << "\n";
  }
}

void write_distribution_header(std::ostream& out) { out << "t,x,x_over_t,mass\n"; }

void write_distribution_csv(std::ostream& out, const DistributionSnapshot& snapshot) {
  for (std::size_t i = 0; i < snapshot.masses.size(); ++i) {
    if (snapshot.masses[i] == 0.0) continue;
    out << snapshot.t << "," << snapshot.first_site + static_cast<long>(i) << "," << num(snapshot.rescaled(i)) << ","
        << num(snapshot.masses[i]) << "\n";
  }
}

void write_triplet_csv(std::ostream& out, const CMatrix& m, double tol) {
  out << "row,col,re,im\n";
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const Complex z = m(r, c);
      if (std::abs(z) > tol) out << r << "," << c << "," << num(z.real()) << "," << num(z.imag()) << "\n";
    }
}

}  // namespace qwalk
