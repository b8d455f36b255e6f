// qwalk: command-line front end.
//
// Exit codes: 0 success, 1 I/O or internal failure, 2 validation error
// (including bad usage), 3 unresolved band crossing, 4 memory cap exceeded.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qwalk/fixtures.hpp"
#include "qwalk/report.hpp"

namespace {

using namespace qwalk;

constexpr int kExitIo = 1;
constexpr int kExitValidation = 2;
constexpr int kExitCrossing = 3;
constexpr int kExitMemory = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

WalkSpec load_spec(const std::string& source) {
  constexpr std::string_view prefix = "builtin:";
  if (source.rfind(prefix, 0) == 0) return fixtures::by_name(source.substr(prefix.size()));
  return parse_walk_spec(read_file(source));
}

// Writes to path, or stdout when path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write '" + path + "'");
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

struct Globals {
  int grid = kDefaultGridSize;
  unsigned seed = 0;
  std::string out;
  std::string format = "json";
};

int run_analyze(const Globals& g, const std::string& spec_path) {
  const WalkSpec spec = load_spec(spec_path);
  if (g.format == "csv") {
    std::ostringstream csv;
    write_band_csv(csv, sample_bands(spec, g.grid));
    emit(g.out, csv.str());
  } else {
    emit(g.out, dump(analysis_report(spec, g.grid)));
  }
  return 0;
}

int run_decompose(const Globals& g, const std::string& spec_path) {
  const WalkSpec spec = load_spec(spec_path);
  nlohmann::json doc = decomposition_json(decompose(spec, g.grid));
  doc["schema_version"] = kSchemaVersion;
  doc["spec_digest"] = spec_digest(spec);
  emit(g.out, dump(doc));
  return 0;
}

int run_realizable(const Globals& g, const std::string& spec_path, const std::string& witness_path) {
  const WalkSpec spec = load_spec(spec_path);
  const BandSet bands = sample_bands(spec, g.grid);
  const RealizabilityVerdict verdict = is_ct_realizable(bands, det_winding(spec, g.grid));
  if (g.format == "csv") {
    if (!verdict.realizable) throw ValidationError("walk is not continuous-time realizable; no witness to write");
    std::ostringstream csv;
    write_witness_csv(csv, bands, verdict);
    emit(g.out, csv.str());
    return 0;
  }
  if (!witness_path.empty()) {
    if (!verdict.realizable) throw ValidationError("walk is not continuous-time realizable; no witness to write");
    std::ostringstream csv;
    write_witness_csv(csv, bands, verdict);
    emit(witness_path, csv.str());
  }
  nlohmann::json doc = verdict_json(verdict);
  doc["schema_version"] = kSchemaVersion;
  doc["spec_digest"] = spec_digest(spec);
  emit(g.out, dump(doc));
  return 0;
}

struct SimulateArgs {
  std::string spec;
  std::string state_path;
  std::string builtin = "delta0:e1";
  int steps = 0;
  std::vector<int> checkpoints;
  std::string csv;
  bool limit_law = false;
};

int run_simulate(const Globals& g, SimulateArgs a) {
  const WalkSpec spec = load_spec(a.spec);
  const State initial =
      a.state_path.empty() ? builtin_state(a.builtin, spec.dimension()) : parse_state(read_file(a.state_path), spec.dimension());
  if (initial.dimension() != spec.dimension()) throw ValidationError("state and walk dimensions differ");
  if (a.steps < 1) throw ValidationError("--steps must be >= 1");
  std::vector<int> checkpoints = a.checkpoints;
  checkpoints.push_back(a.steps);
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
  if (checkpoints.front() < 1 || checkpoints.back() > a.steps) throw ValidationError("checkpoints must lie in [1, steps]");

  std::ostringstream csv;
  write_distribution_header(csv);
  State state = initial;
  int t = 0;
  DistributionSnapshot last;
  for (int c : checkpoints) {
    state = evolve(spec, state, c - t);
    t = c;
    last = position_distribution(state, t);
    write_distribution_csv(csv, last);
  }
  if (!a.csv.empty()) emit(a.csv, csv.str());

  std::optional<LimitLaw> law;
  if (a.limit_law) {
    law = limit_law(decompose(spec, g.grid), initial);
    emit(g.out.empty() ? std::string("limit_law.json") : g.out, dump(limit_law_json(*law)));
  }

  std::printf("# t = %d, norm = %.15f\n", t, state.norm());
  std::printf("%-3s %-22s %s\n", "m", "empirical", law ? "limit" : "");
  for (int m = 0; m <= 4; ++m) {
    std::printf("%-3d %-22.15g", m, empirical_moment(last, m));
    if (law) std::printf(" %.15g", law->moments[m]);
    std::printf("\n");
  }
  return 0;
}

int run_intertwine(const Globals& g, const std::string& first, const std::string& second, int window,
                   const std::string& triplets) {
  const WalkSpec a = load_spec(first);
  const WalkSpec b = load_spec(second);
  const Decomposition da = decompose(a, g.grid);
  const Decomposition db = decompose(b, g.grid);
  const IntertwinerTable table = intertwiner_table(da, db);
  nlohmann::json doc = intertwiner_json(table);
  doc["spec_digests"] = {spec_digest(a), spec_digest(b)};

  if (window > 0) {
    // Build the first model translation with rho = 1 on a window of the given size.
    const auto rows = summands(da);
    nlohmann::json built = nullptr;
    for (std::size_t i = 0; i < table.entries.size() && built.is_null(); ++i)
      for (std::size_t j = 0; j < table.entries[i].size(); ++j) {
        const IntertwinerSpace& e = table.entries[i][j];
        if (e.kind != IntertwinerKind::ModelTranslation) continue;
        const auto& prime = std::get<PrimeModelWalk>(rows[i]);
        const TrigSeries rho(prime.rate, 0, {Complex(1.0)});
        const BuiltIntertwiner v = build_intertwiner(prime.band, e.alpha, rho, window);
        built = {{"row", i},     {"col", j},       {"window", window}, {"first_site", v.first_site},
                 {"margin", v.margin}, {"interior_residual", v.interior_residual()}};
        if (!triplets.empty()) {
          std::ostringstream csv;
          write_triplet_csv(csv, v.v, 1e-15);
          emit(triplets, csv.str());
        }
        break;
      }
    doc["built"] = built;
  }
  emit(g.out, dump(doc));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral analysis and simulation of one-dimensional homogeneous quantum walks"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--grid", g.grid, "Samples per 2 pi (power of two >= 64)")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for any randomized sampling")->capture_default_str();
  app.add_option("--out", g.out, "Output file (default: stdout)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  std::string spec_path, second_path, witness_path, triplets;
  int window = 0;

  auto* analyze = app.add_subcommand("analyze", "Bands, decomposition, commutant and realizability report");
  analyze->add_option("spec", spec_path, "Walk spec file or builtin:NAME")->required();

  auto* decomp = app.add_subcommand("decompose", "Prime and constant summands");
  decomp->add_option("spec", spec_path, "Walk spec file or builtin:NAME")->required();

  auto* realizable = app.add_subcommand("realizable", "Continuous-time realizability verdict");
  realizable->add_option("spec", spec_path, "Walk spec file or builtin:NAME")->required();
  realizable->add_option("--witness", witness_path, "Write the witness h(k~) as CSV");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Evolve a state and compare with the limit law");
  simulate->add_option("spec", sim.spec, "Walk spec file or builtin:NAME")->required();
  auto* state_opt = simulate->add_option("--state", sim.state_path, "Initial state file");
  simulate->add_option("--builtin", sim.builtin, "uniform or delta0:e<j>")->excludes(state_opt)->capture_default_str();
  simulate->add_option("--steps", sim.steps, "Number of steps")->required();
  simulate->add_option("--checkpoints", sim.checkpoints, "Extra times to record")->delimiter(',');
  simulate->add_option("--csv", sim.csv, "Distribution CSV path");
  simulate->add_flag("--limit-law", sim.limit_law, "Write the limit law JSON (to --out, default limit_law.json)");

  auto* intertwine = app.add_subcommand("intertwine", "Classify uniform intertwiners between two walks");
  intertwine->add_option("spec1", spec_path, "First walk")->required();
  intertwine->add_option("spec2", second_path, "Second walk")->required();
  intertwine->add_option("--build-window", window, "Build the first model translation on this many sites");
  intertwine->add_option("--csv", triplets, "Triplet CSV of the built intertwiner");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*analyze) return run_analyze(g, spec_path);
    if (*decomp) return run_decompose(g, spec_path);
    if (*realizable) return run_realizable(g, spec_path, witness_path);
    if (*simulate) return run_simulate(g, sim);
    if (*intertwine) return run_intertwine(g, spec_path, second_path, window, triplets);
  } catch (const UnresolvedCrossing& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCrossing;
  } catch (const MemoryCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMemory;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitIo;
}
