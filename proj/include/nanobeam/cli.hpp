#ifndef NANOBEAM_CLI_HPP
#define NANOBEAM_CLI_HPP

// Command-line front end: `nanobeam <modes|spectrum|casimir|decohere> [flags]`.
//
// Settings resolve as flag > config file (--config or NANOBEAM_CONFIG) >
// built-in unit-normalized defaults. Output is CSV (header row, 17 significant
// digits, extra tables separated by one blank line) or a JSON object
// {"meta": {...}, "data": [...], ...}. Exit codes: 0 ok, 2 usage or validation
// error, 3 numerical failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nanobeam/beam_modes.hpp"
#include "nanobeam/casimir.hpp"
#include "nanobeam/decoherence.hpp"
#include "nanobeam/errors.hpp"
#include "nanobeam/spectrum.hpp"

namespace nanobeam::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr const char* kConfigEnv = "NANOBEAM_CONFIG";
inline constexpr const char* kVersion = "1.0.0";

enum class OutputFormat { Csv, Json };

/// Resolved global settings shared by all subcommands.
struct RunConfig {
  BeamSpec spec = unit_spec();
  double tol = kDefaultRootTolerance;
  OutputFormat format = OutputFormat::Csv;
  std::string out;  // empty: standard output
  bool verbose = false;
};

// ---------------------------------------------------------------------------
// Tabular output
// ---------------------------------------------------------------------------

using Cell = std::variant<long long, double, bool, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  bool in_csv = true;
};

struct Document {
  nlohmann::ordered_json meta;
  std::vector<Table> tables;  // tables[0] is "data"
};

/// Shortest-safe CSV rendering of a double: 17 significant digits.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

inline nlohmann::ordered_json cell_json(const Cell& c) {
  struct Visitor {
    nlohmann::ordered_json operator()(long long v) const { return v; }
    // JSON has no infinity; non-finite values become null
    nlohmann::ordered_json operator()(double v) const {
      return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
    }
    nlohmann::ordered_json operator()(bool v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

inline void write_csv(std::ostream& os, const Document& doc) {
  bool first = true;
  for (const Table& t : doc.tables) {
    if (!t.in_csv) continue;
    if (!first) os << '\n';
    first = false;
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
      os << '\n';
    }
  }
}

inline nlohmann::ordered_json table_json(const Table& t) {
  auto records = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json rec = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) rec[t.columns[i]] = cell_json(row[i]);
    records.push_back(std::move(rec));
  }
  return records;
}

inline void write_json(std::ostream& os, const Document& doc) {
  nlohmann::ordered_json root;
  root["meta"] = doc.meta;
  for (std::size_t i = 0; i < doc.tables.size(); ++i)
    root[i == 0 ? std::string("data") : doc.tables[i].name] = table_json(doc.tables[i]);
  os << root.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Parsing helpers
// ---------------------------------------------------------------------------

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

inline double parse_number(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw UsageError("not a number: '" + text + "'");
  return v;
}

inline std::vector<double> parse_schedule(const std::string& text) {
  std::vector<double> values;
  for (const auto& part : split(text, ',')) {
    const double eps = parse_number(part);
    if (!(eps > 0.0)) throw UsageError("epsilon values must be > 0, got " + part);
    values.push_back(eps);
  }
  if (values.empty()) throw UsageError("empty epsilon schedule");
  return values;
}

inline std::vector<std::pair<int, int>> parse_pairs(const std::string& text) {
  std::vector<std::pair<int, int>> pairs;
  for (const auto& part : split(text, ',')) {
    const auto mn = split(part, ':');
    if (mn.size() != 2) throw UsageError("pair must look like m:n, got '" + part + "'");
    try {
      std::size_t um = 0, un = 0;
      const int m = std::stoi(mn[0], &um);
      const int n = std::stoi(mn[1], &un);
      if (um != mn[0].size() || un != mn[1].size() || m < 0 || n < 0) throw std::exception();
      pairs.emplace_back(m, n);
    } catch (const std::exception&) {
      throw UsageError("pair must look like m:n with m, n >= 0, got '" + part + "'");
    }
  }
  if (pairs.empty()) throw UsageError("no pairs given");
  return pairs;
}

inline nlohmann::ordered_json spec_json(const BeamSpec& s) {
  nlohmann::ordered_json j;
  j["E"] = s.youngs_modulus;
  j["I"] = s.area_moment;
  j["rho"] = s.density;
  j["A"] = s.cross_section;
  j["L"] = s.length;
  j["hbar"] = s.hbar;
  j["bc"] = std::string(to_string(s.bc));
  j["frequency_convention"] = std::string(to_string(s.convention));
  return j;
}

inline Document new_document(const std::string& command, const RunConfig& cfg) {
  Document doc;
  doc.meta["command"] = command;
  doc.meta["spec"] = spec_json(cfg.spec);
  doc.meta["flags"] = nlohmann::ordered_json::object();
  doc.meta["flags"]["tol"] = cfg.tol;
  return doc;
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

struct ModesArgs {
  int count = 10;
};

inline Document cmd_modes(const RunConfig& cfg, const ModesArgs& args) {
  const ModeTable table = mode_frequencies(cfg.spec, args.count, cfg.tol);
  Document doc = new_document("modes", cfg);
  doc.meta["flags"]["count"] = args.count;
  Table t{"modes", {"k", "x_root", "lambda", "omega", "residual"}, {}, true};
  for (const Mode& m : table.modes)
    t.rows.push_back({static_cast<long long>(m.k), m.x_root, m.lambda, m.omega, m.residual});
  doc.tables.push_back(std::move(t));
  return doc;
}

struct SpectrumArgs {
  int kmax = 3;
  int nmax = 4;
  bool degeneracies = false;
  double rel_tol = 0.0;
};

inline Document cmd_spectrum(const RunConfig& cfg, const SpectrumArgs& args) {
  if (args.kmax < 1 || args.nmax < 1) throw UsageError("--kmax and --nmax must be >= 1");
  if (!(args.rel_tol >= 0.0)) throw UsageError("--rel-tol must be >= 0");
  const ModeTable table = mode_frequencies(cfg.spec, args.kmax, cfg.tol);
  Document doc = new_document("spectrum", cfg);
  doc.meta["flags"]["kmax"] = args.kmax;
  doc.meta["flags"]["nmax"] = args.nmax;
  doc.meta["flags"]["degeneracies"] = args.degeneracies;
  doc.meta["flags"]["rel_tol"] = args.rel_tol;

  Table levels{"levels", {"k", "n", "energy0"}, {}, true};
  for (int k = 1; k <= args.kmax; ++k)
    for (int n = 1; n <= args.nmax; ++n)
      levels.rows.push_back({static_cast<long long>(k), static_cast<long long>(n),
                             renormalized_energy(table, k, n)});
  doc.tables.push_back(std::move(levels));

  if (args.degeneracies) {
    const DegeneracyReport report =
        scan_quasi_degeneracies(table, args.kmax, args.nmax, args.rel_tol);
    Table pairs{"pairs", {"k", "n", "k2", "n2", "gap", "rel_gap", "exact"}, {}, true};
    for (const auto& p : report.pairs)
      pairs.rows.push_back({static_cast<long long>(p.a.k), static_cast<long long>(p.a.n),
                            static_cast<long long>(p.b.k), static_cast<long long>(p.b.n), p.gap,
                            p.rel_gap, p.exact});
    doc.tables.push_back(std::move(pairs));
  }
  return doc;
}

struct CasimirArgs {
  std::string scheme = "paper";
  std::string eps_schedule = "1e-2,1e-4,1e-6";
  double tail_tol = kDefaultTailTolerance;
};

inline Document cmd_casimir(const RunConfig& cfg, const CasimirArgs& args) {
  const std::vector<double> schedule = parse_schedule(args.eps_schedule);
  std::vector<RegularizationScheme> schemes;
  if (args.scheme == "paper" || args.scheme == "both")
    schemes.push_back(RegularizationScheme::PaperMidpoint);
  if (args.scheme == "theta" || args.scheme == "both")
    schemes.push_back(RegularizationScheme::ThetaExact);
  if (schemes.empty()) throw UsageError("--scheme must be paper, theta or both");
  if (!(args.tail_tol > 0.0)) throw UsageError("--tail-tol must be > 0");

  std::vector<CasimirReport> reports;
  for (auto s : schemes) {
    try {
      reports.push_back(casimir_report(cfg.spec, s, schedule, args.tail_tol));
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }

  Document doc = new_document("casimir", cfg);
  doc.meta["flags"]["scheme"] = args.scheme;
  doc.meta["flags"]["eps_schedule"] = schedule;
  doc.meta["flags"]["tail_tol"] = args.tail_tol;

  Table curve{"differences", {"eps"}, {}, true};
  for (const auto& r : reports)
    curve.columns.push_back(r.scheme == RegularizationScheme::PaperMidpoint ? "D_paper"
                                                                            : "D_theta");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    std::vector<Cell> row{schedule[i]};
    for (const auto& r : reports) row.emplace_back(r.difference_values[i]);
    curve.rows.push_back(std::move(row));
  }
  doc.tables.push_back(std::move(curve));

  Table summary{"summary",
                {"scheme", "extrapolated_limit", "delta_E", "energy_per_area", "force_per_area",
                 "sound_speed"},
                {},
                true};
  for (const auto& r : reports)
    summary.rows.push_back({std::string(to_string(r.scheme)), r.extrapolated_limit, r.delta_E,
                            r.energy_per_area, r.force_per_area, r.sound_speed});
  doc.tables.push_back(std::move(summary));
  return doc;
}

struct DecohereArgs {
  int j = 1;
  int k = 2;
  std::string pairs = "1:1";
  double a = 0.70710678118654752;
  double b = 0.70710678118654752;
  double lambda = 1.0 / (100.0 * std::numbers::pi * std::numbers::pi);
  double t_max = 20.0;
  int steps = 400;
  bool rank = false;
  int m_max = 3;
  int n_max = 1;
};

inline constexpr double kCliNormalizationTolerance = 1e-9;

inline Document cmd_decohere(const RunConfig& cfg, const DecohereArgs& args) {
  if (args.j < 1 || args.k < 1) throw UsageError("--j and --k must be >= 1");
  if (!(args.lambda >= 0.0)) throw UsageError("--lambda must be >= 0");
  const ModeTable table = mode_frequencies(cfg.spec, std::max(args.j, args.k), cfg.tol);

  Document doc = new_document("decohere", cfg);
  doc.meta["flags"]["j"] = args.j;
  doc.meta["flags"]["k"] = args.k;
  doc.meta["flags"]["lambda"] = args.lambda;

  if (args.rank) {
    if (args.m_max < 1 || args.n_max < 1) throw UsageError("--m-max and --n-max must be >= 1");
    doc.meta["flags"]["m_max"] = args.m_max;
    doc.meta["flags"]["n_max"] = args.n_max;
    Table t{"ranking", {"m", "n", "delta_E", "t_star"}, {}, true};
    for (const auto& r : rank_subspaces(table, args.j, args.k, args.m_max, args.n_max, args.lambda))
      t.rows.push_back({static_cast<long long>(r.m), static_cast<long long>(r.n), r.delta_E,
                        r.decoherence_time});
    doc.tables.push_back(std::move(t));
    return doc;
  }

  const double norm = args.a * args.a + args.b * args.b;
  if (!(std::abs(norm - 1.0) <= kCliNormalizationTolerance))
    throw UsageError("amplitudes must satisfy a^2 + b^2 = 1 (got " + format_double(norm) + ")");
  if (!(args.t_max >= 0.0) || args.steps < 1)
    throw UsageError("--t-max must be >= 0 and --steps >= 1");
  const double scale = 1.0 / std::sqrt(norm);
  const auto pairs = parse_pairs(args.pairs);
  const std::vector<double> grid = uniform_time_grid(args.t_max, args.steps);

  doc.meta["flags"]["pairs"] = args.pairs;
  doc.meta["flags"]["a"] = args.a;
  doc.meta["flags"]["b"] = args.b;
  doc.meta["flags"]["t_max"] = args.t_max;
  doc.meta["flags"]["steps"] = args.steps;

  Table series{"series", {"t"}, {}, true};
  Table summary{"pairs", {"m", "n", "delta_E", "t_star", "delta_asymptote"}, {}, false};
  std::vector<EntropySeries> curves;
  for (const auto& [m, n] : pairs) {
    const DephasingScenario s =
        make_scenario(table, args.j, args.k, m, n, args.a * scale, args.b * scale, args.lambda);
    curves.push_back(linear_entropy_series(s, grid));
    series.columns.push_back("delta_" + std::to_string(m) + ":" + std::to_string(n));
    summary.rows.push_back({static_cast<long long>(m), static_cast<long long>(n), energy_gap(s),
                            curves.back().decoherence_time, curves.back().delta_asymptote});
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<Cell> row{grid[i]};
    for (const auto& c : curves) row.emplace_back(c.delta[i]);
    series.rows.push_back(std::move(row));
  }
  doc.tables.push_back(std::move(series));
  doc.tables.push_back(std::move(summary));
  return doc;
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

/// Runs body, mapping library exceptions to exit codes with a one-line message.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const NumericalError& e) {
    err << "error: mode " << e.mode_index() << ": " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {  // UsageError, UnsupportedBoundary
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {  // DomainError, IndexError
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

/// Runs the CLI on argv-style arguments (args[0] is the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantized Euler-Bernoulli nanobeam spectra, phonon Casimir energy and dephasing",
               "nanobeam"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  app.set_config("--config", "", "key = value settings file (also NANOBEAM_CONFIG)")
      ->envname(kConfigEnv);

  RunConfig cfg;
  std::string bc_name = "hinged-hinged";
  std::string format_name = "csv";
  std::string convention_name = "paper";
  app.add_option("--bc", bc_name, "boundary condition")
      ->check(CLI::IsMember({"hinged-hinged", "clamped-clamped", "clamped-hinged",
                             "clamped-free", "free-free"}));
  app.add_option("--E", cfg.spec.youngs_modulus, "Young's modulus [Pa]");
  app.add_option("--I", cfg.spec.area_moment, "area moment of inertia [m^4]");
  app.add_option("--rho", cfg.spec.density, "density [kg/m^3]");
  app.add_option("--A", cfg.spec.cross_section, "cross-section area [m^2]");
  app.add_option("--L", cfg.spec.length, "beam length [m]");
  app.add_option("--hbar", cfg.spec.hbar, "reduced Planck constant [J s]");
  app.add_option("--tol", cfg.tol, "root residual tolerance");
  app.add_option("--format", format_name, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", cfg.out, "output path (default: standard output)");
  app.add_option("--frequency-convention", convention_name, "omega = sqrt(rhoA/EI) (paper) or sqrt(EI/rhoA) (standard) times lambda^2")
      ->check(CLI::IsMember({"paper", "standard"}));
  app.add_flag("--verbose", cfg.verbose, "print a run banner on the diagnostic stream");

  ModesArgs modes_args;
  auto* modes = app.add_subcommand("modes", "roots and frequencies of the first modes");
  modes->fallthrough();
  modes->add_option("--count", modes_args.count, "number of modes")->required();

  SpectrumArgs spectrum_args;
  auto* spectrum = app.add_subcommand("spectrum", "renormalized levels and degenerate pairs");
  spectrum->fallthrough();
  spectrum->add_option("--kmax", spectrum_args.kmax, "highest mode index")->required();
  spectrum->add_option("--nmax", spectrum_args.nmax, "highest occupation")->required();
  spectrum->add_flag("--degeneracies", spectrum_args.degeneracies, "list (quasi-)degenerate pairs");
  spectrum->add_option("--rel-tol", spectrum_args.rel_tol, "relative gap threshold");

  CasimirArgs casimir_args;
  auto* casimir = app.add_subcommand("casimir", "regularized zero-point energy and force");
  casimir->fallthrough();
  casimir->add_option("--scheme", casimir_args.scheme, "paper, theta or both")
      ->check(CLI::IsMember({"paper", "theta", "both"}));
  casimir->add_option("--eps-schedule", casimir_args.eps_schedule, "comma-separated, decreasing");
  casimir->add_option("--tail-tol", casimir_args.tail_tol, "truncation bound for the theta sum");

  DecohereArgs dec_args;
  auto* decohere = app.add_subcommand("decohere", "linear entropy under phase damping");
  decohere->fallthrough();
  decohere->add_option("--j", dec_args.j, "first mode");
  decohere->add_option("--k", dec_args.k, "second mode");
  decohere->add_option("--pairs", dec_args.pairs, "occupation pairs m:n,...");
  decohere->add_option("--a", dec_args.a, "amplitude of |0>_j|n>_k");
  decohere->add_option("--b", dec_args.b, "amplitude of |m>_j|0>_k");
  decohere->add_option("--lambda", dec_args.lambda, "dephasing strength Lambda");
  decohere->add_option("--t-max", dec_args.t_max, "end of the time grid");
  decohere->add_option("--steps", dec_args.steps, "number of grid intervals");
  decohere->add_flag("--rank", dec_args.rank, "rank (m, n) by decoherence time instead");
  decohere->add_option("--m-max", dec_args.m_max, "ranking bound on m");
  decohere->add_option("--n-max", dec_args.n_max, "ranking bound on n");

  std::vector<std::string> argv_tail(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(argv_tail.begin(), argv_tail.end());  // CLI11 consumes from the back
  try {
    app.parse(argv_tail);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  return guarded(err, [&] {
    cfg.spec.bc = *parse_boundary_condition(bc_name);
    cfg.spec.convention = *parse_frequency_convention(convention_name);
    cfg.format = format_name == "json" ? OutputFormat::Json : OutputFormat::Csv;
    cfg.spec.validate();
    if (!(cfg.tol > 0.0)) throw UsageError("--tol must be > 0");

    Document doc;
    std::string command;
    if (modes->parsed()) {
      command = "modes";
      doc = cmd_modes(cfg, modes_args);
    } else if (spectrum->parsed()) {
      command = "spectrum";
      doc = cmd_spectrum(cfg, spectrum_args);
    } else if (casimir->parsed()) {
      command = "casimir";
      doc = cmd_casimir(cfg, casimir_args);
    } else {
      command = "decohere";
      doc = cmd_decohere(cfg, dec_args);
    }

    if (cfg.verbose) {
      err << "# nanobeam " << kVersion << " " << command << " bc=" << to_string(cfg.spec.bc)
          << " convention=" << to_string(cfg.spec.convention) << '\n';
      if (const char* env = std::getenv(kConfigEnv)) err << "# NANOBEAM_CONFIG=" << env << '\n';
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (!cfg.out.empty()) {
      file.open(cfg.out, std::ios::out | std::ios::trunc);
      if (!file) throw UsageError("cannot open output file " + cfg.out);
      sink = &file;
    }
    if (cfg.format == OutputFormat::Json)
      write_json(*sink, doc);
    else
      write_csv(*sink, doc);
    return kExitOk;
  });
}

inline int run(int argc, char** argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace nanobeam::cli

#endif  // NANOBEAM_CLI_HPP
