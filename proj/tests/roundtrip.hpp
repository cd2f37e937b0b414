#ifndef NANOBEAM_TESTS_ROUNDTRIP_HPP
#define NANOBEAM_TESTS_ROUNDTRIP_HPP

// Reparses CLI output and compares every cell against the in-memory document
// the subcommand produced.

#include <cstdlib>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "nanobeam/cli.hpp"

namespace nanobeam::roundtrip {

struct Case {
  std::string name;
  std::vector<std::string> args;  // without program name and --format
  std::function<cli::Document()> build;
};

inline std::vector<Case> cases() {
  cli::RunConfig cfg;
  std::vector<Case> out;
  {
    cli::RunConfig c = cfg;
    c.spec.bc = BoundaryCondition::ClampedFree;
    out.push_back({"modes", {"modes", "--bc", "clamped-free", "--count", "12"},
                   [c] { return cli::cmd_modes(c, {12}); }});
  }
  {
    cli::RunConfig c = cfg;
    c.spec.bc = BoundaryCondition::ClampedHinged;
    cli::SpectrumArgs a{3, 5, true, 0.2};
    out.push_back({"spectrum",
                   {"spectrum", "--bc", "clamped-hinged", "--kmax", "3", "--nmax", "5",
                    "--degeneracies", "--rel-tol", "0.2"},
                   [c, a] { return cli::cmd_spectrum(c, a); }});
  }
  {
    cli::CasimirArgs a;
    a.scheme = "both";
    a.eps_schedule = "0.1,1e-3,1e-5";
    out.push_back({"casimir", {"casimir", "--scheme", "both", "--eps-schedule", "0.1,1e-3,1e-5"},
                   [cfg, a] { return cli::cmd_casimir(cfg, a); }});
  }
  {
    cli::RunConfig c = cfg;
    c.spec.bc = BoundaryCondition::ClampedHinged;
    cli::DecohereArgs a;
    a.pairs = "1:1,2:1,3:1";
    a.steps = 50;
    out.push_back({"decohere",
                   {"decohere", "--bc", "clamped-hinged", "--pairs", "1:1,2:1,3:1", "--steps", "50"},
                   [c, a] { return cli::cmd_decohere(c, a); }});
  }
  return out;
}

inline std::string invoke(std::vector<std::string> args, const std::string& format, int* code) {
  args.insert(args.begin(), "nanobeam");
  args.push_back("--format");
  args.push_back(format);
  std::ostringstream os, es;
  *code = cli::run(args, os, es);
  return os.str();
}

inline bool cell_equal(const cli::Cell& want, const std::string& text) {
  if (const auto* d = std::get_if<double>(&want)) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    return *end == '\0' && std::memcmp(&v, d, sizeof v) == 0;
  }
  return cli::format_cell(want) == text;
}

inline bool json_equal(const cli::Cell& want, const nlohmann::json& got) {
  if (const auto* d = std::get_if<double>(&want)) {
    if (!std::isfinite(*d)) return got.is_null();
    if (!got.is_number()) return false;
    const double v = got.get<double>();
    return std::memcmp(&v, d, sizeof v) == 0;
  }
  if (const auto* i = std::get_if<long long>(&want)) return got.is_number_integer() && got == *i;
  if (const auto* b = std::get_if<bool>(&want)) return got.is_boolean() && got == *b;
  return got.is_string() && got == std::get<std::string>(want);
}

/// Every CSV table and cell reparses to the document's values. Returns an
/// empty string on success, otherwise a description of the first mismatch.
inline std::string check_csv(const cli::Document& doc, const std::string& text) {
  std::vector<std::vector<std::vector<std::string>>> tables(1);
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) {
      tables.emplace_back();
      continue;
    }
    tables.back().push_back(cli::split(line, ','));
  }
  std::size_t t = 0;
  for (const auto& table : doc.tables) {
    if (!table.in_csv) continue;
    if (t >= tables.size()) return "missing csv table " + table.name;
    const auto& rows = tables[t++];
    if (rows.empty() || rows[0] != table.columns) return "header mismatch in " + table.name;
    if (rows.size() != table.rows.size() + 1) return "row count mismatch in " + table.name;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      if (rows[r + 1].size() != table.rows[r].size()) return "width mismatch in " + table.name;
      for (std::size_t c = 0; c < table.rows[r].size(); ++c)
        if (!cell_equal(table.rows[r][c], rows[r + 1][c]))
          return table.name + " row " + std::to_string(r) + " col " + table.columns[c];
    }
  }
  return t == tables.size() ? "" : "extra csv tables";
}

inline std::string check_json(const cli::Document& doc, const std::string& text) {
  const nlohmann::json root = nlohmann::json::parse(text);
  if (root["meta"] != nlohmann::json::parse(doc.meta.dump())) return "meta mismatch";
  for (std::size_t i = 0; i < doc.tables.size(); ++i) {
    const auto& table = doc.tables[i];
    const nlohmann::json& records = root[i == 0 ? std::string("data") : table.name];
    if (!records.is_array() || records.size() != table.rows.size())
      return "record count mismatch in " + table.name;
    for (std::size_t r = 0; r < table.rows.size(); ++r)
      for (std::size_t c = 0; c < table.columns.size(); ++c)
        if (!json_equal(table.rows[r][c], records[r][table.columns[c]]))
          return table.name + " record " + std::to_string(r) + " field " + table.columns[c];
  }
  return "";
}

}  // namespace nanobeam::roundtrip

#endif  // NANOBEAM_TESTS_ROUNDTRIP_HPP
