#ifndef NANOBEAM_SPECTRUM_HPP
#define NANOBEAM_SPECTRUM_HPP

// Quantized single-mode energies ε_{k,n} = ħω_k(n + 1/2) and their
// renormalized counterparts ε⁰_{k,n} = ħω_k·n, plus searches for pairs of
// levels (k, n) ≠ (k', n') with equal or nearly equal renormalized energy.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <numeric>
#include <tuple>
#include <vector>

#include "nanobeam/beam_modes.hpp"
#include "nanobeam/errors.hpp"

namespace nanobeam {

struct LevelIndex {
  int k = 0;  // mode
  int n = 0;  // occupation

  friend auto operator<=>(const LevelIndex&, const LevelIndex&) = default;
};

struct EnergyLevel {
  int k = 0;
  int n = 0;
  double energy0 = 0.0;     // renormalized, zero for n = 0
  double energy_raw = 0.0;  // including the zero-point term
};

struct DegeneracyPair {
  LevelIndex a;  // a < b lexicographically
  LevelIndex b;
  double gap = 0.0;
  double rel_gap = 0.0;
  bool exact = false;
};

struct DegeneracyReport {
  BeamSpec spec;
  int kmax = 0;
  int nmax = 0;
  double rel_tol = 0.0;
  std::vector<DegeneracyPair> pairs;  // ascending rel_gap, then (a, b)
};

/// C = ħ·ω̃ = ħ·factor·π²/L². Hinged-hinged levels are ε⁰_{k,n} = C·k²·n.
inline double energy_scale(const BeamSpec& spec) {
  spec.validate();
  return spec.hbar * hinged_fundamental_frequency(spec);
}

namespace detail {

inline void check_level(int k, int n) {
  if (k < 1) throw DomainError("mode index must be >= 1");
  if (n < 0) throw DomainError("occupation number must be >= 0");
}

inline std::int64_t hinged_weight(int k, int n) {
  return static_cast<std::int64_t>(k) * k * n;
}

// Exact products C·(k²n) so that equal integers give bit-equal energies.
inline double hinged_level(double scale, int k, int n) {
  return scale * static_cast<double>(hinged_weight(k, n));
}

}  // namespace detail

inline EnergyLevel energy_level(const ModeTable& table, int k, int n) {
  detail::check_level(k, n);
  EnergyLevel level{k, n, 0.0, 0.0};
  if (table.spec.bc == BoundaryCondition::HingedHinged) {
    const double c = energy_scale(table.spec);
    level.energy0 = detail::hinged_level(c, k, n);
    level.energy_raw = level.energy0 + 0.5 * detail::hinged_level(c, k, 1);
  } else {
    const double quantum = table.spec.hbar * table.mode(k).omega;
    level.energy0 = quantum * n;
    level.energy_raw = level.energy0 + 0.5 * quantum;
  }
  return level;
}

inline double renormalized_energy(const ModeTable& table, int k, int n) {
  return energy_level(table, k, n).energy0;
}

/// Convenience overload; non-hinged ends solve for modes 1..k first.
inline double renormalized_energy(const BeamSpec& spec, int k, int n,
                                  double tol = kDefaultRootTolerance) {
  detail::check_level(k, n);
  if (spec.bc == BoundaryCondition::HingedHinged)
    return detail::hinged_level(energy_scale(spec), k, n);
  return renormalized_energy(mode_frequencies(spec, k, tol), k, n);
}

/// All exact coincidences n·k² = n'·k'² with 1 ≤ k < k' ≤ kmax and
/// 0 < n' ≤ n ≤ nmax, found with integer arithmetic. Hinged-hinged only.
inline std::vector<DegeneracyPair> find_exact_degeneracies(const BeamSpec& spec, int kmax,
                                                           int nmax) {
  if (spec.bc != BoundaryCondition::HingedHinged)
    throw UnsupportedBoundary("exact degeneracies exist only for hinged-hinged ends, not " +
                              std::string(to_string(spec.bc)));
  if (kmax < 1 || nmax < 1) throw DomainError("kmax and nmax must be >= 1");

  std::vector<DegeneracyPair> pairs;
  for (int k = 1; k <= kmax; ++k) {
    const std::int64_t kk = static_cast<std::int64_t>(k) * k;
    for (int kp = k + 1; kp <= kmax; ++kp) {
      const std::int64_t kpkp = static_cast<std::int64_t>(kp) * kp;
      for (int np = 1; np <= nmax; ++np) {
        const std::int64_t target = kpkp * np;
        if (target % kk != 0) continue;
        const std::int64_t n = target / kk;
        if (n > nmax) break;
        pairs.push_back({{k, static_cast<int>(n)}, {kp, np}, 0.0, 0.0, true});
      }
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const DegeneracyPair& x, const DegeneracyPair& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  return pairs;
}

/// Pairs of excited levels (n ≥ 1) of modes 1..kmax with
/// |E_a − E_b| / max(E_a, E_b) ≤ rel_tol.
///
/// Levels are sorted by energy and each one is compared against the following
/// levels until the relative gap exceeds rel_tol. For ascending positive
/// energies the relative gap to level i grows monotonically with distance, so
/// the sweep visits every qualifying pair, including clusters of three or more.
inline DegeneracyReport scan_quasi_degeneracies(const ModeTable& table, int kmax, int nmax,
                                                double rel_tol) {
  if (kmax < 1 || nmax < 1) throw DomainError("kmax and nmax must be >= 1");
  if (!(rel_tol >= 0.0)) throw DomainError("rel_tol must be >= 0");
  table.mode(kmax);  // coverage check

  const bool hinged = table.spec.bc == BoundaryCondition::HingedHinged;
  std::vector<EnergyLevel> levels;
  levels.reserve(static_cast<std::size_t>(kmax) * static_cast<std::size_t>(nmax));
  for (int k = 1; k <= kmax; ++k)
    for (int n = 1; n <= nmax; ++n) levels.push_back(energy_level(table, k, n));
  std::sort(levels.begin(), levels.end(), [](const EnergyLevel& x, const EnergyLevel& y) {
    if (x.energy0 != y.energy0) return x.energy0 < y.energy0;
    return LevelIndex{x.k, x.n} < LevelIndex{y.k, y.n};
  });

  DegeneracyReport report{table.spec, kmax, nmax, rel_tol, {}};
  for (std::size_t i = 0; i < levels.size(); ++i) {
    for (std::size_t j = i + 1; j < levels.size(); ++j) {
      const EnergyLevel& lo = levels[i];
      const EnergyLevel& hi = levels[j];
      const double gap = hi.energy0 - lo.energy0;
      double rel = gap / hi.energy0;
      bool exact = false;
      if (hinged) {
        // integer weights keep rel_gap, and so the ordering, independent of units
        const std::int64_t wl = detail::hinged_weight(lo.k, lo.n);
        const std::int64_t wh = detail::hinged_weight(hi.k, hi.n);
        rel = static_cast<double>(wh - wl) / static_cast<double>(wh);
        exact = wl == wh;
      } else {
        // (k, cn)-(k', cn') ties (k, n)-(k', n'); reducing the occupations and
        // leaving out ħ makes the tie bit-exact so the lexicographic order decides
        const int g = std::gcd(lo.n, hi.n);
        const double el = table.mode(lo.k).omega * (lo.n / g);
        const double eh = table.mode(hi.k).omega * (hi.n / g);
        rel = std::abs(eh - el) / std::max(el, eh);
      }
      if (rel > rel_tol) break;
      LevelIndex a{lo.k, lo.n};
      LevelIndex b{hi.k, hi.n};
      if (b < a) std::swap(a, b);
      report.pairs.push_back({a, b, gap, rel, exact});
    }
  }
  std::sort(report.pairs.begin(), report.pairs.end(),
            [](const DegeneracyPair& x, const DegeneracyPair& y) {
              if (x.rel_gap != y.rel_gap) return x.rel_gap < y.rel_gap;
              return std::tie(x.a, x.b) < std::tie(y.a, y.b);
            });
  return report;
}

/// ω(k) / ω₀(k), with ω₀ the hinged-hinged frequency of the same beam.
inline double frequency_ratio(const ModeTable& table, int k) {
  const double hinged = hinged_fundamental_frequency(table.spec) * static_cast<double>(k) * k;
  return table.mode(k).omega / hinged;
}

}  // namespace nanobeam

#endif  // NANOBEAM_SPECTRUM_HPP
