#ifndef NANOBEAM_DECOHERENCE_HPP
#define NANOBEAM_DECOHERENCE_HPP

// Phase damping of the two-mode superposition
//
//     |ψ⟩ = a |0⟩_j |n⟩_k + b |m⟩_j |0⟩_k
//
// A dephasing reservoir leaves populations untouched and multiplies the
// coherence between the two branches by exp(−Λ·ΔE²·t), with
// ΔE = E(m-branch) − E(n-branch) = ħω_j·m − ħω_k·n. The state never leaves
// the two-dimensional span of the branches, so the dynamics reduce to a 2×2
// density matrix with constant diagonal (|a|², |b|²).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "nanobeam/beam_modes.hpp"
#include "nanobeam/errors.hpp"

namespace nanobeam {

inline constexpr double kNormalizationTolerance = 1e-12;
inline constexpr double kInfiniteTime = std::numeric_limits<double>::infinity();

struct DephasingScenario {
  int mode_j = 1;
  int mode_k = 2;
  double omega_j = 0.0;
  double omega_k = 0.0;
  int m = 0;  // occupation of mode j in the b branch
  int n = 0;  // occupation of mode k in the a branch
  std::complex<double> a{1.0, 0.0};
  std::complex<double> b{0.0, 0.0};
  double Lambda = 0.0;  // effective dephasing strength, 1/(J²·s)
  double hbar = 1.0;
  // Set when ω_j = q·j² and ω_k = q·k² (hinged-hinged ends); the gap is then
  // formed from integers and exact degeneracies give ΔE = 0 identically.
  std::optional<double> frequency_quantum;

  void validate() const {
    if (m < 0 || n < 0) throw DomainError("occupation numbers must be >= 0");
    if (!(Lambda >= 0.0) || !std::isfinite(Lambda)) throw DomainError("Lambda must be >= 0");
    if (!(hbar > 0.0)) throw DomainError("hbar must be > 0");
    const double norm = std::norm(a) + std::norm(b);
    if (!(std::abs(norm - 1.0) <= kNormalizationTolerance))
      throw DomainError("amplitudes must satisfy |a|^2 + |b|^2 = 1");
  }
};

struct EntropySeries {
  std::vector<double> times;
  std::vector<double> delta;
  double delta_asymptote = 0.0;
  double decoherence_time = kInfiniteTime;
};

/// E_{m,n} = ħω_j·m + ħω_k·n.
inline double two_mode_energy(double omega_j, double omega_k, int m, int n, double hbar) {
  if (m < 0 || n < 0) throw DomainError("occupation numbers must be >= 0");
  return hbar * omega_j * m + hbar * omega_k * n;
}

/// E(m-branch) − E(n-branch).
inline double energy_gap(const DephasingScenario& s) {
  if (s.frequency_quantum) {
    const std::int64_t weight = static_cast<std::int64_t>(s.mode_j) * s.mode_j * s.m -
                                static_cast<std::int64_t>(s.mode_k) * s.mode_k * s.n;
    return s.hbar * *s.frequency_quantum * static_cast<double>(weight);
  }
  return two_mode_energy(s.omega_j, s.omega_k, s.m, 0, s.hbar) -
         two_mode_energy(s.omega_j, s.omega_k, 0, s.n, s.hbar);
}

/// exp(−Λ·ΔE²·t).
inline double offdiag_decay(double delta_E, double Lambda, double t) {
  if (!(t >= 0.0)) throw DomainError("time must be >= 0");
  if (!(Lambda >= 0.0)) throw DomainError("Lambda must be >= 0");
  return std::exp(-Lambda * delta_E * delta_E * t);
}

/// 1/(Λ·ΔE²), the e-folding time of the coherence; infinite if ΔE = 0 or Λ = 0.
inline double decoherence_time(const DephasingScenario& s) {
  s.validate();
  const double gap = energy_gap(s);
  const double rate = s.Lambda * gap * gap;
  return rate > 0.0 ? 1.0 / rate : kInfiniteTime;
}

/// δ(t) = 1 − Tr ρ² = 2|a|²|b|²·(1 − e^{−2ΛΔE²t}).
inline EntropySeries linear_entropy_series(const DephasingScenario& s,
                                           const std::vector<double>& t_grid) {
  s.validate();
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= 0.0)) throw DomainError("time grid must be nonnegative");
    if (i > 0 && t_grid[i] < t_grid[i - 1]) throw DomainError("time grid must be sorted");
  }
  const double gap = energy_gap(s);
  const double rate = 2.0 * s.Lambda * gap * gap;
  // |a|² + |b|² = 1 caps this at 1/2; rounding of normalized inputs can overshoot by an ulp
  const double mixing = std::min(0.5, 2.0 * std::norm(s.a) * std::norm(s.b));

  EntropySeries series;
  series.times = t_grid;
  series.delta.reserve(t_grid.size());
  for (double t : t_grid) series.delta.push_back(mixing * -std::expm1(-rate * t));
  series.delta_asymptote = rate > 0.0 ? mixing : 0.0;
  series.decoherence_time = decoherence_time(s);
  return series;
}

/// Uniform grid 0, T/steps, ..., T.
inline std::vector<double> uniform_time_grid(double t_max, int steps) {
  if (!(t_max >= 0.0) || steps < 1) throw DomainError("need t_max >= 0 and steps >= 1");
  std::vector<double> grid(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) grid[static_cast<std::size_t>(i)] = t_max * i / steps;
  return grid;
}

/// Scenario for modes j, k of a table. Hinged-hinged tables carry their
/// frequency quantum so degenerate pairs have ΔE = 0 exactly.
inline DephasingScenario make_scenario(const ModeTable& table, int j, int k, int m, int n,
                                       std::complex<double> a, std::complex<double> b,
                                       double Lambda) {
  DephasingScenario s;
  s.mode_j = j;
  s.mode_k = k;
  s.omega_j = table.mode(j).omega;
  s.omega_k = table.mode(k).omega;
  s.m = m;
  s.n = n;
  s.a = a;
  s.b = b;
  s.Lambda = Lambda;
  s.hbar = table.spec.hbar;
  if (table.spec.bc == BoundaryCondition::HingedHinged)
    s.frequency_quantum = hinged_fundamental_frequency(table.spec);
  s.validate();
  return s;
}

struct SubspaceRank {
  int m = 0;
  int n = 0;
  double delta_E = 0.0;
  double decoherence_time = kInfiniteTime;
};

/// All 1 ≤ m ≤ m_max, 1 ≤ n ≤ n_max ordered by decreasing decoherence time,
/// ties broken by (m, n).
inline std::vector<SubspaceRank> rank_subspaces(const ModeTable& table, int j, int k, int m_max,
                                                int n_max, double Lambda) {
  if (m_max < 1 || n_max < 1) throw DomainError("m_max and n_max must be >= 1");
  const double amp = std::sqrt(0.5);
  std::vector<SubspaceRank> ranks;
  ranks.reserve(static_cast<std::size_t>(m_max) * static_cast<std::size_t>(n_max));
  for (int m = 1; m <= m_max; ++m) {
    for (int n = 1; n <= n_max; ++n) {
      const DephasingScenario s = make_scenario(table, j, k, m, n, amp, amp, Lambda);
      ranks.push_back({m, n, energy_gap(s), decoherence_time(s)});
    }
  }
  std::sort(ranks.begin(), ranks.end(), [](const SubspaceRank& x, const SubspaceRank& y) {
    if (x.decoherence_time != y.decoherence_time) return x.decoherence_time > y.decoherence_time;
    return std::tie(x.m, x.n) < std::tie(y.m, y.n);
  });
  return ranks;
}

struct ModeDecayRate {
  int k = 0;
  double kappa = 0.0;  // 1/s
};

/// κ_k = η·ω_k for every mode in the table. Diagnostic only.
inline std::vector<ModeDecayRate> mode_decay_rates(const ModeTable& table, double eta) {
  if (!(eta >= 0.0)) throw DomainError("eta must be >= 0");
  std::vector<ModeDecayRate> rates;
  rates.reserve(table.modes.size());
  for (const Mode& mode : table.modes) rates.push_back({mode.k, eta * mode.omega});
  return rates;
}

}  // namespace nanobeam

#endif  // NANOBEAM_DECOHERENCE_HPP
