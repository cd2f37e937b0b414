#ifndef NANOBEAM_CASIMIR_HPP
#define NANOBEAM_CASIMIR_HPP

// Zero-point (phonon Casimir) energy of the hinged-hinged k² spectrum.
//
// The divergent difference Σ_k k² − ∫ k² dk is regulated with e^{−εk²} and
// evaluated two ways:
//   paper-midpoint  replaces Σ_k e^{−εk²} − ∫_0^M e^{−εk²} by −½∫_0^1 e^{−εk²}
//                   and differentiates in ε, giving −½∫_0^1 k² e^{−εk²} dk,
//                   which tends to −1/6;
//   theta-exact     keeps the regulated sum and subtracts the closed-form
//                   integral ¼·sqrt(π/ε³); by Poisson summation the remainder
//                   is exponentially small in 1/ε.
// The physical energy and force always carry the −1/6 coefficient.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "nanobeam/beam_modes.hpp"
#include "nanobeam/errors.hpp"
#include "nanobeam/quadrature.hpp"

namespace nanobeam {

enum class RegularizationScheme { PaperMidpoint, ThetaExact };

inline std::string_view to_string(RegularizationScheme s) {
  return s == RegularizationScheme::PaperMidpoint ? "paper-midpoint" : "theta-exact";
}

struct CasimirReport {
  RegularizationScheme scheme = RegularizationScheme::PaperMidpoint;
  std::vector<double> epsilon_schedule;   // strictly decreasing, > 0
  std::vector<double> difference_values;  // D(ε), dimensionless
  double extrapolated_limit = 0.0;        // D at the smallest ε
  double delta_E = 0.0;                   // J
  double energy_per_area = 0.0;           // J/m²
  double force_per_area = 0.0;            // N/m²
  double sound_speed = 0.0;               // m/s
};

inline constexpr double kMidpointQuadratureTolerance = 1e-12;
inline constexpr double kDefaultTailTolerance = 1e-14;

/// v = sqrt(E/ρ).
inline double sound_speed(const BeamSpec& spec) {
  spec.validate();
  return std::sqrt(spec.youngs_modulus / spec.density);
}

namespace detail {
inline void check_epsilon(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw DomainError("regularization parameter epsilon must be finite and > 0");
}
}  // namespace detail

/// −½·∫_0^1 k² e^{−εk²} dk.
inline double regularized_difference_paper(double eps) {
  detail::check_epsilon(eps);
  auto integrand = [eps](double k) { return k * k * std::exp(-eps * k * k); };
  const QuadratureResult q = integrate_adaptive(integrand, 0.0, 1.0, kMidpointQuadratureTolerance);
  return -0.5 * q.value;
}

/// Number of terms kept in the regulated sum: smallest M past the peak of
/// k² e^{−εk²} with M² e^{−εM²} < tail_tol·ε.
inline long long theta_truncation(double eps, double tail_tol) {
  long long m = std::max(1LL, static_cast<long long>(std::ceil(1.0 / std::sqrt(eps))));
  auto term = [eps](long long k) {
    const double kd = static_cast<double>(k);
    return kd * kd * std::exp(-eps * kd * kd);
  };
  while (!(term(m) < tail_tol * eps)) ++m;
  return m;
}

/// Σ_{k=1}^{M} k² e^{−εk²} − ¼·sqrt(π/ε³).
inline double regularized_difference_exact(double eps, double tail_tol = kDefaultTailTolerance) {
  detail::check_epsilon(eps);
  if (!(tail_tol > 0.0)) throw DomainError("tail tolerance must be > 0");
  const long long m = theta_truncation(eps, tail_tol);
  // Neumaier-compensated: the sum is O(ε^{-3/2}) and must cancel to ~1e-10.
  double sum = 0.0;
  double carry = 0.0;
  for (long long k = 1; k <= m; ++k) {
    const double kd = static_cast<double>(k);
    const double term = kd * kd * std::exp(-eps * kd * kd);
    const double t = sum + term;
    carry += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  const double integral = 0.25 * std::sqrt(std::numbers::pi / (eps * eps * eps));
  return (sum - integral) + carry;
}

/// ΔE = −(1/6)·ħ·ω̃.
inline double casimir_energy(const BeamSpec& spec) {
  spec.validate();
  return -spec.hbar * hinged_fundamental_frequency(spec) / 6.0;
}

/// ΔE / A.
inline double casimir_energy_per_area(const BeamSpec& spec) {
  return casimir_energy(spec) / spec.cross_section;
}

/// F = −∂(ΔE/A)/∂L = −ħ·ω̃ / (3·A·L).
inline double casimir_force_per_area(const BeamSpec& spec) {
  spec.validate();
  return -spec.hbar * hinged_fundamental_frequency(spec) /
         (3.0 * spec.cross_section * spec.length);
}

inline double regularized_difference(RegularizationScheme scheme, double eps,
                                     double tail_tol = kDefaultTailTolerance) {
  return scheme == RegularizationScheme::PaperMidpoint ? regularized_difference_paper(eps)
                                                       : regularized_difference_exact(eps, tail_tol);
}

inline CasimirReport casimir_report(const BeamSpec& spec, RegularizationScheme scheme,
                                    const std::vector<double>& epsilon_schedule,
                                    double tail_tol = kDefaultTailTolerance) {
  spec.validate();
  if (epsilon_schedule.empty()) throw DomainError("epsilon schedule is empty");
  for (std::size_t i = 0; i < epsilon_schedule.size(); ++i) {
    detail::check_epsilon(epsilon_schedule[i]);
    if (i > 0 && !(epsilon_schedule[i] < epsilon_schedule[i - 1]))
      throw DomainError("epsilon schedule must be strictly decreasing");
  }

  CasimirReport report;
  report.scheme = scheme;
  report.epsilon_schedule = epsilon_schedule;
  report.difference_values.reserve(epsilon_schedule.size());
  for (double eps : epsilon_schedule)
    report.difference_values.push_back(regularized_difference(scheme, eps, tail_tol));
  report.extrapolated_limit = report.difference_values.back();
  report.delta_E = casimir_energy(spec);
  report.energy_per_area = casimir_energy_per_area(spec);
  report.force_per_area = casimir_force_per_area(spec);
  report.sound_speed = sound_speed(spec);
  return report;
}

}  // namespace nanobeam

#endif  // NANOBEAM_CASIMIR_HPP
