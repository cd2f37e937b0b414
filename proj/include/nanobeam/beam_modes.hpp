#ifndef NANOBEAM_BEAM_MODES_HPP
#define NANOBEAM_BEAM_MODES_HPP

// Transverse vibration modes of a uniform Euler-Bernoulli beam.
//
// The eigenvalues λ_k are the positive roots x = λ_k·L of a boundary-dependent
// characteristic function F(x). Hinged-hinged ends give F(x) = sin x and the
// closed form x = kπ; every other supported pair of ends needs a transcendental
// solve, done here with bracketing plus a Newton finish on a rescaled form of F
// that stays finite for any x.

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nanobeam/errors.hpp"

namespace nanobeam {

enum class BoundaryCondition { HingedHinged, ClampedClamped, ClampedHinged, ClampedFree, FreeFree };

inline constexpr std::array<BoundaryCondition, 5> kAllBoundaryConditions = {
    BoundaryCondition::HingedHinged, BoundaryCondition::ClampedClamped,
    BoundaryCondition::ClampedHinged, BoundaryCondition::ClampedFree,
    BoundaryCondition::FreeFree};

inline std::string_view to_string(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::HingedHinged: return "hinged-hinged";
    case BoundaryCondition::ClampedClamped: return "clamped-clamped";
    case BoundaryCondition::ClampedHinged: return "clamped-hinged";
    case BoundaryCondition::ClampedFree: return "clamped-free";
    case BoundaryCondition::FreeFree: return "free-free";
  }
  return "unknown";
}

inline std::optional<BoundaryCondition> parse_boundary_condition(std::string_view name) {
  for (auto bc : kAllBoundaryConditions) {
    if (to_string(bc) == name) return bc;
  }
  return std::nullopt;
}

/// How ω_k is formed from λ_k. `Paper` uses sqrt(ρA/EI)·λ², the form the
/// quantization in this library was written against; `Standard` uses the
/// textbook sqrt(EI/ρA)·λ².
enum class FrequencyConvention { Paper, Standard };

inline std::string_view to_string(FrequencyConvention c) {
  return c == FrequencyConvention::Paper ? "paper" : "standard";
}

inline std::optional<FrequencyConvention> parse_frequency_convention(std::string_view name) {
  if (name == "paper") return FrequencyConvention::Paper;
  if (name == "standard") return FrequencyConvention::Standard;
  return std::nullopt;
}

inline constexpr double kReducedPlanckSI = 1.054571817e-34;  // J·s

/// Material, geometry and end conditions of the beam, in SI units.
struct BeamSpec {
  double youngs_modulus = 1.0;  // E, Pa
  double area_moment = 1.0;     // I, m^4
  double density = 1.0;         // ρ, kg/m^3
  double cross_section = 1.0;   // A, m^2
  double length = 1.0;          // L, m
  BoundaryCondition bc = BoundaryCondition::HingedHinged;
  double hbar = kReducedPlanckSI;
  FrequencyConvention convention = FrequencyConvention::Paper;

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0) || !std::isfinite(v))
        throw DomainError(std::string("beam parameter ") + name + " must be finite and > 0");
    };
    positive(youngs_modulus, "E");
    positive(area_moment, "I");
    positive(density, "rho");
    positive(cross_section, "A");
    positive(length, "L");
    positive(hbar, "hbar");
  }
};

/// ρ = A = E = I = L = ħ = 1.
inline BeamSpec unit_spec(BoundaryCondition bc = BoundaryCondition::HingedHinged) {
  BeamSpec s;
  s.bc = bc;
  s.hbar = 1.0;
  return s;
}

/// Factor multiplying λ² in ω = factor·λ².
inline double frequency_prefactor(const BeamSpec& spec) {
  const double mass_per_length = spec.density * spec.cross_section;
  const double stiffness = spec.youngs_modulus * spec.area_moment;
  return spec.convention == FrequencyConvention::Paper ? std::sqrt(mass_per_length / stiffness)
                                                       : std::sqrt(stiffness / mass_per_length);
}

/// ω̃ = factor·(π/L)², the k = 1 hinged-hinged frequency; ω_k = ω̃k² for hinged ends.
inline double hinged_fundamental_frequency(const BeamSpec& spec) {
  const double q = std::numbers::pi / spec.length;
  return frequency_prefactor(spec) * q * q;
}

// ---------------------------------------------------------------------------
// Characteristic functions
// ---------------------------------------------------------------------------

/// Above this |x| the textbook forms are replaced by their rescaled versions
/// (cosh overflows just past 710).
inline constexpr double kOverflowThreshold = 700.0;

inline double stable_characteristic_fn(BoundaryCondition bc, double x);

/// Textbook characteristic function F(x), x = λL.
///   hinged-hinged      sin x
///   clamped-clamped    cos x cosh x − 1
///   clamped-hinged     cos x sinh x − sin x cosh x
///   clamped-free       cos x cosh x + 1
///   free-free          cos x cosh x − 1
/// For |x| > kOverflowThreshold the value of stable_characteristic_fn is
/// returned instead; it differs by a positive factor, so sign and zeros agree.
inline double characteristic_fn(BoundaryCondition bc, double x) {
  if (std::abs(x) > kOverflowThreshold) return stable_characteristic_fn(bc, x);
  switch (bc) {
    case BoundaryCondition::HingedHinged: return std::sin(x);
    case BoundaryCondition::ClampedClamped:
    case BoundaryCondition::FreeFree: return std::cos(x) * std::cosh(x) - 1.0;
    case BoundaryCondition::ClampedHinged:
      return std::cos(x) * std::sinh(x) - std::sin(x) * std::cosh(x);
    case BoundaryCondition::ClampedFree: return std::cos(x) * std::cosh(x) + 1.0;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

namespace detail {

// cosh(x)·e^{-|x|} and sinh(x)·e^{-|x|}, both bounded by 1.
inline double scaled_cosh(double x) { return 0.5 * (1.0 + std::exp(-2.0 * std::abs(x))); }
inline double scaled_sinh(double x) {
  return std::copysign(0.5 * -std::expm1(-2.0 * std::abs(x)), x);
}
inline double sech(double x) { return 1.0 / std::cosh(x); }  // cosh → inf gives 0

}  // namespace detail

/// Bounded form used by the root finder:
///   F1, F4 → cos x − sech x         (F / cosh x)
///   F3     → cos x + sech x         (F / cosh x)
///   F2     → F·e^{−|x|}
inline double stable_characteristic_fn(BoundaryCondition bc, double x) {
  switch (bc) {
    case BoundaryCondition::HingedHinged: return std::sin(x);
    case BoundaryCondition::ClampedClamped:
    case BoundaryCondition::FreeFree: return std::cos(x) - detail::sech(x);
    case BoundaryCondition::ClampedHinged:
      return std::cos(x) * detail::scaled_sinh(x) - std::sin(x) * detail::scaled_cosh(x);
    case BoundaryCondition::ClampedFree: return std::cos(x) + detail::sech(x);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

/// d/dx of stable_characteristic_fn.
inline double stable_characteristic_derivative(BoundaryCondition bc, double x) {
  switch (bc) {
    case BoundaryCondition::HingedHinged: return std::cos(x);
    case BoundaryCondition::ClampedClamped:
    case BoundaryCondition::FreeFree: return -std::sin(x) + detail::sech(x) * std::tanh(x);
    case BoundaryCondition::ClampedHinged: {
      // (F e^{-|x|})' = (F' − sgn(x) F) e^{-|x|} with F' = −2 sin x sinh x
      const double h = stable_characteristic_fn(bc, x);
      return -2.0 * std::sin(x) * detail::scaled_sinh(x) - std::copysign(1.0, x) * h;
    }
    case BoundaryCondition::ClampedFree: return -std::sin(x) - detail::sech(x) * std::tanh(x);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const { return lo <= x && x <= hi; }
  double width() const { return hi - lo; }
};

/// Asymptotic location of the k-th root of F(x), x = λL.
inline double root_seed(BoundaryCondition bc, int k) {
  using std::numbers::pi;
  switch (bc) {
    case BoundaryCondition::HingedHinged: return k * pi;
    case BoundaryCondition::ClampedClamped:
    case BoundaryCondition::FreeFree: return (k + 0.5) * pi;
    case BoundaryCondition::ClampedHinged: return (k + 0.25) * pi;
    case BoundaryCondition::ClampedFree: return k == 1 ? 1.875 : (k - 0.5) * pi;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

inline constexpr double kBracketHalfWidth = 0.3;
inline constexpr int kBracketTries = 4;

/// Interval around the k-th root with a sign change of the stable form.
/// The half-width starts at 0.3 and doubles on failure, at most 4 attempts.
inline Bracket bracket_root(BoundaryCondition bc, int k) {
  if (k < 1) throw DomainError("mode index must be >= 1");
  const double seed = root_seed(bc, k);
  double half = kBracketHalfWidth;
  for (int attempt = 0; attempt < kBracketTries; ++attempt, half *= 2.0) {
    const Bracket b{seed - half, seed + half};
    const double flo = stable_characteristic_fn(bc, b.lo);
    const double fhi = stable_characteristic_fn(bc, b.hi);
    if ((flo < 0.0 && fhi > 0.0) || (flo > 0.0 && fhi < 0.0)) return b;
  }
  throw BracketFailure("no sign change of the " + std::string(to_string(bc)) +
                           " characteristic function near mode " + std::to_string(k),
                       k);
}

/// Root of the characteristic equation for one mode, before a frequency is attached.
struct ModeRoot {
  int k = 0;
  double lambda = 0.0;    // 1/m
  double x_root = 0.0;    // λ·L
  double residual = 0.0;  // stable form evaluated at x_root
  Bracket bracket;
};

struct Mode : ModeRoot {
  double omega = 0.0;  // rad/s
};

inline constexpr double kDefaultRootTolerance = 1e-13;
inline constexpr double kBisectionWidth = 1e-6;
inline constexpr int kNewtonIterations = 64;
inline constexpr int kMaxModeCount = 10000;

/// Solve F(λL) = 0 for the k-th mode. Bisection narrows the bracket to 1e-6,
/// then a bracket-safeguarded Newton iteration drives |stable form| below tol.
/// Where tol is finer than double spacing allows (large x), the iteration stops
/// once the sign change sits between neighboring doubles and keeps the better
/// of the two; residual then reports the attained value.
inline ModeRoot find_lambda(BoundaryCondition bc, double length, int k,
                            double tol = kDefaultRootTolerance) {
  if (!(length > 0.0)) throw DomainError("beam length must be > 0");
  if (!(tol > 0.0)) throw DomainError("root tolerance must be > 0");
  if (k < 1) throw DomainError("mode index must be >= 1");

  ModeRoot root;
  root.k = k;
  root.bracket = bracket_root(bc, k);

  if (bc == BoundaryCondition::HingedHinged) {
    // Exact root kπ; sin(k*pi) in floating point only measures the rounding of π.
    root.x_root = k * std::numbers::pi;
    root.residual = 0.0;
    root.lambda = root.x_root / length;
    return root;
  }

  auto f = [bc](double x) { return stable_characteristic_fn(bc, x); };
  double lo = root.bracket.lo;
  double hi = root.bracket.hi;
  double flo = f(lo);
  while (hi - lo > kBisectionWidth) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if (fmid == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((fmid < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }

  double x = 0.5 * (lo + hi);
  double fx = f(x);
  bool converged = false;
  for (int it = 0; it < kNewtonIterations; ++it) {
    if (fx == 0.0) {
      converged = true;
      break;
    }
    // keep the sign-change interval current for the safeguard
    if ((fx < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    // Sign change between neighboring doubles: nothing closer is representable.
    if (std::nextafter(lo, hi) >= hi) {
      const double other = x == lo ? hi : lo;
      const double fother = f(other);
      if (std::abs(fother) < std::abs(fx)) {
        x = other;
        fx = fother;
      }
      converged = true;
      break;
    }
    double next = x - fx / stable_characteristic_derivative(bc, x);
    // a step that leaves the interval, or stalls short of tol, falls back to bisection
    if (!(next >= lo && next <= hi) || (next == x && !(std::abs(fx) <= tol)))
      next = 0.5 * (lo + hi);
    const double step = std::abs(next - x);
    const double fnext = f(next);
    if (std::abs(fx) <= tol && std::abs(fnext) >= std::abs(fx)) {
      converged = true;
      break;
    }
    x = next;
    fx = fnext;
    if (std::abs(fx) <= tol && step <= 4.0 * std::numeric_limits<double>::epsilon() * x) {
      converged = true;
      break;
    }
  }
  if (!converged && !(std::abs(fx) <= tol)) {
    throw NoConvergence("Newton iteration did not reach tolerance for " +
                            std::string(to_string(bc)) + " mode " + std::to_string(k),
                        k);
  }
  root.x_root = x;
  root.residual = fx;
  root.lambda = x / length;
  return root;
}

/// Roots λ_1..λ_count and frequencies for one beam.
struct ModeTable {
  BeamSpec spec;
  std::vector<Mode> modes;
  double tol = kDefaultRootTolerance;

  std::size_t size() const { return modes.size(); }

  const Mode& mode(int k) const {
    if (k < 1 || static_cast<std::size_t>(k) > modes.size())
      throw IndexError("mode " + std::to_string(k) + " is not in the table (1.." +
                       std::to_string(modes.size()) + ")");
    return modes[static_cast<std::size_t>(k - 1)];
  }
};

inline ModeTable mode_frequencies(const BeamSpec& spec, int count,
                                  double tol = kDefaultRootTolerance) {
  spec.validate();
  if (count < 1 || count > kMaxModeCount)
    throw DomainError("mode count must be in 1.." + std::to_string(kMaxModeCount));

  ModeTable table;
  table.spec = spec;
  table.tol = tol;
  table.modes.reserve(static_cast<std::size_t>(count));
  const double prefactor = frequency_prefactor(spec);
  const bool hinged = spec.bc == BoundaryCondition::HingedHinged;
  const double fundamental = hinged_fundamental_frequency(spec);
  for (int k = 1; k <= count; ++k) {
    Mode m{find_lambda(spec.bc, spec.length, k, tol)};
    // hinged-hinged: ω_k = ω̃·k² keeps commensurate frequencies exact multiples
    m.omega = hinged ? fundamental * static_cast<double>(k) * static_cast<double>(k)
                     : prefactor * m.lambda * m.lambda;
    table.modes.push_back(m);
  }
  return table;
}

/// Hinged-hinged eigenfunction sin(kπx/L).
inline double mode_shape_hinged(int k, double x, double length) {
  if (k < 1) throw DomainError("mode index must be >= 1");
  if (!(length > 0.0)) throw DomainError("beam length must be > 0");
  if (!(x >= 0.0 && x <= length)) throw DomainError("position outside [0, L]");
  return std::sin(k * std::numbers::pi * x / length);
}

/// (x_{k+1} − x_k)/π − 1.
inline double spacing_deviation(const ModeTable& table, int k) {
  const Mode& a = table.mode(k);
  const Mode& b = table.mode(k + 1);
  return (b.x_root - a.x_root) / std::numbers::pi - 1.0;
}

}  // namespace nanobeam

#endif  // NANOBEAM_BEAM_MODES_HPP
