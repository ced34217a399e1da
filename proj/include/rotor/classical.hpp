#pragma once

// Standard map, epsilon-classical map, ensemble propagation, phase-space
// sections and fold (caustic) detection over families of trajectories.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rotor/core.hpp"

namespace rotor::classical {

struct PhasePoint {
  double theta = 0.0;  ///< wrapped into [0, 2 pi)
  double p = 0.0;
};

enum class MapKind { standard, eps_classical };

/// Parses "standard" / "eps_classical"; throws Error(validation) otherwise.
MapKind parse_map_kind(const std::string& name);
const char* to_string(MapKind kind) noexcept;

/// Chirikov threshold and the onset of global chaos for K delta.
struct ChaosThresholds {
  static constexpr double chirikov = 0.9716;
  static constexpr double global_chaos = 5.0;
};

/// Wraps an angle into [0, 2 pi).
double wrap_angle(double theta) noexcept;

/// theta' = theta + p T (mod 2 pi), p' = p + K sin theta'.
PhasePoint standard_map_step(PhasePoint point, double K, double T);

/// theta' = theta + p (mod 2 pi), p' = p + K delta sin theta'.
PhasePoint eps_classical_step(PhasePoint point, double K, double delta);

/// One step of the chosen map under params (standard uses params.period()).
PhasePoint map_step(PhasePoint point, MapKind kind, const SimParams& params);

struct EnsembleProvenance {
  std::size_t count = 0;
  double p0 = 0.0;
  double theta_lo = 0.0;
  double theta_hi = kTwoPi;
};

struct ClassicalEnsemble {
  std::vector<PhasePoint> points;
  EnsembleProvenance provenance;

  /// count points at theta_lo + (i + 1/2) (theta_hi - theta_lo) / count,
  /// all with momentum p0. The half-cell offset keeps seeds off the fixed
  /// points theta = 0 and theta = pi.
  static ClassicalEnsemble uniform(std::size_t count, double p0 = 0.0, double theta_lo = 0.0,
                                   double theta_hi = kTwoPi);
};

/// Snapshots after 0..n_steps steps (n_steps + 1 ensembles), point order kept.
std::vector<ClassicalEnsemble> propagate(const ClassicalEnsemble& ensemble, MapKind kind,
                                         const SimParams& params, std::size_t n_steps);

struct FoldPoint {
  std::size_t step = 0;
  double theta = 0.0;   ///< midpoint angle between the two grid trajectories
  double theta0 = 0.0;  ///< midpoint of their initial angles
};

/// Fold points where the central-difference derivative d theta_n / d theta0
/// across the grid changes sign between adjacent grid intervals, for steps
/// 1..n_steps, trajectories started at momentum p0. Throws Error(validation)
/// for fewer than 3 points or a grid that is not strictly increasing.
std::vector<FoldPoint> fold_detect(std::span<const double> theta0_grid, MapKind kind,
                                   const SimParams& params, std::size_t n_steps,
                                   double p0 = 0.0);

/// Seeds followed by n_steps iterates of each seed, seed-major.
std::vector<PhasePoint> poincare_section(const SimParams& params, MapKind kind,
                                         std::span<const PhasePoint> seeds, std::size_t n_steps);

/// max_n |p_n - p_0| for each seed over n_steps iterates.
std::vector<double> momentum_excursions(const SimParams& params, MapKind kind,
                                        std::span<const PhasePoint> seeds, std::size_t n_steps);

}  // namespace rotor::classical
