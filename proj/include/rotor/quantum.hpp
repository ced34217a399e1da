#pragma once

// Exact one-period Floquet evolution of the linear kicked rotor,
//   U = exp(-i K cos theta) exp(-i p^2 delta / 2),
// using the exact reduction exp(-i p^2 (4 pi + delta) / 2) =
// exp(-i p^2 delta / 2) for integer p.

#include <cstddef>
#include <functional>
#include <vector>

#include "rotor/core.hpp"
#include "rotor/error.hpp"

namespace rotor::quantum {

/// Upper bound on sum_{|p| >= M/4} |c_p|^2 for a run to count as converged
/// in the momentum truncation.
inline constexpr double kTailMassLimit = 1e-10;
/// Largest accepted |norm^2 - 1| on entry to a step.
inline constexpr double kNormTolerance = 1e-9;

struct EvolutionRecord {
  SimParams params;
  AmplitudeField field;           ///< row n = |psi(theta_j)| after n kicks
  std::vector<double> axis_cut;   ///< |psi(pi, t_n)| at node M/2
  double tail_mass = 0.0;         ///< max over kicks of the truncation tail
};

/// Inclusive range of kick indices.
struct KickWindow {
  std::size_t first = 0;
  std::size_t last = 0;
};

struct PeakSample {
  std::size_t kick = 0;
  std::size_t node = 0;
  double theta = 0.0;
  double value = 0.0;
};

struct EvolveOptions {
  bool enforce_tail_mass = true;
  double tail_limit = kTailMassLimit;
};

/// Precomputed free and kick phases for one parameter set. Applying it is
/// const and allocation-free apart from the FFT scratch buffer, so one
/// operator may be shared by concurrent callers.
class FloquetOperator {
 public:
  explicit FloquetOperator(const SimParams& params);

  /// Advances one period in place and returns the post-kick angle values
  /// psi(theta_j) (continuum density convention).
  std::vector<Complex> apply(WaveState& state) const;

  std::size_t basis_size() const noexcept { return free_phase_.size(); }

 private:
  std::vector<Complex> free_phase_;  // by FFT bin
  std::vector<Complex> kick_phase_;  // by angle node
};

/// sum_{|p| >= M/4} |c_p|^2.
double tail_mass(const WaveState& state);

/// Throws Error(not_normalized) when |norm^2 - 1| > kNormTolerance.
void require_normalized(const WaveState& state);

/// One application of U. Requires params.g() == 0 and a normalized state.
WaveState floquet_step(const WaveState& state, const SimParams& params);

/// In-place stepper returning the post-step angle values.
using Stepper = std::function<std::vector<Complex>(WaveState&)>;

/// Records params.n_kicks() applications of an arbitrary stepper; shared by
/// the linear and mean-field evolutions.
EvolutionRecord record_evolution(const WaveState& initial, const SimParams& params,
                                 const Stepper& step, const EvolveOptions& options = {});

/// n_kicks Floquet steps; row 0 is the initial state. Throws
/// Error(tail_mass) if the truncation tail exceeds options.tail_limit.
EvolutionRecord evolve(const WaveState& initial, const SimParams& params,
                       const EvolveOptions& options = {});

/// Argmax of the field over the kick window; ties go to the smallest kick,
/// then the smallest node. Throws Error(validation) for an empty window or
/// one that extends beyond the recorded kicks.
PeakSample peak_amplitude(const EvolutionRecord& record, KickWindow window);

/// Same search restricted to the theta = pi axis cut.
PeakSample axis_peak(const EvolutionRecord& record, KickWindow window);

/// Kicks [ceil(lo * n), floor(hi * n)] around the mean caustic time n of
/// branch m. Throws Error(validation) when the range is empty.
KickWindow caustic_window(const SimParams& params, unsigned m, double lo, double hi);

/// First-cusp search window: [0.5, 1.5] x the m = 0 mean caustic time.
inline KickWindow first_cusp_window(const SimParams& params) {
  return caustic_window(params, 0, 0.5, 1.5);
}

}  // namespace rotor::quantum
