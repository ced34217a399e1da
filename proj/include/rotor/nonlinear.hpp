#pragma once

// Mean-field kicked rotor with an interaction g |psi(theta)|^2, where the
// density uses the continuum normalization (integral of |psi|^2 d theta = 1).
//
// Two readings of the interacting Floquet map are provided:
//   continuous: the free interval delta is split into `substeps` Strang steps
//               N(tau/2) T(tau) N(tau/2), tau = delta / substeps, with
//               N(s) = exp(-i g |psi|^2 s) and T(s) = exp(-i p^2 s / 2),
//               followed by the kick exp(-i K cos theta);
//   kicked:     free phase exp(-i p^2 delta / 2) followed by the single phase
//               exp(-i (K cos theta + g |psi|^2)).

#include <cstddef>
#include <string>
#include <vector>

#include "rotor/core.hpp"
#include "rotor/quantum.hpp"

namespace rotor::nonlinear {

enum class Variant { continuous, kicked };

Variant parse_variant(const std::string& name);
const char* to_string(Variant variant) noexcept;

inline constexpr std::size_t kDefaultSubsteps = 16;

struct NonlinearConfig {
  double g = 0.0;
  Variant variant = Variant::continuous;
  std::size_t substeps = kDefaultSubsteps;
};

class NonlinearOperator {
 public:
  /// Uses K, delta and basis size from params; the interaction comes from
  /// config (params.g() is ignored). Throws Error(validation) for substeps == 0.
  NonlinearOperator(const SimParams& params, const NonlinearConfig& config);

  /// One period in place; returns the post-kick angle values.
  std::vector<Complex> apply(WaveState& state) const;

 private:
  NonlinearConfig config_;
  std::vector<Complex> free_phase_;     // exp(-i p^2 delta/2) (kicked)
  std::vector<Complex> substep_phase_;  // exp(-i p^2 tau/2) (continuous)
  std::vector<Complex> kick_phase_;
  std::vector<double> kick_potential_;  // K cos theta_j
  double half_tau_ = 0.0;
  quantum::FloquetOperator linear_;
};

/// One interacting period. With g = 0 this is exactly quantum::floquet_step.
WaveState nonlinear_floquet_step(const WaveState& state, const SimParams& params,
                                 const NonlinearConfig& config);

/// params.n_kicks() interacting periods recorded like quantum::evolve.
quantum::EvolutionRecord evolve(const WaveState& initial, const SimParams& params,
                                const NonlinearConfig& config,
                                const quantum::EvolveOptions& options = {});

/// Ratio of field maxima over kicks [lo, hi] x mean_caustic_kicks(m) between
/// an interacting run and its g = 0 baseline. Throws Error(validation) if
/// the window is outside either record.
double window_peak_ratio(const quantum::EvolutionRecord& run,
                         const quantum::EvolutionRecord& baseline, unsigned m, double lo = 0.75,
                         double hi = 1.25);

/// Runs the interacting evolution from the uniform state over the baseline's
/// kick count and returns the m = 1 window ratio against the baseline.
double suppression_metric(const SimParams& params, const NonlinearConfig& config,
                          const quantum::EvolutionRecord& baseline);

}  // namespace rotor::nonlinear
