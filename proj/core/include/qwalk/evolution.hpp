#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "qwalk/observables.hpp"
#include "qwalk/walker_state.hpp"

namespace qwalk {

struct StepParams {
  /// Nonlinearity strength; each component picks up exp(i 2 pi chi |psi|^2).
  double chi = 0.0;
};

/// Thrown by evolve() when the norm drifts away from 1 beyond tolerance.
class NormDriftError : public std::runtime_error {
 public:
  NormDriftError(std::int64_t time, double norm);
  std::int64_t time() const { return time_; }
  double norm() const { return norm_; }

 private:
  std::int64_t time_;
  double norm_;
};

/// Multiplies every component by exp(i 2 pi chi |psi(n,c)|^2). Magnitudes are
/// untouched and chi == 0 leaves the state bit-identical.
void apply_nonlinear_phase(WalkerState& state, const StepParams& params);

/// Grover coin (1/3)[[-1,2,2],[2,-1,2],[2,2,-1]] on every site.
void apply_coin(WalkerState& state);

/// Conditional shift: L moves to n-1, S stays, R moves to n+1. The stored
/// window grows by one site on each side.
void apply_shift(WalkerState& state);

/// One application of U(t) = S [C (x) I] U_nl(t-1): phase, then coin, then
/// shift. Advances time by one.
void step(WalkerState& state, const StepParams& params);

struct EvolveOptions {
  std::int64_t steps = 10000;
  /// Density snapshots are taken whenever t % record_every == 0.
  std::int64_t record_every = 10;
  /// Survival probability is measured here; defaults to the origin.
  Site survival_site = 0;
  double norm_tolerance = 1e-8;
  /// When set, snapshots are handed over instead of kept in the record.
  std::function<void(const DensityProfile&)> on_snapshot;
};

struct RunRecord {
  TimeSeries survival{"SP", 0, {}};
  TimeSeries participation{"PR", 0, {}};
  TimeSeries norm{"norm", 0, {}};
  std::vector<DensityProfile> snapshots;
  WalkerState final_state;
};

/// Iterates step() from `initial`. SP, PR and norm are sampled at every t in
/// [initial.time(), initial.time() + steps]. Deterministic for fixed inputs.
/// Throws NormDriftError when |norm - 1| exceeds options.norm_tolerance and
/// std::invalid_argument for steps < 1 or record_every < 1.
RunRecord evolve(const WalkerState& initial, const StepParams& params, const EvolveOptions& options);

}  // namespace qwalk
