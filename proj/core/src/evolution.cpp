#include "qwalk/evolution.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qwalk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// exp(i theta) for theta >= 0. Most of a spreading wavefunction has tiny
// |psi|^2, so small angles take a truncated Taylor series whose remainder
// (theta^11 / 11! < 3e-19 for theta < 0.1) is below double rounding.
inline Complex unit_phase(double theta) {
  if (theta < 0.1) {
    const double t2 = theta * theta;
    const double c = 1.0 + t2 * (-1.0 / 2 + t2 * (1.0 / 24 + t2 * (-1.0 / 720 + t2 * (1.0 / 40320 + t2 * (-1.0 / 3628800)))));
    const double s = theta * (1.0 + t2 * (-1.0 / 6 + t2 * (1.0 / 120 + t2 * (-1.0 / 5040 + t2 * (1.0 / 362880)))));
    return {c, s};
  }
  return {std::cos(theta), std::sin(theta)};
}

struct PhaseKernel {
  double k;           // 2 pi chi
  double min_abs;     // components below this in both parts get theta < 2e-17

  explicit PhaseKernel(double chi)
      : k(kTwoPi * chi), min_abs(std::sqrt(1e-17 / (kTwoPi * chi))) {}

  // exp(i theta) rounds to 1 for theta < 2e-17; skipping those components also
  // keeps the light-cone tails (|psi| ~ 1e-160) out of subnormal arithmetic.
  // The product is written out so it does not route through __muldc3.
  void operator()(CoinTriple& a) const {
    for (Complex& z : a) {
      const double re = z.real();
      const double im = z.imag();
      if (std::abs(re) < min_abs && std::abs(im) < min_abs) continue;
      const Complex u = unit_phase(k * (re * re + im * im));
      z = {re * u.real() - im * u.imag(), re * u.imag() + im * u.real()};
    }
  }
};

// C a = (2/3)(a_L + a_S + a_R) - a. Summing L and R first keeps the result
// bitwise symmetric under L <-> R.
inline void coin_triple(CoinTriple& a) {
  const Complex mean2 = ((a[0] + a[2]) + a[1]) * (2.0 / 3.0);
  a[0] = mean2 - a[0];
  a[1] = mean2 - a[1];
  a[2] = mean2 - a[2];
}

}  // namespace

NormDriftError::NormDriftError(std::int64_t time, double norm)
    : std::runtime_error("norm drifted to " + std::to_string(norm) + " at t = " + std::to_string(time)),
      time_(time),
      norm_(norm) {}

void apply_nonlinear_phase(WalkerState& state, const StepParams& params) {
  if (params.chi == 0.0) return;
  const PhaseKernel phase(params.chi);
  for (CoinTriple& a : state.sites()) phase(a);
}

void apply_coin(WalkerState& state) {
  for (CoinTriple& a : state.sites()) coin_triple(a);
}

void apply_shift(WalkerState& state) {
  // New index j holds site lowest-1+j and gathers L from old j, S from old
  // j-1 and R from old j-2. Every read index is <= j, so a descending sweep
  // works in place.
  auto& amps = state.amps_;
  const std::size_t old_size = amps.size();
  amps.resize(old_size + 2);
  const Complex zero{0.0, 0.0};
  for (std::size_t j = old_size + 2; j-- > 0;) {
    const Complex left = j < old_size ? amps[j][0] : zero;
    const Complex stay = (j >= 1 && j - 1 < old_size) ? amps[j - 1][1] : zero;
    const Complex right = j >= 2 ? amps[j - 2][2] : zero;
    amps[j] = {left, stay, right};
  }
  state.lowest_ -= 1;
  state.time_ += 1;
}

void step(WalkerState& state, const StepParams& params) {
  if (params.chi == 0.0) {
    for (CoinTriple& a : state.sites()) coin_triple(a);
  } else {
    const PhaseKernel phase(params.chi);
    for (CoinTriple& a : state.sites()) {
      phase(a);
      coin_triple(a);
    }
  }
  apply_shift(state);
}

RunRecord evolve(const WalkerState& initial, const StepParams& params, const EvolveOptions& options) {
  if (options.steps < 1) throw std::invalid_argument("evolve: steps must be >= 1");
  if (options.record_every < 1) throw std::invalid_argument("evolve: record_every must be >= 1");

  RunRecord record;
  const std::int64_t t0 = initial.time();
  for (TimeSeries* ts : {&record.survival, &record.participation, &record.norm}) {
    ts->start = t0;
    ts->values.reserve(static_cast<std::size_t>(options.steps) + 1);
  }

  WalkerState state = initial;
  state.reserve_steps(options.steps);

  auto observe = [&] {
    double norm = 0.0;
    double sum_sq = 0.0;
    for (const CoinTriple& a : state.sites()) {
      const double p = site_probability(a);
      norm += p;
      sum_sq += p * p;
    }
    if (!(std::abs(norm - 1.0) <= options.norm_tolerance)) throw NormDriftError(state.time(), norm);
    record.norm.push_back(norm);
    record.participation.push_back(1.0 / sum_sq);
    record.survival.push_back(survival_probability(state, options.survival_site));
    if (state.time() % options.record_every == 0) {
      DensityProfile profile = probability_density(state);
      if (options.on_snapshot) {
        options.on_snapshot(profile);
      } else {
        record.snapshots.push_back(std::move(profile));
      }
    }
  };

  observe();
  for (std::int64_t i = 0; i < options.steps; ++i) {
    step(state, params);
    observe();
  }
  record.final_state = std::move(state);
  return record;
}

}  // namespace qwalk
