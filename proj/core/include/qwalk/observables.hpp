#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qwalk/walker_state.hpp"

namespace qwalk {

/// Scalar observable sampled on the dense integer grid start, start+1, ...
struct TimeSeries {
  std::string name;
  std::int64_t start = 0;
  std::vector<double> values;

  std::int64_t end() const { return start + static_cast<std::int64_t>(values.size()); }
  bool contains(std::int64_t t) const { return t >= start && t < end(); }
  double at(std::int64_t t) const;
  void push_back(double v) { values.push_back(v); }
  std::size_t size() const { return values.size(); }
};

struct SiteProbability {
  double left = 0.0;
  double stay = 0.0;
  double right = 0.0;
  double total = 0.0;
};

struct DensityProfile {
  std::int64_t time = 0;
  Site lowest_site = 0;
  std::vector<SiteProbability> sites;

  /// Zero outside the stored window.
  SiteProbability at(Site n) const;
};

DensityProfile probability_density(const WalkerState& state);

/// 1 / sum_n |psi_n|^4 with |psi_n|^2 the coin-summed site probability.
double participation_ratio(const WalkerState& state);

/// Coin-summed probability at `site` (the origin unless stated).
double survival_probability(const WalkerState& state, Site site = 0);

struct PortraitPoint {
  std::int64_t time = 0;
  double value = 0.0;
  double velocity = 0.0;
};

/// (SP(t), SP(t) - SP(t-1)) for every t after the first sample, keeping every
/// `stride`-th point. Throws std::invalid_argument for fewer than two samples.
std::vector<PortraitPoint> phase_portrait(const TimeSeries& sp, std::size_t stride = 1);

}  // namespace qwalk
