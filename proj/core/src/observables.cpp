#include "qwalk/observables.hpp"

#include <stdexcept>

namespace qwalk {

double TimeSeries::at(std::int64_t t) const {
  if (!contains(t)) throw std::out_of_range("TimeSeries '" + name + "': t outside range");
  return values[static_cast<std::size_t>(t - start)];
}

SiteProbability DensityProfile::at(Site n) const {
  if (n < lowest_site || n >= lowest_site + static_cast<Site>(sites.size())) return {};
  return sites[static_cast<std::size_t>(n - lowest_site)];
}

DensityProfile probability_density(const WalkerState& state) {
  DensityProfile profile;
  profile.time = state.time();
  profile.lowest_site = state.lowest_site();
  profile.sites.reserve(state.site_count());
  for (const CoinTriple& s : state.sites()) {
    SiteProbability p;
    p.left = squared_magnitude(s[0]);
    p.stay = squared_magnitude(s[1]);
    p.right = squared_magnitude(s[2]);
    p.total = p.left + p.stay + p.right;
    profile.sites.push_back(p);
  }
  return profile;
}

double participation_ratio(const WalkerState& state) {
  double sum_sq = 0.0;
  for (const CoinTriple& s : state.sites()) {
    const double p = site_probability(s);
    sum_sq += p * p;
  }
  return 1.0 / sum_sq;
}

double survival_probability(const WalkerState& state, Site site) {
  if (site < state.lowest_site() || site > state.highest_site()) return 0.0;
  return site_probability(state.sites()[static_cast<std::size_t>(site - state.lowest_site())]);
}

std::vector<PortraitPoint> phase_portrait(const TimeSeries& sp, std::size_t stride) {
  if (sp.size() < 2) throw std::invalid_argument("phase_portrait: need at least two samples");
  if (stride == 0) throw std::invalid_argument("phase_portrait: stride must be >= 1");
  std::vector<PortraitPoint> out;
  out.reserve((sp.size() - 1) / stride + 1);
  for (std::size_t i = 1; i < sp.size(); i += stride) {
    out.push_back({sp.start + static_cast<std::int64_t>(i), sp.values[i],
                   sp.values[i] - sp.values[i - 1]});
  }
  return out;
}

}  // namespace qwalk
