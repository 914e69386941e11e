#include "qwalk/walker_state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qwalk {

WalkerState::WalkerState(Site lowest_site, std::vector<CoinTriple> amps, std::int64_t time)
    : time_(time), lowest_(lowest_site), amps_(std::move(amps)) {
  if (time < 0) throw std::invalid_argument("WalkerState: negative time");
}

Complex WalkerState::amplitude(Site n, CoinLabel c) const {
  if (n < lowest_ || n > highest_site()) return {0.0, 0.0};
  return amps_[static_cast<std::size_t>(n - lowest_)][static_cast<int>(c)];
}

double WalkerState::norm() const {
  double total = 0.0;
  for (const CoinTriple& s : amps_) total += site_probability(s);
  return total;
}

void WalkerState::reserve_steps(std::int64_t steps) {
  amps_.reserve(amps_.size() + 2 * static_cast<std::size_t>(steps));
}

WalkerState new_localized(Site position, const CoinVector& coin) {
  const double deviation = std::abs(coin.norm_squared() - 1.0);
  if (deviation > 1e-9) {
    throw std::invalid_argument("new_localized: coin vector is not normalized (|1 - norm| = " +
                                std::to_string(deviation) + ")");
  }
  return WalkerState(position, {coin.amps});
}

}  // namespace qwalk
