#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "qwalk/coin.hpp"

namespace qwalk {

using Site = std::int64_t;
using CoinTriple = std::array<Complex, 3>;

/// |z|^2 without libstdc++'s hypot-based std::norm.
inline double squared_magnitude(const Complex& z) { return z.real() * z.real() + z.imag() * z.imag(); }

/// Coin-summed probability of one site.
inline double site_probability(const CoinTriple& a) {
  return squared_magnitude(a[0]) + squared_magnitude(a[1]) + squared_magnitude(a[2]);
}

/// Amplitude field psi(n, c) over a contiguous window of lattice sites.
///
/// Sites outside [lowest_site(), highest_site()] carry exactly zero
/// amplitude. A walk started from a single site keeps the stored window equal
/// to its light cone, so after t steps the window is [n0 - t, n0 + t].
class WalkerState {
 public:
  WalkerState() = default;
  WalkerState(Site lowest_site, std::vector<CoinTriple> amps, std::int64_t time = 0);

  std::int64_t time() const { return time_; }
  Site lowest_site() const { return lowest_; }
  Site highest_site() const { return lowest_ + static_cast<Site>(amps_.size()) - 1; }
  std::size_t site_count() const { return amps_.size(); }

  std::span<const CoinTriple> sites() const { return amps_; }
  std::span<CoinTriple> sites() { return amps_; }

  /// psi(n, c); zero outside the stored window.
  Complex amplitude(Site n, CoinLabel c) const;

  /// Total probability, sum over n and c of |psi(n, c)|^2.
  double norm() const;

  /// Pre-allocates room for `steps` further shift operations so the
  /// evolution loop never reallocates.
  void reserve_steps(std::int64_t steps);

 private:
  friend void apply_shift(WalkerState& state);

  std::int64_t time_ = 0;
  Site lowest_ = 0;
  std::vector<CoinTriple> amps_;
};

/// |n = position> (x) |coin>. Throws std::invalid_argument when the coin's
/// squared norm deviates from 1 by more than 1e-9.
WalkerState new_localized(Site position, const CoinVector& coin);

}  // namespace qwalk
