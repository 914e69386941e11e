#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string_view>

namespace qwalk {

using Complex = std::complex<double>;

/// Coin components, always stored in (L, S, R) order.
enum class CoinLabel : int { L = 0, S = 1, R = 2 };

/// Named input vectors: the computational basis plus the Grover-coin
/// eigenvectors (sigma_plus has eigenvalue +1, the sigma_minus pair -1).
enum class BasisName { L, S, R, sigma_plus, sigma_minus_1, sigma_minus_2 };

inline constexpr std::array<BasisName, 6> kAllBasisNames = {
    BasisName::L,          BasisName::S,             BasisName::R,
    BasisName::sigma_plus, BasisName::sigma_minus_1, BasisName::sigma_minus_2};

struct CoinVector {
  std::array<Complex, 3> amps{};

  Complex& operator[](CoinLabel c) { return amps[static_cast<int>(c)]; }
  const Complex& operator[](CoinLabel c) const { return amps[static_cast<int>(c)]; }

  double norm_squared() const {
    return std::norm(amps[0]) + std::norm(amps[1]) + std::norm(amps[2]);
  }
};

/// <a|b> with a conjugated.
Complex inner_product(const CoinVector& a, const CoinVector& b);

CoinVector coin_basis(BasisName name);

std::string_view to_string(BasisName name);
std::optional<BasisName> parse_basis_name(std::string_view text);

}  // namespace qwalk
