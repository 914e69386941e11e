#include "qwalk/coin.hpp"

#include <cmath>

namespace qwalk {

Complex inner_product(const CoinVector& a, const CoinVector& b) {
  Complex acc{0.0, 0.0};
  for (int i = 0; i < 3; ++i) acc += std::conj(a.amps[i]) * b.amps[i];
  return acc;
}

CoinVector coin_basis(BasisName name) {
  const double r2 = 1.0 / std::sqrt(2.0);
  const double r3 = 1.0 / std::sqrt(3.0);
  const double r6 = 1.0 / std::sqrt(6.0);
  switch (name) {
    case BasisName::L:
      return {{1.0, 0.0, 0.0}};
    case BasisName::S:
      return {{0.0, 1.0, 0.0}};
    case BasisName::R:
      return {{0.0, 0.0, 1.0}};
    case BasisName::sigma_plus:
      return {{r3, r3, r3}};
    case BasisName::sigma_minus_1:
      return {{r6, -2.0 * r6, r6}};
    case BasisName::sigma_minus_2:
      return {{r2, 0.0, -r2}};
  }
  return {};
}

std::string_view to_string(BasisName name) {
  switch (name) {
    case BasisName::L: return "L";
    case BasisName::S: return "S";
    case BasisName::R: return "R";
    case BasisName::sigma_plus: return "sigma_plus";
    case BasisName::sigma_minus_1: return "sigma_minus_1";
    case BasisName::sigma_minus_2: return "sigma_minus_2";
  }
  return "?";
}

std::optional<BasisName> parse_basis_name(std::string_view text) {
  for (BasisName name : kAllBasisNames) {
    if (to_string(name) == text) return name;
  }
  return std::nullopt;
}

}  // namespace qwalk
