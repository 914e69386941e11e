#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dense_oracle.hpp"
#include "qwalk/analysis.hpp"
#include "qwalk/evolution.hpp"

using namespace qwalk;

namespace {

constexpr CoinLabel kLabels[3] = {CoinLabel::L, CoinLabel::S, CoinLabel::R};

WalkerState single_amplitude(Site n, CoinLabel c, Complex value) {
  CoinTriple t{};
  t[static_cast<int>(c)] = value;
  return WalkerState(n, {t});
}

CoinVector random_coin(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CoinVector v{{Complex{g(rng), g(rng)}, Complex{g(rng), g(rng)}, Complex{g(rng), g(rng)}}};
  const double n = std::sqrt(v.norm_squared());
  for (Complex& a : v.amps) a /= n;
  return v;
}

WalkerState run(WalkerState s, double chi, int steps) {
  for (int i = 0; i < steps; ++i) step(s, {chi});
  return s;
}

}  // namespace

TEST_CASE("nonlinear phase") {
  SUBCASE("chi = 0 leaves the state bit-identical") {
    WalkerState s = run(new_localized(0, coin_basis(BasisName::sigma_minus_1)), 0.3, 25);
    const WalkerState before = s;
    apply_nonlinear_phase(s, {0.0});
    for (std::size_t i = 0; i < s.site_count(); ++i) CHECK(s.sites()[i] == before.sites()[i]);
  }
  SUBCASE("full weight on one component at chi = 0.5 flips its sign") {
    WalkerState s = single_amplitude(0, CoinLabel::S, 1.0);
    apply_nonlinear_phase(s, {0.5});
    CHECK(std::abs(s.amplitude(0, CoinLabel::S) - Complex{-1.0, 0.0}) < 1e-15);
  }
  SUBCASE("two components of weight 1/2 at chi = 1 both pick up e^{i pi}") {
    const double r = 1.0 / std::sqrt(2.0);
    WalkerState s(0, {{Complex{r, 0.0}, Complex{}, Complex{0.0, r}}});
    apply_nonlinear_phase(s, {1.0});
    CHECK(std::abs(s.amplitude(0, CoinLabel::L) - Complex{-r, 0.0}) < 1e-15);
    CHECK(std::abs(s.amplitude(0, CoinLabel::R) - Complex{0.0, -r}) < 1e-15);
  }
  SUBCASE("magnitudes are preserved per component") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> chi_dist(0.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
      WalkerState s = run(new_localized(0, random_coin(rng)), chi_dist(rng), 40);
      const WalkerState before = s;
      apply_nonlinear_phase(s, {chi_dist(rng)});
      for (std::size_t i = 0; i < s.site_count(); ++i)
        for (int c = 0; c < 3; ++c) CHECK(std::abs(std::abs(s.sites()[i][c]) - std::abs(before.sites()[i][c])) < 1e-15);
    }
  }
  SUBCASE("matches std::exp over the full range of angles") {
    // Sweeps |psi|^2 across the polynomial, library and skip branches.
    for (double p : {0.0, 1e-30, 1e-18, 1e-10, 1e-4, 0.01, 0.015, 0.016, 0.05, 0.3, 0.999}) {
      for (double chi : {0.05, 0.6, 1.0, 3.7}) {
        const Complex z = std::polar(std::sqrt(p), 0.3);
        WalkerState s(0, {{z, Complex{}, Complex{}}});
        apply_nonlinear_phase(s, {chi});
        const Complex expected = z * std::exp(Complex{0.0, 2.0 * std::numbers::pi * chi * p});
        CHECK(std::abs(s.amplitude(0, CoinLabel::L) - expected) <= 1e-15 * std::max(1.0, std::abs(z)));
      }
    }
  }
}

TEST_CASE("Grover coin") {
  SUBCASE("first column") {
    WalkerState s = single_amplitude(0, CoinLabel::L, 1.0);
    apply_coin(s);
    CHECK(std::abs(s.amplitude(0, CoinLabel::L) + 1.0 / 3.0) < 1e-15);
    CHECK(std::abs(s.amplitude(0, CoinLabel::S) - 2.0 / 3.0) < 1e-15);
    CHECK(std::abs(s.amplitude(0, CoinLabel::R) - 2.0 / 3.0) < 1e-15);
  }
  SUBCASE("eigenvectors") {
    for (auto [name, eigenvalue] : {std::pair{BasisName::sigma_plus, 1.0}, std::pair{BasisName::sigma_minus_1, -1.0},
                                    std::pair{BasisName::sigma_minus_2, -1.0}}) {
      const CoinVector v = coin_basis(name);
      WalkerState s = new_localized(0, v);
      apply_coin(s);
      for (CoinLabel c : kLabels) CHECK(std::abs(s.amplitude(0, c) - eigenvalue * v[c]) < 1e-14);
    }
  }
  SUBCASE("involution on evolved states") {
    std::mt19937_64 rng(11);
    WalkerState s = run(new_localized(0, random_coin(rng)), 0.4, 30);
    const WalkerState before = s;
    apply_coin(s);
    apply_coin(s);
    for (std::size_t i = 0; i < s.site_count(); ++i)
      for (int c = 0; c < 3; ++c) CHECK(std::abs(s.sites()[i][c] - before.sites()[i][c]) < 1e-14);
    CHECK(std::abs(s.norm() - before.norm()) < 1e-14);
  }
}

TEST_CASE("conditional shift") {
  SUBCASE("L moves left") {
    WalkerState s = single_amplitude(0, CoinLabel::L, 1.0);
    apply_shift(s);
    CHECK(s.amplitude(-1, CoinLabel::L) == Complex{1.0, 0.0});
    CHECK(s.amplitude(0, CoinLabel::L) == Complex{});
    CHECK(s.lowest_site() == -1);
    CHECK(s.highest_site() == 1);
    CHECK(s.time() == 1);
  }
  SUBCASE("S stays") {
    WalkerState s = single_amplitude(0, CoinLabel::S, 1.0);
    apply_shift(s);
    CHECK(s.amplitude(0, CoinLabel::S) == Complex{1.0, 0.0});
    CHECK(s.norm() == 1.0);
  }
  SUBCASE("R moves right") {
    WalkerState s = single_amplitude(4, CoinLabel::R, 1.0);
    apply_shift(s);
    CHECK(s.amplitude(5, CoinLabel::R) == Complex{1.0, 0.0});
    CHECK(s.amplitude(4, CoinLabel::R) == Complex{});
  }
  SUBCASE("no mixing across a wide window") {
    std::vector<CoinTriple> amps;
    for (int i = 0; i < 7; ++i) amps.push_back({Complex(i, 0), Complex(10 + i, 0), Complex(20 + i, 0)});
    WalkerState s(-3, amps);
    apply_shift(s);
    for (int i = 0; i < 7; ++i) {
      const Site n = -3 + i;
      CHECK(s.amplitude(n - 1, CoinLabel::L) == Complex(i, 0));
      CHECK(s.amplitude(n, CoinLabel::S) == Complex(10 + i, 0));
      CHECK(s.amplitude(n + 1, CoinLabel::R) == Complex(20 + i, 0));
    }
  }
}

TEST_CASE("single step examples") {
  SUBCASE("sigma_plus spreads evenly over three sites") {
    for (double chi : {0.0, 0.2, 0.6, 1.0, 1.7}) {
      WalkerState s = new_localized(0, coin_basis(BasisName::sigma_plus));
      step(s, {chi});
      CHECK(s.time() == 1);
      CHECK(survival_probability(s, -1) == doctest::Approx(1.0 / 3).epsilon(1e-14));
      CHECK(survival_probability(s, 0) == doctest::Approx(1.0 / 3).epsilon(1e-14));
      CHECK(survival_probability(s, 1) == doctest::Approx(1.0 / 3).epsilon(1e-14));
    }
  }
  SUBCASE("L input") {
    // C e_L = (-1/3, 2/3, 2/3); then L -> n-1, S stays, R -> n+1.
    WalkerState s = new_localized(0, coin_basis(BasisName::L));
    step(s, {0.0});
    CHECK(std::norm(s.amplitude(-1, CoinLabel::L)) == doctest::Approx(1.0 / 9).epsilon(1e-14));
    CHECK(std::norm(s.amplitude(0, CoinLabel::S)) == doctest::Approx(4.0 / 9).epsilon(1e-14));
    CHECK(std::norm(s.amplitude(1, CoinLabel::R)) == doctest::Approx(4.0 / 9).epsilon(1e-14));
    CHECK(std::norm(s.amplitude(0, CoinLabel::L)) == 0.0);
  }
}

TEST_CASE("step agrees with the dense operator oracle") {
  const testing::DenseLattice lattice{12};
  std::mt19937_64 rng(3);
  for (double chi : {0.0, 0.2, 0.6, 1.0}) {
    for (int trial = 0; trial < 3; ++trial) {
      const CoinVector coin = random_coin(rng);
      const WalkerState s = run(new_localized(0, coin), chi, 10);
      const auto oracle = lattice.evolve(lattice.localized(0, coin), chi, 10);
      double worst = 0.0;
      for (Site n = -12; n <= 12; ++n)
        for (int c = 0; c < 3; ++c)
          worst = std::max(worst, std::abs(s.amplitude(n, kLabels[c]) - oracle[lattice.index(n, c)]));
      CHECK(worst < 1e-12);
    }
  }
}

TEST_CASE("unitarity and light cone") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> chi_dist(0.0, 2.0);
  for (int trial = 0; trial < 3; ++trial) {
    const double chi = chi_dist(rng);
    WalkerState s = new_localized(0, random_coin(rng));
    s.reserve_steps(2000);
    for (int t = 1; t <= 2000; ++t) {
      step(s, {chi});
      REQUIRE(std::abs(s.norm() - 1.0) < 1e-10);
      REQUIRE(s.lowest_site() == -t);
      REQUIRE(s.highest_site() == t);
      REQUIRE(s.amplitude(t + 1, CoinLabel::R) == Complex{});
      REQUIRE(s.amplitude(-t - 1, CoinLabel::L) == Complex{});
    }
  }
}

TEST_CASE("mirror symmetry of symmetric inputs") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> chi_dist(0.0, 1.5);
  for (BasisName name : {BasisName::sigma_plus, BasisName::sigma_minus_1}) {
    const double chi = chi_dist(rng);
    WalkerState s = new_localized(0, coin_basis(name));
    for (int t = 1; t <= 600; ++t) {
      step(s, {chi});
      if (t % 50 != 0) continue;
      double worst = 0.0;
      for (Site n = -t; n <= t; ++n) {
        worst = std::max(worst, std::abs(std::abs(s.amplitude(n, CoinLabel::L)) - std::abs(s.amplitude(-n, CoinLabel::R))));
        worst = std::max(worst, std::abs(std::abs(s.amplitude(n, CoinLabel::S)) - std::abs(s.amplitude(-n, CoinLabel::S))));
      }
      CHECK(worst < 1e-12);
    }
  }
}

TEST_CASE("global phase invariance") {
  // Exact quarter turns commute with rounding, so invariance holds bitwise at any t.
  for (Complex turn : {Complex{0.0, 1.0}, Complex{-1.0, 0.0}, Complex{0.0, -1.0}}) {
    CoinVector rotated = coin_basis(BasisName::sigma_plus);
    for (Complex& a : rotated.amps) a *= turn;
    const RunRecord a = evolve(new_localized(0, coin_basis(BasisName::sigma_plus)), {0.6}, {.steps = 1500, .record_every = 1500});
    const RunRecord b = evolve(new_localized(0, rotated), {0.6}, {.steps = 1500, .record_every = 1500});
    CHECK(a.survival.values == b.survival.values);
    CHECK(a.participation.values == b.participation.values);
  }
}

TEST_CASE("evolve records every step") {
  const RunRecord rec = evolve(new_localized(0, coin_basis(BasisName::sigma_plus)), {0.2}, {.steps = 10, .record_every = 4});
  CHECK(rec.survival.size() == 11);
  CHECK(rec.participation.size() == 11);
  CHECK(rec.norm.size() == 11);
  CHECK(rec.survival.at(0) == doctest::Approx(1.0).epsilon(1e-15));
  for (double n : rec.norm.values) CHECK(std::abs(n - 1.0) < 1e-12);
  REQUIRE(rec.snapshots.size() == 3);
  CHECK(rec.snapshots[0].time == 0);
  CHECK(rec.snapshots[1].time == 4);
  CHECK(rec.snapshots[2].time == 8);
  CHECK(rec.final_state.time() == 10);
}

TEST_CASE("evolve streams snapshots through the callback") {
  std::vector<std::int64_t> seen;
  EvolveOptions options{.steps = 9, .record_every = 3};
  options.on_snapshot = [&](const DensityProfile& p) { seen.push_back(p.time); };
  const RunRecord rec = evolve(new_localized(0, coin_basis(BasisName::L)), {0.0}, options);
  CHECK(rec.snapshots.empty());
  CHECK(seen == std::vector<std::int64_t>{0, 3, 6, 9});
}

TEST_CASE("evolve is deterministic") {
  const auto go = [] {
    return evolve(new_localized(0, coin_basis(BasisName::sigma_minus_1)), {0.8}, {.steps = 800, .record_every = 800});
  };
  const RunRecord a = go();
  const RunRecord b = go();
  CHECK(a.survival.values == b.survival.values);
  CHECK(a.participation.values == b.participation.values);
  CHECK(a.norm.values == b.norm.values);
}

TEST_CASE("evolve measures survival at the configured site") {
  EvolveOptions options{.steps = 5, .record_every = 5};
  options.survival_site = 7;
  const RunRecord rec = evolve(new_localized(7, coin_basis(BasisName::sigma_plus)), {0.0}, options);
  CHECK(rec.survival.at(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rec.survival.at(1) == doctest::Approx(1.0 / 3).epsilon(1e-14));
}

TEST_CASE("evolve argument and drift errors") {
  const WalkerState s = new_localized(0, coin_basis(BasisName::L));
  CHECK_THROWS_AS(evolve(s, {0.0}, {.steps = 0, .record_every = 1}), std::invalid_argument);
  CHECK_THROWS_AS(evolve(s, {0.0}, {.steps = 5, .record_every = 0}), std::invalid_argument);

  const WalkerState half(0, {{Complex{0.5, 0.0}, Complex{}, Complex{}}});
  CHECK_THROWS_AS(evolve(half, {0.0}, {.steps = 5, .record_every = 1}), NormDriftError);
}

TEST_CASE("linear walks: localization and dispersion") {
  SUBCASE("sigma_plus saturates") {
    const RunRecord rec = evolve(new_localized(0, coin_basis(BasisName::sigma_plus)), {0.0}, {.steps = 100, .record_every = 100});
    const auto sp = detect_saturation(rec.survival, {50, 74}, {75, 100}, 0.25);
    CHECK(sp.saturated);
    CHECK(sp.level > 0.05);
    const auto pr = detect_saturation(rec.participation, {50, 74}, {75, 100}, 0.1);
    CHECK(pr.saturated);
  }
  SUBCASE("sigma_minus_1 decays as 1/t") {
    const RunRecord rec = evolve(new_localized(0, coin_basis(BasisName::sigma_minus_1)), {0.0}, {.steps = 1000, .record_every = 1000});
    const PowerLawFit fit = fit_power_law(rec.survival, 50, 1000);
    CHECK(fit.exponent == doctest::Approx(-1.0).epsilon(0.05));
  }
}
