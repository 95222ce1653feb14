#include "random_instances.hpp"

#include <cmath>
#include <numbers>

namespace specband {

namespace {

// Angle bounded away from the real axis so beta is safely nonreal.
double nonreal_angle(Rng& rng) {
  const double theta = rng.uniform(0.25, std::numbers::pi - 0.25);
  return rng.coin() ? theta : -theta;
}

cplx corner_entry(Rng& rng, Regime regime) {
  const double re = rng.uniform(-2.0, 2.0);
  if (a_n_is_real(regime)) return {re, 0.0};
  return {re, rng.uniform(0.2, 2.0)};
}

}  // namespace

Regime regime_for_index(std::size_t i) noexcept {
  static constexpr Regime kAll[] = {Regime::BetaNonrealAnReal, Regime::BetaNonrealAnNonreal, Regime::BetaRealAnReal,
                                    Regime::BetaRealAnNonreal};
  return kAll[i % 4];
}

std::size_t size_for_index(std::size_t i) noexcept { return 3 + (i / 4) % 10; }

PeriodicMatrixHat random_hat(Rng& rng, std::size_t n, Regime regime) {
  PeriodicMatrixHat m;
  m.n = n;
  for (std::size_t k = 0; k + 1 < n; ++k) m.c_hat.push_back(rng.uniform(-2.0, 2.0));
  for (std::size_t k = 0; k + 1 < n; ++k) m.b_hat.push_back(rng.uniform(0.5, 1.5));
  const double radius = rng.uniform(0.5, 1.5);
  if (beta_is_real(regime))
    m.b_hat_n = rng.coin() ? radius : -radius;
  else
    m.b_hat_n = std::polar(radius, nonreal_angle(rng));
  m.a_hat_n = corner_entry(rng, regime);
  return m;
}

PeriodicMatrixGeneral random_general(Rng& rng, std::size_t n, Regime regime) {
  PeriodicMatrixGeneral m;
  m.n = n;
  for (std::size_t k = 0; k + 1 < n; ++k) m.c.push_back(rng.uniform(-2.0, 2.0));
  cplx product = 1.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const cplx b = std::polar(rng.uniform(0.5, 1.5), rng.uniform(-std::numbers::pi, std::numbers::pi));
    m.b.push_back(b);
    product *= b;
  }
  const double radius = rng.uniform(0.5, 1.5);
  const double target = beta_is_real(regime) ? (rng.coin() ? 0.0 : std::numbers::pi) : nonreal_angle(rng);
  m.b.push_back(std::polar(radius, target - std::arg(product)));
  m.a_n = corner_entry(rng, regime);
  return m;
}

}  // namespace specband
