#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "direct.hpp"
#include "oracles.hpp"
#include "random_instances.hpp"

using namespace specband;

namespace {

const cplx I(0.0, 1.0);
const double s3 = std::sqrt(3.0);

bool check_passed(const DirectReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return c.pass;
  return false;
}

}  // namespace

TEST_CASE("worked instance") {
  const PeriodicMatrixHat m{3, {0.0, 0.0}, {1.0, 1.0}, I, 0.0};
  const DirectReport r = full_spectrum(m);
  CHECK(r.regime == Regime::BetaNonrealAnReal);
  REQUIRE(r.lambda.size() == 3);
  CHECK(std::abs(r.lambda[0] + s3) < 1e-12);
  CHECK(std::abs(r.lambda[1]) < 1e-12);
  CHECK(std::abs(r.lambda[2] - s3) < 1e-12);
  CHECK(r.submatrix.mu[0] == doctest::Approx(-1.0));
  CHECK(r.submatrix.mu[1] == doctest::Approx(1.0));
  CHECK(r.residues.alpha[0] == doctest::Approx(1.0));
  CHECK(r.residues.alpha[1] == doctest::Approx(1.0));
  CHECK(r.necessary.m == 2);
  CHECK(r.pass());

  PeriodicMatrixHat shifted = m;
  shifted.a_hat_n = I;
  const DirectReport ri = full_spectrum(shifted);
  const std::vector<cplx> want{1.0, -I, -3.0, I};
  for (std::size_t p = 0; p < 4; ++p) CHECK(std::abs(ri.chi_n.coeffs()[p] - want[p]) < 1e-14);
  CHECK(ri.regime == Regime::BetaNonrealAnNonreal);
  CHECK(check_passed(ri, "localization.open_half_plane"));
  for (const auto& l : ri.lambda) CHECK(l.imag() > 0.0);
}

TEST_CASE("assembled polynomial matches the oracle in every regime") {
  Rng rng(101);
  for (int trial = 0; trial < 80; ++trial) {
    const Regime regime = regime_for_index(trial);
    const auto g = random_general(rng, size_for_index(trial), regime);
    const DirectReport r = full_spectrum(g);
    CHECK(r.regime == regime);
    const ComplexPolynomial want = charpoly_oracle(g);
    for (std::size_t p = 0; p <= g.n; ++p)
      CHECK(std::abs(r.chi_n.coeff_of_power(p) - want.coeff_of_power(p)) <=
            1e-9 * std::max(1.0, std::abs(want.coeff_of_power(p))));
    const auto eig = oracle::dense_eigenvalues(g);
    CHECK(oracle::hausdorff(eig, r.lambda) <= 1e-8 * r.spectral_scale);
    for (double a : r.residues.alpha) CHECK(a >= 0.0);
    for (const auto& c : r.checks) {
      INFO(c.name << " " << c.witness);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("double eigenvalue with a vanishing residue") {
  // chi_3 = (z + 1)^2 (z - 2)
  const PeriodicMatrixGeneral m{3, {0.0, 0.0}, {1.0, 1.0, 1.0}, 0.0};
  const DirectReport r = full_spectrum(m);
  CHECK(r.regime == Regime::BetaRealAnReal);
  CHECK(r.residues.zero_set == std::vector<std::size_t>{0});
  REQUIRE(r.lambda.size() == 3);
  CHECK(r.multiplicity == std::vector<int>{2, 2, 1});
  CHECK(std::abs(r.lambda[0] + 1.0) < 1e-7);
  CHECK(std::abs(r.lambda[2] - 2.0) < 1e-12);
  for (const auto& c : r.checks) {
    INFO(c.name << " " << c.witness);
    CHECK(c.pass);
  }
}

TEST_CASE("necessary conditions on hand values") {
  SUBCASE("beta = i, both bounds tight") {
    const std::vector<cplx> chi{2.0, -2.0};
    const auto c = check_necessary_conditions(chi, {I, false});
    CHECK(c.pass);
    CHECK(c.m == 2);
    CHECK(c.degenerate_count() == 2);
  }
  SUBCASE("beta = 2i fails the bound with margin -2") {
    const std::vector<cplx> chi{2.0, -2.0};
    const auto c = check_necessary_conditions(chi, {2.0 * I, false});
    CHECK_FALSE(c.pass);
    for (const auto& row : c.rows) CHECK(row.bound_margin == doctest::Approx(-2.0));
  }
  SUBCASE("real beta = -1/4") {
    const std::vector<cplx> chi{3.0, -3.0};
    const auto c = check_necessary_conditions(chi, {-0.25, true});
    CHECK(c.pass);
    CHECK(c.m1 == 0);
    CHECK(c.m2 == 0);
    CHECK(c.rows[0].bound_margin == doctest::Approx(2.0));
    CHECK(c.rows[1].bound_margin == doctest::Approx(4.0));
  }
  SUBCASE("wrong sign is rejected") {
    const std::vector<cplx> chi{-3.0, -3.0};
    CHECK_FALSE(check_necessary_conditions(chi, {I, false}).pass);
  }
  SUBCASE("a non-real value is rejected") {
    const std::vector<cplx> chi{cplx(3.0, 0.5), -3.0};
    const auto c = check_necessary_conditions(chi, {I, false});
    CHECK_FALSE(c.rows[0].chi_real);
    CHECK_FALSE(c.pass);
  }
}

TEST_CASE("equality tolerance scale") {
  const std::vector<cplx> chi{10.0, -0.5};
  CHECK(equality_tolerance(chi, I, 1e-8) == doctest::Approx(1e-7));
  CHECK(equality_tolerance(chi, 20.0 * I, 1e-8) == doctest::Approx(4e-7));
}

TEST_CASE("regime labels") {
  CHECK(std::string(to_string(classify_regime(false, true))) == "beta-nonreal/a_n-real");
  CHECK(std::string(to_string(classify_regime(true, false))) == "beta-real/a_n-nonreal");
  CHECK(beta_is_real(Regime::BetaRealAnNonreal));
  CHECK_FALSE(a_n_is_real(Regime::BetaNonrealAnNonreal));
}

TEST_CASE("lower half-plane corner entry mirrors the upper one") {
  PeriodicMatrixHat m{4, {0.3, -0.2, 0.1}, {1.0, 0.7, 1.2}, std::polar(0.9, 1.0), cplx(0.4, -0.8)};
  const DirectReport r = full_spectrum(m);
  for (const auto& l : r.lambda) CHECK(l.imag() < 0.0);
  CHECK(r.pass());
}
