#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "errors.hpp"
#include "inverse.hpp"
#include "oracles.hpp"
#include "random_instances.hpp"

using namespace specband;

namespace {

const cplx I(0.0, 1.0);
const double s3 = std::sqrt(3.0);

SpectralData golden() { return {{-s3, 0.0, s3}, {-1.0, 1.0}, I}; }
SpectralData quarter() { return {{-2.0, 0.0, 2.0}, {-1.0, 1.0}, -0.25}; }

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a throw");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("data validation") {
  SpectralData d = golden();
  d.mu = {1.0, -1.0};
  CHECK(kind_of([&] { validate_data(d); }) == ErrorKind::InvalidData);
  d = golden();
  d.mu = {1.0, 1.0};
  CHECK(kind_of([&] { validate_data(d); }) == ErrorKind::InvalidData);
  d = golden();
  d.beta = 0.0;
  CHECK(kind_of([&] { validate_data(d); }) == ErrorKind::InvalidData);
  d = golden();
  d.mu.push_back(2.0);
  CHECK(kind_of([&] { validate_data(d); }) == ErrorKind::InvalidData);
}

TEST_CASE("feasibility on the hand fixtures") {
  const FeasibilityReport ok = feasibility_check(golden());
  CHECK(ok.pass);
  CHECK(ok.regime == Regime::BetaNonrealAnReal);
  CHECK(ok.conditions.m == 2);
  CHECK(ok.branch_count == 1);

  SpectralData wide = golden();
  wide.beta = 2.0 * I;
  const FeasibilityReport bad = feasibility_check(wide);
  CHECK_FALSE(bad.pass);
  for (const auto& row : bad.conditions.rows) CHECK(row.bound_margin == doctest::Approx(-2.0));
  CHECK(bad.branch_count == 0);

  const FeasibilityReport q = feasibility_check(quarter());
  CHECK(q.pass);
  CHECK(q.regime == Regime::BetaRealAnReal);
  CHECK(q.conditions.m1 == 0);
  CHECK(q.conditions.m2 == 0);
  CHECK(q.branch_count == 4);
  CHECK(q.conditions.rows[0].chi.real() == doctest::Approx(3.0));
  CHECK(q.conditions.rows[1].chi.real() == doctest::Approx(-3.0));
}

TEST_CASE("location hypotheses") {
  SpectralData d = golden();
  d.lambda[1] = cplx(0.0, 0.1);
  const FeasibilityReport r = feasibility_check(d);
  CHECK_FALSE(r.pass);

  // eigenvalue equal to a mu with nonreal beta
  SpectralData touching{{-s3, 1.0, s3}, {-1.0, 1.0}, I};
  CHECK_FALSE(feasibility_check(touching).pass);
}

TEST_CASE("branch candidates") {
  const SpectralData g = golden();
  const auto rep = feasibility_check(g);
  const auto c = branch_candidates(g, rep);
  for (const auto& pair : c) {
    CHECK(pair.degenerate);
    CHECK(pair.plus == doctest::Approx(0.5));
    CHECK(pair.minus == doctest::Approx(0.5));
  }

  const SpectralData q = quarter();
  const auto rq = feasibility_check(q);
  const auto cq = branch_candidates(q, rq);
  CHECK(cq[1].plus == doctest::Approx((3.5 + std::sqrt(12.0)) / 4.0));
  CHECK(cq[1].minus == doctest::Approx((3.5 - std::sqrt(12.0)) / 4.0));
  for (std::size_t k = 0; k < 2; ++k) {
    const double prime = rq.chi_prime[k];
    CHECK(cq[k].plus * cq[k].minus == doctest::Approx(0.0625 / (prime * prime)).epsilon(1e-9));
  }

  SpectralData wide = golden();
  wide.beta = 2.0 * I;
  const auto rw = feasibility_check(wide);
  CHECK(kind_of([&] { branch_candidates(wide, rw); }) == ErrorKind::InfeasibleBranch);
}

TEST_CASE("real-beta roots agree with the general formula") {
  Rng rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const auto m = random_hat(rng, 3 + trial % 8, Regime::BetaRealAnReal);
    const SpectralData d = spectral_data_of(full_spectrum(m));
    const auto rep = feasibility_check(d);
    REQUIRE(rep.pass);
    const auto c = branch_candidates(d, rep);
    const double beta = d.beta.real();
    const std::size_t n = d.n();
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (c[k].degenerate) continue;
      const double chi = rep.conditions.rows[k].chi.real();
      const double shifted = chi + 2.0 * beta;
      const double disc = shifted * shifted - 4.0 * beta * beta;
      const double lead = parity_sign(n, k) * shifted;
      const double prime = std::abs(rep.chi_prime[k]);
      CHECK(c[k].plus == doctest::Approx((lead + std::sqrt(disc)) / (2.0 * prime)).epsilon(1e-12));
      CHECK(c[k].minus == doctest::Approx((lead - std::sqrt(disc)) / (2.0 * prime)).epsilon(1e-9));
    }
  }
}

TEST_CASE("Jacobi matrix from a discrete measure") {
  {
    const std::vector<double> nodes{-1.0, 1.0}, weights{0.5, 0.5};
    const RealTridiag t = jacobi_from_measure(nodes, weights);
    CHECK(std::abs(t.diag[0]) < 1e-15);
    CHECK(std::abs(t.diag[1]) < 1e-15);
    CHECK(t.offdiag[0] == doctest::Approx(1.0));
  }
  {
    const std::vector<double> nodes{5.0}, weights{1.0};
    const RealTridiag t = jacobi_from_measure(nodes, weights);
    CHECK(t.diag == std::vector<double>{5.0});
    CHECK(t.offdiag.empty());
  }
  {
    const std::vector<double> nodes{-std::numbers::sqrt2, 0.0, std::numbers::sqrt2}, weights{0.25, 0.5, 0.25};
    const RealTridiag t = jacobi_from_measure(nodes, weights);
    for (double c : t.diag) CHECK(std::abs(c) < 1e-14);
    for (double b : t.offdiag) CHECK(b == doctest::Approx(1.0));
  }
  SUBCASE("round trip through the eigensolver") {
    Rng rng(8);
    for (std::size_t m = 2; m <= 20; ++m) {
      RealTridiag t;
      for (std::size_t i = 0; i < m; ++i) t.diag.push_back(rng.uniform(-2.0, 2.0));
      for (std::size_t i = 0; i + 1 < m; ++i) t.offdiag.push_back(rng.uniform(0.5, 1.5));
      const SubmatrixSpectrum s = eig_endpoints(t);
      std::vector<double> w;
      for (double u : s.u_first) w.push_back(u * u);
      double total = 0.0;
      for (double x : w) total += x;
      for (double& x : w) x /= total;
      const RealTridiag back = jacobi_from_measure(s.mu, w);
      for (std::size_t i = 0; i < m; ++i) CHECK(std::abs(back.diag[i] - t.diag[i]) < 1e-9);
      for (std::size_t i = 0; i + 1 < m; ++i) CHECK(std::abs(back.offdiag[i] - t.offdiag[i]) < 1e-9);
    }
  }
  SUBCASE("errors") {
    const std::vector<double> nodes{-1.0, 1.0};
    const std::vector<double> uneven{0.5, 0.6};
    CHECK(kind_of([&] { jacobi_from_measure(nodes, uneven); }) == ErrorKind::InvalidMeasure);
    const std::vector<double> close{0.0, 1e-15};
    const std::vector<double> half{0.5, 0.5};
    CHECK(kind_of([&] { jacobi_from_measure(close, half); }) == ErrorKind::Breakdown);
  }
}

TEST_CASE("golden reconstruction") {
  const BranchSolution s = reconstruct_branch(golden(), 0);
  CHECK(s.X[0] == doctest::Approx(0.5));
  CHECK(s.X[1] == doctest::Approx(0.5));
  CHECK(s.b_n_abs == doctest::Approx(1.0));
  const PeriodicMatrixHat want{3, {0.0, 0.0}, {1.0, 1.0}, I, 0.0};
  CHECK(max_entry_difference(s.matrix, want) <= 1e-10);
  CHECK(kind_of([&] { reconstruct_branch(golden(), 1); }) == ErrorKind::InvalidArgument);

  const VerificationResidual v = verify_reconstruction(s.matrix, golden());
  CHECK(v.worst <= 1e-10);

  PeriodicMatrixHat perturbed = s.matrix;
  perturbed.b_hat[0] += 1e-3;
  CHECK(kind_of([&] { verify_reconstruction(perturbed, golden()); }) == ErrorKind::VerificationFailed);
}

TEST_CASE("translation shifts the diagonal only") {
  SpectralData d = golden();
  for (auto& l : d.lambda) l += 1.0;
  for (auto& m : d.mu) m += 1.0;
  const BranchSolution s = reconstruct_branch(d, 0);
  CHECK(s.matrix.c_hat[0] == doctest::Approx(1.0));
  CHECK(s.matrix.c_hat[1] == doctest::Approx(1.0));
  CHECK(std::abs(s.matrix.a_hat_n - 1.0) < 1e-12);
  CHECK(s.matrix.b_hat[0] == doctest::Approx(1.0));
  CHECK(std::abs(s.matrix.b_hat_n - I) < 1e-12);
}

TEST_CASE("real beta enumerates four distinct verified branches") {
  const Enumeration e = enumerate_solutions(quarter());
  REQUIRE(e.solutions.size() == 4);
  CHECK(e.distinctness_checked);
  CHECK(e.pairwise_distinct);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(e.solutions[i].selector == i);
    CHECK(e.solutions[i].verification.worst <= 1e-8);
    CHECK(e.solutions[i].matrix.b_hat_n.imag() == 0.0);
    CHECK(e.solutions[i].matrix.b_hat.back() > 0.0);
  }
  CHECK(max_entry_difference(e.solutions[0].matrix, e.solutions[3].matrix) > 1e-3);
}

TEST_CASE("thread count does not change results") {
  Rng rng(4);
  const auto m = random_hat(rng, 9, Regime::BetaNonrealAnNonreal);
  const SpectralData d = spectral_data_of(full_spectrum(m));
  EnumerateOptions one, many;
  many.threads = 4;
  const Enumeration a = enumerate_solutions(d, one);
  const Enumeration b = enumerate_solutions(d, many);
  REQUIRE(a.solutions.size() == b.solutions.size());
  for (std::size_t i = 0; i < a.solutions.size(); ++i)
    CHECK(max_entry_difference(a.solutions[i].matrix, b.solutions[i].matrix) == 0.0);
}

TEST_CASE("degenerate fixtures fix the branch count") {
  Rng rng(31);
  for (std::size_t n = 3; n <= 8; ++n) {
    const cplx beta = std::polar(rng.uniform(0.5, 1.5), rng.uniform(0.3, 2.8));
    std::vector<bool> one(n - 1, false);
    one[n / 2 - 1] = true;
    const SpectralData d1 = oracle::degenerate_fixture(rng, n, beta, 0.3, one);
    const Enumeration e1 = enumerate_solutions(d1);
    CHECK(e1.report.conditions.m == 1);
    CHECK(e1.solutions.size() == (std::size_t{1} << (n - 2)));

    const SpectralData dall = oracle::degenerate_fixture(rng, n, beta, -0.2, std::vector<bool>(n - 1, true));
    const Enumeration eall = enumerate_solutions(dall);
    CHECK(eall.report.conditions.m == n - 1);
    CHECK(eall.solutions.size() == 1);
  }
}

TEST_CASE("sum rule and round trip on random matrices") {
  Rng rng(55);
  for (int trial = 0; trial < 24; ++trial) {
    const auto m = random_hat(rng, size_for_index(trial) > 9 ? 9 : size_for_index(trial), regime_for_index(trial));
    const SpectralData d = spectral_data_of(full_spectrum(m));
    const Enumeration e = enumerate_solutions(d);
    const auto c = branch_candidates(d, e.report);
    double total = 0.0;
    for (const auto& pair : c) total += pair.plus + pair.minus;
    double best = 1e300;
    for (const auto& s : e.solutions) {
      const double bn = std::abs(s.matrix.b_hat_n), bl = std::abs(s.matrix.b_hat.back());
      CHECK(bn * bn + bl * bl == doctest::Approx(total).epsilon(1e-8));
      double wsum = 0.0;
      for (double w : s.weights) wsum += w;
      CHECK(std::abs(wsum - 1.0) <= 1e-10);
      best = std::min(best, max_entry_difference(s.matrix, m));
    }
    CHECK(best <= 1e-7 * 2.0);
  }
}

TEST_CASE("canonical form shares the spectral data") {
  Rng rng(66);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_general(rng, 3 + trial % 9, regime_for_index(trial));
    const SpectralData a = spectral_data_of(full_spectrum(g));
    const SpectralData b = spectral_data_of(full_spectrum(canonicalize(g)));
    CHECK(oracle::hausdorff(a.lambda, b.lambda) <= 1e-9);
    for (std::size_t k = 0; k < a.mu.size(); ++k) CHECK(std::abs(a.mu[k] - b.mu[k]) <= 1e-9);
    CHECK(std::abs(a.beta - b.beta) <= 1e-9);
  }
}
