#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "errors.hpp"
#include "oracles.hpp"
#include "random_instances.hpp"
#include "tridiag.hpp"

using namespace specband;

namespace {

RealTridiag random_tridiag(Rng& rng, std::size_t m) {
  RealTridiag t;
  for (std::size_t i = 0; i < m; ++i) t.diag.push_back(rng.uniform(-3.0, 3.0));
  for (std::size_t i = 0; i + 1 < m; ++i) t.offdiag.push_back(rng.uniform(0.1, 2.0));
  return t;
}

}  // namespace

TEST_CASE("phase reduction is a diagonal unitary similarity") {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_general(rng, 3 + trial % 9, regime_for_index(trial));
    const PhaseReduction r = phase_reduce(g);
    const std::size_t m = g.n - 1;
    CHECK(r.phases[0] == cplx(1.0));
    for (std::size_t k = 0; k + 1 < m; ++k) {
      CHECK(r.real.offdiag[k] == doctest::Approx(std::abs(g.b[k])));
      // (D* J D)_{k,k+1} = conj(d_k) b_k d_{k+1}
      const cplx entry = std::conj(r.phases[k]) * g.b[k] * r.phases[k + 1];
      CHECK(std::abs(entry - r.real.offdiag[k]) < 1e-14);
    }
    for (const auto& d : r.phases) CHECK(std::abs(std::abs(d) - 1.0) < 1e-14);
  }
}

TEST_CASE("eigenvalues agree with Sturm bisection") {
  Rng rng(21);
  for (std::size_t m = 1; m <= 40; ++m) {
    const RealTridiag t = random_tridiag(rng, m);
    const TridiagEigen e = tridiag_eigen(t);
    const auto want = oracle::bisection_eigenvalues(t);
    const double norm = oracle::inf_norm(t);
    for (std::size_t k = 0; k < m; ++k) CHECK(std::abs(e.values[k] - want[k]) <= 1e-12 * norm);
  }
}

TEST_CASE("eigenvectors are orthonormal and satisfy T v = lambda v") {
  Rng rng(22);
  const RealTridiag t = random_tridiag(rng, 17);
  const TridiagEigen e = tridiag_eigen(t);
  const std::size_t m = t.diag.size();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      double dot = 0.0;
      for (std::size_t i = 0; i < m; ++i) dot += e.vectors[a][i] * e.vectors[b][i];
      CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-13);
    }
    for (std::size_t i = 0; i < m; ++i) {
      double tv = t.diag[i] * e.vectors[a][i];
      if (i > 0) tv += t.offdiag[i - 1] * e.vectors[a][i - 1];
      if (i + 1 < m) tv += t.offdiag[i] * e.vectors[a][i + 1];
      CHECK(std::abs(tv - e.values[a] * e.vectors[a][i]) < 1e-12);
    }
  }
}

TEST_CASE("endpoints, sign law and derivative at the nodes") {
  Rng rng(23);
  for (std::size_t m = 2; m <= 40; ++m) {
    const RealTridiag t = random_tridiag(rng, m);
    const SubmatrixSpectrum s = eig_endpoints(t);
    const std::size_t n = m + 1;
    for (std::size_t k = 0; k < m; ++k) {
      CHECK(s.u_first[k] > 0.0);
      if (k > 0) CHECK(s.mu[k] > s.mu[k - 1]);
      // sign chi'_{n-1}(mu_k) = (-1)^{n-k-1} with one-based k
      const int expected = ((n - (k + 1) - 1) % 2 == 0) ? 1 : -1;
      CHECK((s.chi_prime_at_mu[k] > 0.0 ? 1 : -1) == expected);
    }
  }
  const auto d = derivative_at_nodes({-1.0, 1.0, 2.0});
  CHECK(d[0] == doctest::Approx(6.0));
  CHECK(d[1] == doctest::Approx(-2.0));
  CHECK(d[2] == doctest::Approx(3.0));
}

TEST_CASE("small and reduced matrices") {
  const TridiagEigen one = tridiag_eigen({{5.0}, {}});
  CHECK(one.values == std::vector<double>{5.0});
  const TridiagEigen two = tridiag_eigen({{0.0, 0.0}, {1.0}});
  CHECK(two.values[0] == doctest::Approx(-1.0));
  CHECK(two.values[1] == doctest::Approx(1.0));

  try {
    eig_endpoints({{0.0, 1.0, 2.0}, {1.0, 0.0}});
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArgument);
  }
}
