#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "direct.hpp"
#include "inverse.hpp"
#include "matrix.hpp"
#include "poly.hpp"
#include "random_instances.hpp"
#include "tridiag.hpp"

namespace oracle {

using specband::cplx;

// Number of eigenvalues of t strictly below x (Sturm count on the LDL^T pivots).
inline std::size_t sturm_count(const specband::RealTridiag& t, double x) {
  std::size_t count = 0;
  double q = 1.0;
  const double tiny = std::numeric_limits<double>::min();
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    const double off = i == 0 ? 0.0 : t.offdiag[i - 1];
    q = t.diag[i] - x - (i == 0 ? 0.0 : off * off / q);
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

inline double inf_norm(const specband::RealTridiag& t) {
  double norm = 0.0;
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    double row = std::abs(t.diag[i]);
    if (i > 0) row += std::abs(t.offdiag[i - 1]);
    if (i + 1 < t.diag.size()) row += std::abs(t.offdiag[i]);
    norm = std::max(norm, row);
  }
  return norm;
}

// Eigenvalues by bisection on Gershgorin bounds, ascending.
inline std::vector<double> bisection_eigenvalues(const specband::RealTridiag& t) {
  const double radius = inf_norm(t) + 1.0;
  std::vector<double> out;
  for (std::size_t k = 0; k < t.diag.size(); ++k) {
    double lo = -radius, hi = radius;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      if (sturm_count(t, mid) > k)
        hi = mid;
      else
        lo = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

inline Eigen::MatrixXcd dense(const specband::PeriodicMatrixGeneral& m) {
  const std::size_t n = m.n;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t k = 0; k + 1 < n; ++k) a(k, k) = m.c[k];
  a(n - 1, n - 1) = m.a_n;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    a(k, k + 1) = m.b[k];
    a(k + 1, k) = std::conj(m.b[k]);
  }
  a(n - 1, 0) = m.b[n - 1];
  a(0, n - 1) = std::conj(m.b[n - 1]);
  return a;
}

inline std::vector<cplx> dense_eigenvalues(const specband::PeriodicMatrixGeneral& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(dense(m), false);
  std::vector<cplx> out(solver.eigenvalues().data(), solver.eigenvalues().data() + m.n);
  return out;
}

// Roots through the eigenvalues of the companion matrix.
inline std::vector<cplx> companion_roots(const specband::ComplexPolynomial& p) {
  const auto& c = p.coeffs();
  const std::size_t d = p.degree();
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
  for (std::size_t j = 0; j < d; ++j) comp(0, j) = -c[j + 1] / c[0];
  for (std::size_t i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
  return {solver.eigenvalues().data(), solver.eigenvalues().data() + d};
}

// Largest distance from a point of one set to the nearest point of the other.
inline double hausdorff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  auto side = [](const std::vector<cplx>& from, const std::vector<cplx>& to) {
    double worst = 0.0;
    for (const auto& x : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& y : to) best = std::min(best, std::abs(x - y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(side(a, b), side(b, a));
}

// Spectral data with prescribed per-index roots X_k. Indices in `degenerate`
// get the double root |beta| / |chi'(mu_k)|, the rest a root pushed away from
// it by a factor in [1.5, 2.5] or its reciprocal.
inline specband::SpectralData degenerate_fixture(specband::Rng& rng, std::size_t n, cplx beta, double a_n,
                                                 const std::vector<bool>& degenerate) {
  using namespace specband;
  std::vector<double> mu;
  double x = rng.uniform(-2.0, -1.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    mu.push_back(x);
    x += rng.uniform(0.5, 1.5);
  }
  const std::vector<double> prime = derivative_at_nodes(mu);
  const double abs_beta = std::abs(beta);
  std::vector<double> chi(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double tangent = abs_beta / std::abs(prime[k]);
    double X = tangent;
    if (!degenerate[k]) {
      const double factor = rng.uniform(1.5, 2.5);
      X = rng.coin() ? tangent * factor : tangent / factor;
    }
    const double Y = abs_beta * abs_beta / (prime[k] * prime[k] * X);
    chi[k] = -prime[k] * (X + Y) - 2.0 * beta.real();
  }
  // chi_n = prod (z - mu_k) (z - a_n) + Lagrange interpolant of chi at mu.
  std::vector<cplx> nodes(mu.begin(), mu.end());
  ComplexPolynomial chi_n = poly_from_roots(nodes) * ComplexPolynomial::monomial_root(a_n);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::vector<cplx> others;
    for (std::size_t j = 0; j + 1 < n; ++j)
      if (j != k) others.emplace_back(mu[j]);
    chi_n = chi_n + poly_from_roots(others) * cplx(chi[k] / prime[k]);
  }
  SpectralData d;
  d.lambda = companion_roots(chi_n);
  // Newton on chi_n / prod(z - mu) sharpens the companion roots.
  for (auto& l : d.lambda) {
    for (int it = 0; it < 8; ++it) {
      cplx g = l - a_n, dg = 1.0;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        const cplx inv = 1.0 / (l - mu[k]);
        const cplx c = chi[k] / prime[k];
        g += c * inv;
        dg -= c * inv * inv;
      }
      const cplx step = g / dg;
      l -= step;
      if (std::abs(step) <= 1e-16 * (1.0 + std::abs(l))) break;
    }
  }
  for (auto& l : d.lambda)
    if (std::abs(l.imag()) < 1e-12) l = l.real();
  std::sort(d.lambda.begin(), d.lambda.end(),
            [](cplx a, cplx b) { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); });
  d.mu = mu;
  d.beta = beta;
  return d;
}

}  // namespace oracle
