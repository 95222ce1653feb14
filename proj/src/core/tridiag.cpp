#include "tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "errors.hpp"

namespace specband {

PhaseReduction phase_reduce(const PeriodicMatrixGeneral& m) {
  const std::size_t size = m.n - 1;
  PhaseReduction out;
  out.real.diag = m.c;
  out.real.offdiag.resize(size - 1);
  out.phases.resize(size);
  out.phases[0] = 1.0;
  for (std::size_t k = 0; k + 1 < size; ++k) {
    const double mag = std::abs(m.b[k]);
    out.real.offdiag[k] = mag;
    out.phases[k + 1] = out.phases[k] * (mag / m.b[k]);
  }
  return out;
}

TridiagEigen tridiag_eigen(const RealTridiag& t) {
  const int n = static_cast<int>(t.diag.size());
  if (n == 0) fail(ErrorKind::InvalidArgument, "empty tridiagonal matrix");
  if (t.offdiag.size() + 1 != t.diag.size())
    fail(ErrorKind::InvalidArgument, "offdiag must have one entry fewer than diag");

  std::vector<double> d = t.diag;
  std::vector<double> e(static_cast<std::size_t>(n), 0.0);
  std::copy(t.offdiag.begin(), t.offdiag.end(), e.begin());
  // z[row][col], columns are eigenvectors
  std::vector<std::vector<double>> z(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) z[i][i] = 1.0;

  constexpr int kMaxSweeps = 60;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxSweeps)
          fail(ErrorKind::NonConvergence, "tridiagonal QL did not converge for eigenvalue " + std::to_string(l));
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (int k = 0; k < n; ++k) {
            f = z[k][i + 1];
            z[k][i + 1] = s * z[k][i] + c * f;
            z[k][i] = c * z[k][i] - s * f;
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }

  std::vector<std::size_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  TridiagEigen out;
  out.values.resize(order.size());
  out.vectors.resize(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.values[k] = d[order[k]];
    auto& v = out.vectors[k];
    v.resize(order.size());
    for (std::size_t row = 0; row < order.size(); ++row) v[row] = z[row][order[k]];
    if (v[0] < 0.0)
      for (double& x : v) x = -x;
  }
  return out;
}

std::vector<double> derivative_at_nodes(const std::vector<double>& values) {
  std::vector<double> out(values.size(), 1.0);
  for (std::size_t k = 0; k < values.size(); ++k)
    for (std::size_t r = 0; r < values.size(); ++r)
      if (r != k) out[k] *= values[k] - values[r];
  return out;
}

SubmatrixSpectrum eig_endpoints(const RealTridiag& t) {
  for (std::size_t k = 0; k < t.offdiag.size(); ++k)
    if (!(t.offdiag[k] > 0.0))
      fail(ErrorKind::InvalidArgument, "tridiagonal matrix is reduced at offdiag " + std::to_string(k));

  TridiagEigen eig = tridiag_eigen(t);

  double norm = 0.0;
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    double row = std::abs(t.diag[i]);
    if (i > 0) row += t.offdiag[i - 1];
    if (i < t.offdiag.size()) row += t.offdiag[i];
    norm = std::max(norm, row);
  }
  for (std::size_t k = 1; k < eig.values.size(); ++k)
    if (eig.values[k] - eig.values[k - 1] < 1e-10 * norm)
      fail(ErrorKind::NonConvergence, "submatrix eigenvalues " + std::to_string(k - 1) + " and " +
                                          std::to_string(k) + " collapsed");

  SubmatrixSpectrum out;
  out.mu = eig.values;
  out.u_first.reserve(eig.values.size());
  out.u_last.reserve(eig.values.size());
  for (const auto& v : eig.vectors) {
    if (v.front() == 0.0 || v.back() == 0.0)
      fail(ErrorKind::NonConvergence, "eigenvector endpoint vanished; matrix numerically reduced");
    out.u_first.push_back(v.front());
    out.u_last.push_back(v.back());
  }
  out.chi_prime_at_mu = derivative_at_nodes(out.mu);
  return out;
}

}  // namespace specband
