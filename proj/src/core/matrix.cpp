#include "matrix.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace specband {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void check_size(std::size_t n) {
  if (n < 3) fail(ErrorKind::InvalidMatrix, "n must be at least 3 (got " + std::to_string(n) + ")");
}

}  // namespace

PeriodicMatrixGeneral PeriodicMatrixHat::to_general() const {
  PeriodicMatrixGeneral g;
  g.n = n;
  g.c = c_hat;
  g.b.reserve(b_hat.size() + 1);
  for (double v : b_hat) g.b.emplace_back(v);
  g.b.push_back(b_hat_n);
  g.a_n = a_hat_n;
  return g;
}

void validate_general(const PeriodicMatrixGeneral& m) {
  check_size(m.n);
  if (m.c.size() != m.n - 1)
    fail(ErrorKind::InvalidMatrix, "c must have n-1 = " + std::to_string(m.n - 1) + " entries");
  if (m.b.size() != m.n)
    fail(ErrorKind::InvalidMatrix, "b must have n = " + std::to_string(m.n) + " entries");
  for (std::size_t k = 0; k < m.c.size(); ++k)
    if (!std::isfinite(m.c[k])) fail(ErrorKind::InvalidMatrix, "c[" + std::to_string(k) + "] is not finite");
  for (std::size_t k = 0; k < m.b.size(); ++k) {
    if (!finite(m.b[k])) fail(ErrorKind::InvalidMatrix, "b[" + std::to_string(k) + "] is not finite");
    if (m.b[k] == 0.0) fail(ErrorKind::InvalidMatrix, "b[" + std::to_string(k) + "] is zero");
  }
  if (!finite(m.a_n)) fail(ErrorKind::InvalidMatrix, "a_n is not finite");
}

void validate_hat(const PeriodicMatrixHat& m) {
  check_size(m.n);
  if (m.c_hat.size() != m.n - 1)
    fail(ErrorKind::InvalidMatrix, "c_hat must have n-1 = " + std::to_string(m.n - 1) + " entries");
  if (m.b_hat.size() != m.n - 1)
    fail(ErrorKind::InvalidMatrix, "b_hat must have n-1 = " + std::to_string(m.n - 1) + " entries");
  for (std::size_t k = 0; k < m.c_hat.size(); ++k)
    if (!std::isfinite(m.c_hat[k]))
      fail(ErrorKind::InvalidMatrix, "c_hat[" + std::to_string(k) + "] is not finite");
  for (std::size_t k = 0; k < m.b_hat.size(); ++k) {
    if (!std::isfinite(m.b_hat[k]))
      fail(ErrorKind::InvalidMatrix, "b_hat[" + std::to_string(k) + "] is not finite");
    if (m.b_hat[k] == 0.0) fail(ErrorKind::InvalidMatrix, "b_hat[" + std::to_string(k) + "] is zero");
  }
  if (!finite(m.b_hat_n)) fail(ErrorKind::InvalidMatrix, "b_hat_n is not finite");
  if (m.b_hat_n == 0.0) fail(ErrorKind::InvalidMatrix, "b_hat_n is zero");
  if (!finite(m.a_hat_n)) fail(ErrorKind::InvalidMatrix, "a_hat_n is not finite");
}

Beta beta_of(const PeriodicMatrixGeneral& m, double tol_base) {
  cplx product(1.0);
  for (const auto& b : m.b) product *= b;
  return {product, std::abs(product.imag()) <= tol_base * std::abs(product)};
}

Beta beta_of(const PeriodicMatrixHat& m, double tol_base) {
  cplx product = m.b_hat_n;
  for (double b : m.b_hat) product *= b;
  return {product, std::abs(product.imag()) <= tol_base * std::abs(product)};
}

PeriodicMatrixHat canonicalize(const PeriodicMatrixGeneral& m) {
  validate_general(m);
  PeriodicMatrixHat hat;
  hat.n = m.n;
  hat.c_hat = m.c;
  hat.b_hat.resize(m.n - 1);
  // beta / prod|b_k| = b_n * prod (b_k / |b_k|) keeps the magnitudes out of the product.
  cplx corner = m.b[m.n - 1];
  for (std::size_t k = 0; k + 1 < m.n; ++k) {
    const double mag = std::abs(m.b[k]);
    hat.b_hat[k] = mag;
    corner *= m.b[k] / mag;
  }
  hat.b_hat_n = corner;
  hat.a_hat_n = m.a_n;
  return hat;
}

DenseMatrix to_dense(const PeriodicMatrixGeneral& m) {
  const std::size_t n = m.n;
  DenseMatrix a(n);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    a(k, k) = m.c[k];
    a(k, k + 1) = m.b[k];
    a(k + 1, k) = std::conj(m.b[k]);
  }
  a(n - 1, n - 1) = m.a_n;
  a(0, n - 1) = std::conj(m.b[n - 1]);
  a(n - 1, 0) = m.b[n - 1];
  return a;
}

ComplexPolynomial charpoly_oracle(const PeriodicMatrixGeneral& m) {
  validate_general(m);
  const std::size_t n = m.n;
  if (n > kOracleMaxSize)
    fail(ErrorKind::InvalidArgument, "charpoly_oracle supports n <= " + std::to_string(kOracleMaxSize));
  const DenseMatrix a = to_dense(m);

  std::vector<cplx> coeffs(n + 1, cplx(0.0));
  coeffs[0] = 1.0;
  DenseMatrix acc(n);  // M_k, starting from M_1 = I
  for (std::size_t i = 0; i < n; ++i) acc(i, i) = 1.0;
  DenseMatrix product(n);
  for (std::size_t k = 1; k <= n; ++k) {
    cplx trace = 0.0;
    double peak = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        cplx sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) sum += a(r, j) * acc(j, c);
        product(r, c) = sum;
        peak = std::max(peak, std::abs(sum));
      }
      trace += product(r, r);
    }
    coeffs[k] = -trace / static_cast<double>(k);
    if (!(peak <= 1e300) || !(std::abs(coeffs[k]) <= 1e300))
      fail(ErrorKind::OracleOverflow, "Faddeev-LeVerrier intermediate exceeds 1e300 at step " + std::to_string(k));
    acc = product;
    for (std::size_t i = 0; i < n; ++i) acc(i, i) += coeffs[k];
  }
  return ComplexPolynomial(std::move(coeffs));
}

}  // namespace specband
