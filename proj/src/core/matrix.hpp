#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "poly.hpp"
#include "tolerances.hpp"

namespace specband {

// Periodic Jacobi-type matrix of size n >= 3:
//   (k,k) = c[k] for k < n-1, (n-1,n-1) = a_n,
//   (k,k+1) = b[k], (k+1,k) = conj(b[k]) for k < n-1,
//   (n-1,0) = b[n-1], (0,n-1) = conj(b[n-1]).
// Indices are zero-based; b[n-1] is the corner coupling.
struct PeriodicMatrixGeneral {
  std::size_t n = 0;
  std::vector<double> c;  // n-1 diagonal entries
  std::vector<cplx> b;    // n couplings
  cplx a_n;
};

// Subclass with real couplings b_hat[0..n-2] and complex corner b_hat_n.
struct PeriodicMatrixHat {
  std::size_t n = 0;
  std::vector<double> c_hat;  // n-1
  std::vector<double> b_hat;  // n-1, nonzero
  cplx b_hat_n;
  cplx a_hat_n;

  PeriodicMatrixGeneral to_general() const;
};

struct Beta {
  cplx value;
  bool is_real = false;
};

// Row-major dense n x n complex matrix.
class DenseMatrix {
 public:
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, cplx(0.0)) {}

  std::size_t size() const noexcept { return n_; }
  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  cplx operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

 private:
  std::size_t n_;
  std::vector<cplx> data_;
};

// Throws InvalidMatrix naming the offending field.
void validate_general(const PeriodicMatrixGeneral& m);
void validate_hat(const PeriodicMatrixHat& m);

Beta beta_of(const PeriodicMatrixGeneral& m, double tol_base = kTolBase);
Beta beta_of(const PeriodicMatrixHat& m, double tol_base = kTolBase);

// Diagonal-unitary gauge to the subclass: b_hat_k = |b_k|, b_hat_n = beta / prod |b_k|.
PeriodicMatrixHat canonicalize(const PeriodicMatrixGeneral& m);

DenseMatrix to_dense(const PeriodicMatrixGeneral& m);

inline constexpr std::size_t kOracleMaxSize = 64;

// Characteristic polynomial det(zI - J) by the Faddeev-LeVerrier trace
// recursion on the dense matrix. Test oracle; production code assembles the
// polynomial from the submatrix spectrum instead.
ComplexPolynomial charpoly_oracle(const PeriodicMatrixGeneral& m);

}  // namespace specband
