#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace specband {

using cplx = std::complex<double>;

// Dense polynomial with complex coefficients stored highest degree first.
// The zero polynomial is represented by a single zero coefficient.
class ComplexPolynomial {
 public:
  ComplexPolynomial();
  explicit ComplexPolynomial(std::vector<cplx> coeffs);

  static ComplexPolynomial constant(cplx value);
  static ComplexPolynomial monomial_root(cplx root);  // (z - root)

  const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  bool is_zero() const noexcept;
  cplx leading() const noexcept { return coeffs_.front(); }

  // Coefficient of z^power; zero above the degree.
  cplx coeff_of_power(std::size_t power) const noexcept;

  // Largest coefficient magnitude.
  double scale() const noexcept;

  ComplexPolynomial operator+(const ComplexPolynomial& other) const;
  ComplexPolynomial operator-(const ComplexPolynomial& other) const;
  ComplexPolynomial operator*(const ComplexPolynomial& other) const;
  ComplexPolynomial operator*(cplx factor) const;

  bool operator==(const ComplexPolynomial&) const = default;

 private:
  void trim();

  std::vector<cplx> coeffs_;
};

struct PolyValue {
  cplx value;
  cplx derivative;
};

ComplexPolynomial poly_from_roots(std::span<const cplx> roots);

// Horner evaluation of p and p' at z.
PolyValue poly_eval(const ComplexPolynomial& p, cplx z);

// sum_i |c_i| |z|^i, the rounding-error scale of evaluating p at z.
double poly_abs_bound(const ComplexPolynomial& p, cplx z);

inline constexpr double kDefaultRootTol = 1e-10;
inline constexpr int kRootMaxIterations = 200;
inline constexpr double kRootClusterRel = 1e-6;

struct RootSet {
  // All roots with multiplicity, ordered by (real, imag).
  std::vector<cplx> roots;
  // multiplicity[i] is the size of the cluster roots[i] belongs to.
  std::vector<int> multiplicity;
  // max_j |p(z_j)| / sum_i |c_i||z_j|^i
  double residual = 0.0;
  int iterations = 0;
};

// Aberth-Ehrlich simultaneous iteration. Roots closer than
// kRootClusterRel * max(1, max|z|) are merged into their mean.
// Throws NonConvergence when the residual stays above tol.
RootSet poly_roots(const ComplexPolynomial& p, double tol = kDefaultRootTol);

// psi with psi(z) / prod_k (z - nodes[k]) = sum_k weights[k] / (z - nodes[k]).
ComplexPolynomial numerator_from_partial_fractions(std::span<const double> nodes,
                                                   std::span<const double> weights);

}  // namespace specband
