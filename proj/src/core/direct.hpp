#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "poly.hpp"
#include "tolerances.hpp"
#include "tridiag.hpp"

namespace specband {

enum class Regime {
  BetaNonrealAnReal,
  BetaNonrealAnNonreal,
  BetaRealAnReal,
  BetaRealAnNonreal,
};

const char* to_string(Regime regime) noexcept;
Regime classify_regime(bool beta_real, bool a_n_real) noexcept;
inline bool beta_is_real(Regime r) noexcept {
  return r == Regime::BetaRealAnReal || r == Regime::BetaRealAnNonreal;
}
inline bool a_n_is_real(Regime r) noexcept {
  return r == Regime::BetaNonrealAnReal || r == Regime::BetaRealAnReal;
}

struct Check {
  std::string name;
  bool pass = false;
  std::string witness;
};

struct Residues {
  std::vector<double> alpha;           // alpha_k >= 0
  std::vector<std::size_t> zero_set;   // indices with alpha_k = 0 within tolerance
};

// (-1)^{n-k} for the zero-based index k of an n x n problem.
inline int parity_sign(std::size_t n, std::size_t k) noexcept { return ((n - k - 1) % 2 == 0) ? 1 : -1; }

// Per-index evaluation of the necessary conditions on chi_n(mu_k).
//   nonreal beta: (-1)^{n-k} chi > 0 and |chi + 2 Re beta| >= 2|beta|
//   real beta:    (-1)^{n-k} chi >= 0 and |chi| >= 4 (-1)^{n-k-1} beta
struct ConditionRow {
  std::size_t k = 0;
  cplx chi;
  double sign_margin = 0.0;
  double bound_margin = 0.0;
  bool sign_equality = false;
  bool bound_equality = false;
  bool chi_real = true;
  bool pass = false;
};

struct NecessaryConditions {
  std::vector<ConditionRow> rows;
  double tau_eq = 0.0;
  bool beta_real = false;
  std::size_t m = 0;   // bound equalities for nonreal beta
  std::size_t m1 = 0;  // sign equalities for real beta
  std::size_t m2 = 0;  // bound equalities for real beta
  bool pass = false;

  std::size_t degenerate_count() const noexcept { return beta_real ? m1 + m2 : m; }
  bool is_degenerate(std::size_t k) const noexcept;
};

// tau_eq = tol_base * max(1, max_k |chi_n(mu_k)|, 2|beta|)
double equality_tolerance(std::span<const cplx> chi_at_mu, cplx beta, double tol_base);

// imag_scale[k], when given, widens the realness test on chi_n(mu_k) to
// tol_base * imag_scale[k] (rounding scale of the evaluation).
NecessaryConditions check_necessary_conditions(std::span<const cplx> chi_at_mu, const Beta& beta,
                                               double tol_base = kTolBase,
                                               std::span<const double> imag_scale = {});

struct DirectReport {
  std::size_t n = 0;
  Beta beta;
  cplx a_n;
  Regime regime = Regime::BetaNonrealAnReal;
  std::vector<cplx> lambda;       // ordered by (real, imag)
  std::vector<int> multiplicity;  // cluster size per lambda entry
  SubmatrixSpectrum submatrix;
  std::vector<cplx> u_first;      // phase-restored eigenvector endpoints of J_{n-1}
  std::vector<cplx> u_last;
  Residues residues;
  ComplexPolynomial chi_n;
  ComplexPolynomial chi_n_minus_1;
  std::vector<cplx> chi_n_at_mu;
  NecessaryConditions necessary;
  double tol_base = kTolBase;
  double spectral_scale = 1.0;  // max(1, max|lambda|, max|mu|)
  double root_residual = 0.0;
  std::vector<Check> checks;

  bool pass() const noexcept;
};

Residues residues_alpha(const PeriodicMatrixGeneral& m, const SubmatrixSpectrum& s, double tol_base = kTolBase);

// chi_n = chi_{n-1} (z - a_n) - sum_k alpha_k prod_{j != k} (z - mu_j)
ComplexPolynomial assemble_charpoly(std::span<const double> mu, std::span<const double> alpha, cplx a_n);

DirectReport full_spectrum(const PeriodicMatrixGeneral& m, double tol_base = kTolBase);
DirectReport full_spectrum(const PeriodicMatrixHat& m, double tol_base = kTolBase);

// Appends the regime-specific localization checks to report.checks.
void classify_and_verify(DirectReport& report);

}  // namespace specband
