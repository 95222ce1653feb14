#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "direct.hpp"
#include "matrix.hpp"
#include "tolerances.hpp"
#include "tridiag.hpp"

namespace specband {

// Spectra of the full matrix and of its leading (n-1) block, plus the coupling
// product beta.
struct SpectralData {
  std::vector<cplx> lambda;  // n
  std::vector<double> mu;    // n-1, strictly increasing
  cplx beta;

  std::size_t n() const noexcept { return lambda.size(); }
};

// Throws InvalidData on structural problems (sizes, ordering, zero beta).
void validate_data(const SpectralData& d);

SpectralData spectral_data_of(const DirectReport& report);

struct FeasibilityReport {
  Regime regime = Regime::BetaNonrealAnReal;
  bool pass = false;
  Beta beta;
  cplx a_hat_n;                     // sum(lambda) - sum(mu)
  NecessaryConditions conditions;   // chi_n(mu_k), margins, equality flags, m / m1 / m2
  std::vector<double> chi_prime;    // prod_{r != k} (mu_k - mu_r)
  std::vector<Check> checks;        // location hypotheses of the regime
  std::uint64_t branch_count = 0;   // 2^{n-1-m} (or 2^{n-1-m1-m2}) when pass
  double tol_base = kTolBase;
  double spectral_scale = 1.0;

  std::size_t free_indices() const noexcept { return conditions.rows.size() - conditions.degenerate_count(); }
};

FeasibilityReport feasibility_check(const SpectralData& d, double tol_base = kTolBase);

// Both roots of the per-index quadratic
//   chi'^2 X^2 + (chi + 2 Re beta) chi' X + |beta|^2 = 0.
struct BranchPair {
  double plus = 0.0;   // root with +sqrt(discriminant)
  double minus = 0.0;  // root with -sqrt(discriminant)
  bool degenerate = false;
};

std::vector<BranchPair> branch_candidates(const SpectralData& d, const FeasibilityReport& report);

// Jacobi matrix (positive off-diagonal) whose spectral measure at e_1 is
// sum_k weights[k] delta(nodes[k]). Discrete Stieltjes / Lanczos recurrence
// with a full reorthogonalization pass.
RealTridiag jacobi_from_measure(std::span<const double> nodes, std::span<const double> weights);

struct VerificationResidual {
  double lambda_distance = 0.0;  // Hausdorff, relative to the spectral scale
  double mu_distance = 0.0;
  double beta_residual = 0.0;    // |beta_hat - beta| / |beta|
  double worst = 0.0;
};

struct BranchSolution {
  std::uint64_t selector = 0;
  std::vector<int> choice;       // per index: 0 plus root, 1 minus root, -1 degenerate
  std::vector<double> X;         // |b_n u_k1|^2
  std::vector<double> Y;         // complementary root, |b_{n-1} u_{k,n-1}|^2
  double b_n_abs = 0.0;
  double b_n_minus_1_abs_formula = 0.0;  // sqrt(sum Y)
  std::vector<double> weights;   // |u_k1|^2
  PeriodicMatrixHat matrix;
  VerificationResidual verification;
};

BranchSolution reconstruct_branch(const SpectralData& d, const FeasibilityReport& report,
                                  std::span<const BranchPair> candidates, std::uint64_t selector);
BranchSolution reconstruct_branch(const SpectralData& d, std::uint64_t selector, double tol_base = kTolBase);

// Residuals of a candidate matrix against spectral data; no throw on mismatch.
VerificationResidual reconstruction_residual(const PeriodicMatrixHat& m, const SpectralData& d,
                                             double tol_base = kTolBase);

// Throws VerificationFailed when the worst residual exceeds tol.
VerificationResidual verify_reconstruction(const PeriodicMatrixHat& m, const SpectralData& d,
                                           double tol = kVerifyTol, double tol_base = kTolBase);

struct EnumerateOptions {
  double tol_base = kTolBase;
  double verify_tol = kVerifyTol;
  unsigned threads = 1;
  std::uint64_t max_branches = std::uint64_t{1} << 16;
  double distinct_tol = 1e-8;
};

struct Enumeration {
  FeasibilityReport report;
  std::vector<BranchSolution> solutions;  // ordered by selector
  bool distinctness_checked = false;
  bool pairwise_distinct = false;
  double min_pairwise_distance = 0.0;
};

Enumeration enumerate_solutions(const SpectralData& d, const EnumerateOptions& options = {});

// Largest entrywise difference between two subclass matrices of equal size.
double max_entry_difference(const PeriodicMatrixHat& a, const PeriodicMatrixHat& b);

}  // namespace specband
