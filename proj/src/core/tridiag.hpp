#pragma once

#include <cstddef>
#include <vector>

#include "matrix.hpp"

namespace specband {

// Unreduced real symmetric tridiagonal matrix.
struct RealTridiag {
  std::vector<double> diag;     // size m
  std::vector<double> offdiag;  // size m-1, all > 0
};

struct PhaseReduction {
  RealTridiag real;
  // D = diag(phases) with D^* J_{n-1} D = real. Eigenvectors of J_{n-1} are
  // D times the real ones.
  std::vector<cplx> phases;
};

// Spectrum of the leading (n-1) block with first/last eigenvector components.
// Eigenvectors are normalized so the first component is positive.
struct SubmatrixSpectrum {
  std::vector<double> mu;               // strictly increasing
  std::vector<double> u_first;          // > 0
  std::vector<double> u_last;           // signed
  std::vector<double> chi_prime_at_mu;  // prod_{r != k} (mu_k - mu_r)
};

PhaseReduction phase_reduce(const PeriodicMatrixGeneral& m);

// Eigenvalues ascending plus the full orthonormal eigenvectors, stored column
// k = vectors[k]. Implicit QL with Wilkinson-type shift.
struct TridiagEigen {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;
};
TridiagEigen tridiag_eigen(const RealTridiag& t);

SubmatrixSpectrum eig_endpoints(const RealTridiag& t);

// prod_{r != k} (values[k] - values[r]) for every k.
std::vector<double> derivative_at_nodes(const std::vector<double>& values);

}  // namespace specband
