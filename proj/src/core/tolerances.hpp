#pragma once

namespace specband {

// Base relative tolerance for realness and equality decisions. The CLI flag
// --tol replaces it.
inline constexpr double kTolBase = 1e-8;

// Verification of a reconstructed matrix, relative to the spectral scale.
inline constexpr double kVerifyTol = 1e-6;

}  // namespace specband
