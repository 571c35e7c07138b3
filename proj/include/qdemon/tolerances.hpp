#pragma once

namespace qdemon {

/// Max absolute deviation allowed by DensityMatrix / PureState validation.
inline constexpr double kValidationTolerance = 1e-10;
/// Eigenvalues and probabilities below this contribute nothing to an entropy.
inline constexpr double kEntropyClip = 1e-12;
/// Outcomes below this probability carry no post-measurement state.
inline constexpr double kOutcomeCutoff = 1e-12;
/// Marginal eigenvalue gap below which the MID basis is ambiguous.
inline constexpr double kDegeneracyGap = 1e-9;

}  // namespace qdemon
