#pragma once

namespace recon {

// Global numeric tolerances. kEpsNum is used for containment/equality
// decisions on points and radii; kEpsUnit for unit-norm checks.
inline constexpr double kEpsNum = 1e-9;
inline constexpr double kEpsUnit = 1e-12;

// Regular-simplex construction accuracy (pairwise edges, tight frame).
inline constexpr double kEpsSimplex = 1e-10;

// Angular threshold below which two slab directions are treated as parallel
// when pruning near-duplicate constraints.
inline constexpr double kEpsParallel = 1e-8;

}  // namespace recon
