#pragma once

#include <cstdint>
#include <vector>

#include "recon/geometry.hpp"

namespace recon {

// Angular alpha-covering of S^{d-1}. For d >= 3 the covering property is
// certified statistically; the certificate (samples, worst gap, seed) is kept
// with the net.
struct CoverNet {
  std::vector<Direction> directions;
  double alpha = 0.0;
  int dimension = 0;
  bool verified = false;
  std::uint64_t seed = 0;
  std::uint64_t certificate_samples = 0;
  double certificate_gap = 0.0;
};

struct CoverCheck {
  bool covers = false;
  double worst_gap = 0.0;
};

// d = 2: exactly ceil(pi/alpha) equally spaced directions (provably covering).
// d >= 3: greedy farthest-point selection from a quasi-uniform Gaussian pool
// until the pool's worst gap drops below alpha, then Monte Carlo verification.
// d = 1 is the two-point set {+1, -1}.
CoverNet build_cover(int d, double alpha, std::uint64_t seed = 1);

// Monte Carlo covering certificate: worst over `samples` uniform directions of
// the min angular distance to the net.
CoverCheck verify_cover(const CoverNet& net, std::uint64_t samples,
                        std::uint64_t seed = 2);

// Closed-form covering-number bounds: sqrt(d) * alpha^-(d-1) (lower) and
// 2^(2d) * alpha^-(d-1) (upper).
std::pair<double, double> covering_bounds(int d, double alpha);

// Process-wide memoized build_cover (greedy nets at d >= 3 are expensive and
// sweeps reuse them across cells).
const CoverNet& cached_cover(int d, double alpha, std::uint64_t seed);

}  // namespace recon
