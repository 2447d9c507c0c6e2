#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "recon/constants.hpp"

namespace recon {

using Vector = Eigen::VectorXd;
using PointSet = std::vector<Vector>;

// Unit vector on S^{d-1}; the query object of the game.
class Direction {
 public:
  explicit Direction(Vector v) : u_(std::move(v)) {
    if (std::abs(u_.norm() - 1.0) > kEpsUnit)
      throw std::invalid_argument("Direction: vector is not unit length");
  }

  // Normalizes a nonzero vector.
  static Direction of(const Vector& v) {
    const double n = v.norm();
    if (n <= 0.0 || !std::isfinite(n))
      throw std::invalid_argument("Direction: cannot normalize zero vector");
    return Direction(Vector(v / n));
  }

  const Vector& vec() const { return u_; }
  int dim() const { return static_cast<int>(u_.size()); }
  double dot(const Vector& x) const { return u_.dot(x); }

 private:
  Vector u_;
};

struct Ball {
  Vector center;
  double radius = 0.0;

  bool contains(const Vector& p, double tol = kEpsNum) const {
    return (p - center).norm() <= radius + tol;
  }
};

struct MebResult {
  Ball ball;
  PointSet support;  // points of the input realizing the ball, |support| <= d+1
};

// Jung's constant sqrt(d / (2(d+1))): the tight radius/diameter ratio in R^d.
double jung_constant(int d);

// Vertex set of a regular simplex with d+1 vertices and the given edge length.
// If centered, the centroid is moved to the origin (for edge 1 the vertex
// matrix then satisfies X X^T = I_d / 2).
PointSet regular_simplex(int d, double edge, bool centered);

// Minimum enclosing ball via Welzl's move-to-front recursion with explicit
// circumsphere solves on the boundary set. Deterministic for a fixed seed.
MebResult min_enclosing_ball(const PointSet& points,
                             std::uint64_t shuffle_seed = 0x5eb);

// Smallest ball with all given points on its boundary (least-squares,
// minimal-norm center within the affine hull). Used by Welzl's base case and
// exposed for brute-force oracles in tests.
Ball circumsphere(const PointSet& points);

// Max pairwise distance; 0 for singletons.
double diameter(const PointSet& points);

// Pair of points attaining the diameter (indices into the set).
std::pair<int, int> diameter_pair(const PointSet& points);

// Hausdorff distance between nonempty finite sets.
double hausdorff_distance(const PointSet& a, const PointSet& b);

// Angle in [0, pi]; arccos of the clamped inner product.
double angular_distance(const Direction& u, const Direction& v);

}  // namespace recon
