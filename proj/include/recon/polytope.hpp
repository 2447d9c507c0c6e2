#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "recon/geometry.hpp"

namespace recon {

struct UnboundedRegion : std::runtime_error {
  UnboundedRegion() : std::runtime_error("feasible region is unbounded") {}
};
struct InfeasibleRegion : std::runtime_error {
  InfeasibleRegion() : std::runtime_error("feasible region is empty") {}
};

// One transcript entry as a constraint: |<direction, x> - answer| <= noise.
struct Slab {
  Direction direction;
  double answer = 0.0;
  double noise = 1.0;

  Slab(Direction dir, double ans, double nz)
      : direction(std::move(dir)), answer(ans), noise(nz) {
    if (!(noise > 0.0)) throw std::invalid_argument("Slab: noise must be > 0");
  }

  bool contains(const Vector& x, double tol = kEpsNum) const {
    return std::abs(direction.dot(x) - answer) <= noise + tol;
  }
};

// Ordered intersection of slabs; order equals query order.
class SlabSystem {
 public:
  explicit SlabSystem(int dimension) : dim_(dimension) {
    if (dimension < 1) throw std::invalid_argument("SlabSystem: dimension >= 1");
  }

  void append(Slab s) {
    if (s.direction.dim() != dim_)
      throw std::invalid_argument("SlabSystem: dimension mismatch");
    slabs_.push_back(std::move(s));
  }

  int dimension() const { return dim_; }
  std::size_t size() const { return slabs_.size(); }
  const Slab& operator[](std::size_t i) const { return slabs_[i]; }
  const std::vector<Slab>& slabs() const { return slabs_; }

  bool contains(const Vector& x, double tol = kEpsNum) const {
    if (x.size() != dim_)
      throw std::invalid_argument("SlabSystem::contains: dimension mismatch");
    for (const auto& s : slabs_)
      if (!s.contains(x, tol)) return false;
    return true;
  }

  // Drops slabs whose direction is within angular kEpsParallel of a kept slab
  // (same or flipped sign) and whose interval is equal or looser.
  std::vector<Slab> pruned() const;

  // Fallback cube half-width: 10 * (|first answer| + noise + 1).
  double default_box() const;

 private:
  int dim_;
  std::vector<Slab> slabs_;
};

// V-representation snapshot of the region clipped to [-box, box]^d.
struct VertexCache {
  PointSet vertices;
  bool feasible = true;
  bool bounded = false;
  double box = 0.0;
};

// All vertices of the polytope formed by the slabs intersected with the cube
// [-box, box]^d. bounded is true iff no vertex lies on the cube boundary.
// Empty systems yield the cube itself (unbounded). Requires d <= 6.
VertexCache enumerate_vertices(const SlabSystem& sys, double box);
VertexCache enumerate_vertices(const SlabSystem& sys);  // default_box()

// Chebyshev ball of the region = MEB of the vertex set, with its support.
MebResult region_radius(const VertexCache& cache);

double region_diameter(const VertexCache& cache);

// Support of the region's MEB padded (by duplication) to exactly d+1 points.
// Empty result means "no witness": the radius is already below
// jung_constant(d) * scale.
std::optional<PointSet> extract_witness(const VertexCache& cache,
                                        double scale = 1.0);

// [min, max] of <v, x> over the region / point set.
std::pair<double, double> project_interval(const VertexCache& cache,
                                           const Direction& v);
std::pair<double, double> project_interval(const SlabSystem& sys,
                                           const Direction& v);
std::pair<double, double> project_interval(const PointSet& points,
                                           const Direction& v);

}  // namespace recon
