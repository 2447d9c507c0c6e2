#pragma once

#include "recon/geometry.hpp"

namespace recon {

// Vertex set of a regular simplex: d+1 points, all pairwise distances equal
// to `edge` within 1e-9.
struct RegularSimplex {
  PointSet vertices;
  double edge = 1.0;

  RegularSimplex(PointSet v, double e);

  int dim() const { return static_cast<int>(vertices[0].size()); }
};

struct FitResult {
  RegularSimplex simplex;
  double residual = 0.0;  // Hausdorff distance between input and fit
};

struct BilipschitzCheck {
  double beta = 0.0;    // diam(union) - 1, clamped at 0
  double dist_h = 0.0;  // Hausdorff distance between the vertex sets
  bool applicable = false;  // beta <= beta_test(d)
  bool holds = false;       // dist_h <= (d+1) d^2 beta + 1e-9 when applicable
};

// Regime threshold for the bilipschitz comparison: the two-sided bound is
// only asserted for unions this close to diameter 1.
double beta_test(int d);

// Nearest regular simplex of the given edge length under Euclidean motions:
// centroid translation + orthogonal alignment (SVD of the cross-covariance),
// vertex correspondence by greedy nearest neighbor with a transposition
// improvement pass, exhaustive permutations as a fallback for d <= 4.
FitResult fit_regular(const PointSet& witness, double edge);

// Probe for the equality case diam(union) = 1  =>  simplices coincide.
// True iff diam <= 1 + 1e-9 implies dist_H <= 1e-6 (vacuously true otherwise).
bool check_uniqueness(const RegularSimplex& a, const RegularSimplex& b);

// Two-sided comparison between dist_H and the excess cross-diameter
// beta = diam(union) - 1 for unit-edge simplices.
BilipschitzCheck check_bilipschitz(const RegularSimplex& a,
                                   const RegularSimplex& b);

// Rotates a unit-edge simplex with vertex 0 at the origin by angle theta in
// the plane spanned by v and the apex vertex x1 (which must attain the
// maximal edge inner product with v and satisfy <v, x1> > cos(theta)), tilting
// x1 away from v. Identity on the orthogonal complement. Requires
// theta <= pi/18. If v is parallel to x1 the plane is span{v, e_k} for the
// smallest coordinate axis not parallel to v.
RegularSimplex rotate_simplex(const RegularSimplex& delta, const Direction& v,
                              double theta);

}  // namespace recon
