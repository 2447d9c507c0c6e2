#include "recon/jung_lab.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace recon {

RegularSimplex::RegularSimplex(PointSet v, double e)
    : vertices(std::move(v)), edge(e) {
  if (vertices.empty())
    throw std::invalid_argument("RegularSimplex: empty vertex set");
  const int d = static_cast<int>(vertices[0].size());
  if (static_cast<int>(vertices.size()) != d + 1)
    throw std::invalid_argument("RegularSimplex: needs d+1 vertices");
  const double tol = 1e-9 * (1.0 + edge);
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (std::abs((vertices[i] - vertices[j]).norm() - edge) > tol)
        throw std::invalid_argument("RegularSimplex: vertices not regular");
}

double beta_test(int d) {
  if (d == 2) return 1e-3;
  if (d == 3) return 5e-4;
  return 1e-3 / (static_cast<double>(d) * d);
}

namespace {

PointSet apply_fit(const PointSet& ref, const std::vector<int>& perm,
                   const Eigen::MatrixXd& rot, const Vector& shift) {
  PointSet out(ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i)
    out[i] = rot * ref[perm[i]] + shift;
  return out;
}

// Best orthogonal map sending ref[perm[i]] toward centered[i].
Eigen::MatrixXd procrustes_rotation(const PointSet& centered,
                                    const PointSet& ref,
                                    const std::vector<int>& perm) {
  const int d = static_cast<int>(centered[0].size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t i = 0; i < centered.size(); ++i)
    h += centered[i] * ref[perm[i]].transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

double sq_cost(const PointSet& centered, const PointSet& ref,
               const std::vector<int>& perm, const Eigen::MatrixXd& rot) {
  double c = 0.0;
  for (std::size_t i = 0; i < centered.size(); ++i)
    c += (centered[i] - rot * ref[perm[i]]).squaredNorm();
  return c;
}

std::vector<int> greedy_pairing(const PointSet& centered, const PointSet& ref,
                                const Eigen::MatrixXd& rot) {
  const std::size_t n = centered.size();
  std::vector<int> perm(n, -1);
  std::vector<bool> used(n, false);
  PointSet moved(n);
  for (std::size_t j = 0; j < n; ++j) moved[j] = rot * ref[j];
  for (std::size_t pick = 0; pick < n; ++pick) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (perm[i] >= 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (used[j]) continue;
        const double c = (centered[i] - moved[j]).squaredNorm();
        if (c < best) {
          best = c;
          bi = i;
          bj = j;
        }
      }
    }
    perm[bi] = static_cast<int>(bj);
    used[bj] = true;
  }
  return perm;
}

}  // namespace

FitResult fit_regular(const PointSet& witness, double edge) {
  if (witness.empty()) throw std::invalid_argument("fit_regular: empty input");
  const int d = static_cast<int>(witness[0].size());
  if (static_cast<int>(witness.size()) != d + 1)
    throw std::invalid_argument("fit_regular: witness must have d+1 points");
  if (!(edge > 0.0)) throw std::invalid_argument("fit_regular: edge > 0");

  Vector centroid = Vector::Zero(d);
  for (const auto& w : witness) centroid += w;
  centroid /= static_cast<double>(witness.size());
  PointSet centered(witness.size());
  for (std::size_t i = 0; i < witness.size(); ++i)
    centered[i] = witness[i] - centroid;

  const PointSet ref = regular_simplex(d, edge, /*centered=*/true);

  // Alternate correspondence and alignment a few rounds.
  std::vector<int> perm(witness.size());
  std::iota(perm.begin(), perm.end(), 0);
  Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(d, d);
  for (int round = 0; round < 4; ++round) {
    perm = greedy_pairing(centered, ref, rot);
    // one improvement pass over transpositions
    rot = procrustes_rotation(centered, ref, perm);
    double cost = sq_cost(centered, ref, perm, rot);
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j) {
        std::swap(perm[i], perm[j]);
        const Eigen::MatrixXd r2 = procrustes_rotation(centered, ref, perm);
        const double c2 = sq_cost(centered, ref, perm, r2);
        if (c2 < cost) {
          cost = c2;
          rot = r2;
        } else {
          std::swap(perm[i], perm[j]);
        }
      }
  }

  PointSet fitted = apply_fit(ref, perm, rot, centroid);
  double residual = hausdorff_distance(witness, fitted);

  // Exhaustive permutation fallback when greedy looks suboptimal.
  if (d <= 4) {
    std::vector<int> p(witness.size());
    std::iota(p.begin(), p.end(), 0);
    PointSet best_fit = fitted;
    double best_res = residual;
    do {
      const Eigen::MatrixXd r = procrustes_rotation(centered, ref, p);
      PointSet cand = apply_fit(ref, p, r, centroid);
      const double res = hausdorff_distance(witness, cand);
      if (res < best_res) {
        best_res = res;
        best_fit = std::move(cand);
      }
    } while (std::next_permutation(p.begin(), p.end()));
    if (residual > 1.1 * best_res) {
      fitted = std::move(best_fit);
      residual = best_res;
    }
  }

  return FitResult{RegularSimplex(std::move(fitted), edge), residual};
}

bool check_uniqueness(const RegularSimplex& a, const RegularSimplex& b) {
  if (std::abs(a.edge - b.edge) > 1e-9)
    throw std::invalid_argument("check_uniqueness: edge mismatch");
  PointSet all = a.vertices;
  all.insert(all.end(), b.vertices.begin(), b.vertices.end());
  const double diam = diameter(all);
  if (diam > a.edge + 1e-9) return true;  // hypothesis fails, vacuous
  return hausdorff_distance(a.vertices, b.vertices) <= 1e-6;
}

BilipschitzCheck check_bilipschitz(const RegularSimplex& a,
                                   const RegularSimplex& b) {
  const int d = a.dim();
  PointSet all = a.vertices;
  all.insert(all.end(), b.vertices.begin(), b.vertices.end());
  BilipschitzCheck out;
  out.beta = std::max(0.0, diameter(all) - 1.0);
  out.dist_h = hausdorff_distance(a.vertices, b.vertices);
  out.applicable = out.beta <= beta_test(d);
  if (out.applicable) {
    const double dd = static_cast<double>(d);
    out.holds = out.dist_h <= (dd + 1.0) * dd * dd * out.beta + 1e-9;
  }
  return out;
}

RegularSimplex rotate_simplex(const RegularSimplex& delta, const Direction& v,
                              double theta) {
  const int d = delta.dim();
  if (v.dim() != d) throw std::invalid_argument("rotate_simplex: dim mismatch");
  if (!(theta >= 0.0 && theta <= 3.141592653589793 / 18.0 + 1e-15))
    throw std::invalid_argument("rotate_simplex: theta must be in [0, pi/18]");
  if (std::abs(delta.edge - 1.0) > 1e-9)
    throw std::invalid_argument("rotate_simplex: edge must be 1");
  if (delta.vertices[0].norm() > kEpsNum)
    throw std::invalid_argument("rotate_simplex: vertex 0 must be the origin");

  const Vector& x1 = delta.vertices[1];
  double max_edge = -std::numeric_limits<double>::infinity();
  for (const auto& xi : delta.vertices)
    for (const auto& xj : delta.vertices)
      max_edge = std::max(max_edge, v.dot(xi - xj));
  if (v.dot(x1) < max_edge - kEpsNum)
    throw std::invalid_argument(
        "rotate_simplex: edge (0, x1) must attain the maximal inner product");
  if (theta > 0.0 && v.dot(x1) <= std::cos(theta) - kEpsUnit)
    throw std::invalid_argument("rotate_simplex: requires <v, x1> > cos(theta)");

  if (theta == 0.0) return delta;

  // Plane basis: d1 = v, d2 completes span{v, x1}; when v is (anti)parallel
  // to x1, fall back to span{v, e_k} for the smallest non-parallel axis.
  const Vector d1 = v.vec();
  Vector w = x1 - v.dot(x1) * d1;
  if (w.norm() <= 1e-12) {
    for (int k = 0; k < d; ++k) {
      Vector e = Vector::Zero(d);
      e[k] = 1.0;
      w = e - d1.dot(e) * d1;
      if (w.norm() > 1e-8) break;
    }
  }
  const Vector d2 = w.normalized();

  const double c = std::cos(theta), s = std::sin(theta);
  PointSet rotated;
  rotated.reserve(delta.vertices.size());
  for (const auto& x : delta.vertices) {
    const double a = d1.dot(x);
    const double b = d2.dot(x);
    rotated.push_back(x + (a * c - b * s - a) * d1 + (a * s + b * c - b) * d2);
  }

  RegularSimplex out(std::move(rotated), 1.0);

  // Contract checks on the rotated simplex.
  const Vector& x1r = out.vertices[1];
  if (v.dot(x1r) > std::cos(theta) + kEpsNum)
    throw std::logic_error("rotate_simplex: <v, x1'> exceeds cos(theta)");
  double max_after = -std::numeric_limits<double>::infinity();
  for (const auto& xi : out.vertices)
    for (const auto& xj : out.vertices)
      max_after = std::max(max_after, v.dot(xi - xj));
  if (v.dot(x1r) < max_after - kEpsNum)
    throw std::logic_error("rotate_simplex: maximality not preserved");
  const double moved = (x1 - x1r).norm();
  double worst_move = 0.0;
  for (std::size_t i = 0; i < out.vertices.size(); ++i)
    worst_move =
        std::max(worst_move, (delta.vertices[i] - out.vertices[i]).norm());
  if (std::abs(moved - std::sqrt(2.0 * (1.0 - c))) > kEpsNum ||
      worst_move > moved + kEpsNum)
    throw std::logic_error("rotate_simplex: displacement contract violated");

  return out;
}

}  // namespace recon
