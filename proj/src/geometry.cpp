#include "recon/geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "recon/rng.hpp"

namespace recon {

double jung_constant(int d) {
  if (d < 1) throw std::invalid_argument("jung_constant: d must be >= 1");
  const double dd = static_cast<double>(d);
  return std::sqrt(dd / (2.0 * (dd + 1.0)));
}

PointSet regular_simplex(int d, double edge, bool centered) {
  if (d < 1) throw std::invalid_argument("regular_simplex: d must be >= 1");
  if (!(edge > 0.0)) throw std::invalid_argument("regular_simplex: edge must be > 0");

  // e_1..e_d have pairwise distance sqrt(2); the apex c*(1,..,1) with
  // c = (1 - sqrt(d+1))/d completes them to a regular simplex.
  PointSet pts;
  pts.reserve(d + 1);
  for (int i = 0; i < d; ++i) {
    Vector v = Vector::Zero(d);
    v[i] = 1.0;
    pts.push_back(v);
  }
  const double c = (1.0 - std::sqrt(static_cast<double>(d) + 1.0)) / d;
  pts.push_back(Vector::Constant(d, c));

  const double scale = edge / std::sqrt(2.0);
  for (auto& p : pts) p *= scale;

  if (centered) {
    Vector centroid = Vector::Zero(d);
    for (const auto& p : pts) centroid += p;
    centroid /= static_cast<double>(d + 1);
    for (auto& p : pts) p -= centroid;
  }
  return pts;
}

Ball circumsphere(const PointSet& points) {
  const std::size_t k = points.size();
  if (k == 0) return Ball{Vector(), -1.0};  // null ball: contains nothing
  if (k == 1) return Ball{points[0], 0.0};

  // Center = q0 + sum_i lambda_i a_i with a_i = q_i - q0 and
  // 2 <a_i, a_j> lambda_j = |a_i|^2. Affinely dependent points get the
  // minimal-norm least-squares solution.
  const Vector& q0 = points[0];
  const int m = static_cast<int>(k) - 1;
  Eigen::MatrixXd A(m, q0.size());
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) {
    const Vector a = points[i + 1] - q0;
    A.row(i) = a.transpose();
    rhs[i] = a.squaredNorm();
  }
  const Eigen::MatrixXd G = 2.0 * A * A.transpose();
  const Eigen::VectorXd lambda =
      G.completeOrthogonalDecomposition().solve(rhs);
  const Vector center = q0 + A.transpose() * lambda;

  double r = 0.0;
  for (const auto& p : points) r = std::max(r, (p - center).norm());
  return Ball{center, r};
}

namespace {

// Welzl recursion: first `n` entries of `pts` are free points, `boundary`
// holds points constrained to the ball surface.
MebResult welzl(std::vector<const Vector*>& pts, std::size_t n,
                PointSet& boundary, std::size_t cap) {
  if (n == 0 || boundary.size() == cap) {
    Ball b = circumsphere(boundary);
    return MebResult{b, boundary};
  }
  const Vector* p = pts[n - 1];
  MebResult res = welzl(pts, n - 1, boundary, cap);
  const double tol = kEpsUnit * (1.0 + std::abs(res.ball.radius));
  if (res.ball.radius >= 0.0 && res.ball.contains(*p, tol)) return res;

  boundary.push_back(*p);
  res = welzl(pts, n - 1, boundary, cap);
  boundary.pop_back();

  // Move-to-front: keep determining points near the front.
  for (std::size_t i = n - 1; i > 0; --i) pts[i] = pts[i - 1];
  pts[0] = p;
  return res;
}

}  // namespace

MebResult min_enclosing_ball(const PointSet& points, std::uint64_t shuffle_seed) {
  if (points.empty())
    throw std::invalid_argument("min_enclosing_ball: empty point set");
  const int d = static_cast<int>(points[0].size());

  std::vector<const Vector*> ptrs;
  ptrs.reserve(points.size());
  for (const auto& p : points) ptrs.push_back(&p);
  Rng rng(shuffle_seed);
  rng.shuffle(ptrs);

  PointSet boundary;
  // Up to d+2 boundary points for degenerate (cospherical) inputs; the
  // least-squares circumsphere handles the overdetermined solve.
  MebResult res = welzl(ptrs, ptrs.size(), boundary, static_cast<std::size_t>(d) + 2);

  // Deduplicate support points (duplicated inputs can appear twice).
  PointSet support;
  for (const auto& s : res.support) {
    bool seen = false;
    for (const auto& t : support)
      if ((s - t).norm() <= kEpsUnit) { seen = true; break; }
    if (!seen) support.push_back(s);
  }
  res.support = std::move(support);
  return res;
}

double diameter(const PointSet& points) {
  if (points.empty()) throw std::invalid_argument("diameter: empty point set");
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      best = std::max(best, (points[i] - points[j]).squaredNorm());
  return std::sqrt(best);
}

std::pair<int, int> diameter_pair(const PointSet& points) {
  if (points.empty()) throw std::invalid_argument("diameter_pair: empty point set");
  double best = -1.0;
  std::pair<int, int> arg{0, 0};
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double d2 = (points[i] - points[j]).squaredNorm();
      if (d2 > best) {
        best = d2;
        arg = {static_cast<int>(i), static_cast<int>(j)};
      }
    }
  return arg;
}

double hausdorff_distance(const PointSet& a, const PointSet& b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("hausdorff_distance: empty point set");
  auto directed = [](const PointSet& from, const PointSet& to) {
    double worst = 0.0;
    for (const auto& p : from) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const auto& q : to)
        nearest = std::min(nearest, (p - q).squaredNorm());
      worst = std::max(worst, nearest);
    }
    return std::sqrt(worst);
  };
  return std::max(directed(a, b), directed(b, a));
}

double angular_distance(const Direction& u, const Direction& v) {
  const double c = std::clamp(u.vec().dot(v.vec()), -1.0, 1.0);
  return std::acos(c);
}

}  // namespace recon
