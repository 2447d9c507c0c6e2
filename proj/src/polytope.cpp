#include "recon/polytope.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>

namespace recon {

namespace {

// Half-space in normal form <n, x> <= b.
struct Plane {
  Vector n;
  double b;
};

struct Interval {
  double lo, hi;
};

Interval slab_interval(const Slab& s) {
  return {s.answer - s.noise, s.answer + s.noise};
}

}  // namespace

std::vector<Slab> SlabSystem::pruned() const {
  std::vector<Slab> kept;
  for (const auto& s : slabs_) {
    Interval cur = slab_interval(s);
    bool drop = false;
    for (auto& k : kept) {
      const double c = s.direction.vec().dot(k.direction.vec());
      const double ang = std::acos(std::clamp(std::abs(c), -1.0, 1.0));
      if (ang > kEpsParallel) continue;
      Interval other = slab_interval(k);
      Interval mine = cur;
      if (c < 0.0) mine = {-cur.hi, -cur.lo};  // flip onto k's direction
      if (mine.lo <= other.lo && mine.hi >= other.hi) {
        drop = true;  // new slab equal or looser than an existing one
        break;
      }
      if (other.lo <= mine.lo && other.hi >= mine.hi) {
        // existing slab is looser: replace it with the tighter one
        k = Slab(k.direction, c < 0.0 ? -s.answer : s.answer, s.noise);
        drop = true;
        break;
      }
      // partially overlapping parallel slabs: keep both
    }
    if (!drop) kept.push_back(s);
  }
  return kept;
}

double SlabSystem::default_box() const {
  double first_answer = 0.0;
  double noise = 1.0;
  if (!slabs_.empty()) {
    first_answer = slabs_.front().answer;
    noise = slabs_.front().noise;
  }
  return 10.0 * (std::abs(first_answer) + noise + 1.0);
}

namespace {

bool inside_all(const std::vector<Slab>& slabs, const Vector& x, double box,
                double tol) {
  for (int k = 0; k < x.size(); ++k)
    if (std::abs(x[k]) > box + tol) return false;
  for (const auto& s : slabs)
    if (!s.contains(x, tol)) return false;
  return true;
}

bool on_cube_boundary(const Vector& x, double box, double tol) {
  for (int k = 0; k < x.size(); ++k)
    if (std::abs(std::abs(x[k]) - box) <= tol) return true;
  return false;
}

void dedup_append(PointSet& out, const Vector& v, double tol) {
  for (const auto& u : out)
    if ((u - v).lpNorm<Eigen::Infinity>() <= tol) return;
  out.push_back(v);
}

// ---------------------------------------------------------------------------
// d = 1: interval intersection.

VertexCache enumerate_1d(const std::vector<Slab>& slabs, double box) {
  double lo = -box, hi = box;
  for (const auto& s : slabs) {
    const double sign = s.direction.vec()[0] >= 0.0 ? 1.0 : -1.0;
    Interval iv = slab_interval(s);
    if (sign < 0.0) iv = {-iv.hi, -iv.lo};
    lo = std::max(lo, iv.lo);
    hi = std::min(hi, iv.hi);
  }
  VertexCache cache;
  cache.box = box;
  if (lo > hi + kEpsNum) {
    cache.feasible = false;
    return cache;
  }
  Vector a(1), b(1);
  a[0] = lo;
  b[0] = hi;
  cache.vertices.push_back(a);
  if (hi - lo > kEpsNum) cache.vertices.push_back(b);
  cache.bounded = !on_cube_boundary(a, box, 1e-9 * (1.0 + box)) &&
                  !on_cube_boundary(b, box, 1e-9 * (1.0 + box));
  return cache;
}

// ---------------------------------------------------------------------------
// Exhaustive path: solve every d-subset of constraint planes.

std::uint64_t subset_count(std::uint64_t m, int d) {
  std::uint64_t c = 1;
  for (int i = 0; i < d; ++i) {
    if (c > (std::uint64_t(1) << 62) / (m - i)) return std::uint64_t(-1);
    c = c * (m - i) / (i + 1);
  }
  return c;
}

VertexCache enumerate_exhaustive(const std::vector<Slab>& slabs, int d,
                                 double box) {
  std::vector<Plane> planes;
  planes.reserve(2 * slabs.size() + 2 * d);
  for (const auto& s : slabs) {
    const Interval iv = slab_interval(s);
    planes.push_back({s.direction.vec(), iv.hi});
    planes.push_back({-s.direction.vec(), -iv.lo});
  }
  for (int k = 0; k < d; ++k) {
    Vector e = Vector::Zero(d);
    e[k] = 1.0;
    planes.push_back({e, box});
    planes.push_back({-e, box});
  }

  const int m = static_cast<int>(planes.size());
  const double tol = kEpsNum * (1.0 + box);
  VertexCache cache;
  cache.box = box;

  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = i;

  Eigen::MatrixXd A(d, d);
  Eigen::VectorXd b(d);
  bool boundary_vertex = false;

  while (true) {
    for (int i = 0; i < d; ++i) {
      A.row(i) = planes[idx[i]].n.transpose();
      b[i] = planes[idx[i]].b;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (lu.isInvertible()) {
      const Vector x = lu.solve(b);
      if ((A * x - b).lpNorm<Eigen::Infinity>() <= 1e-7 * (1.0 + box) &&
          inside_all(slabs, x, box, tol)) {
        dedup_append(cache.vertices, x, 1e-9 * (1.0 + box));
        boundary_vertex |= on_cube_boundary(x, box, 1e-7 * (1.0 + box));
      }
    }
    // next combination
    int i = d - 1;
    while (i >= 0 && idx[i] == m - d + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }

  cache.feasible = !cache.vertices.empty();
  cache.bounded = cache.feasible && !boundary_vertex;
  return cache;
}

// ---------------------------------------------------------------------------
// d = 2: incremental polygon clipping.

VertexCache clip_polygon_2d(const std::vector<Slab>& slabs, double box) {
  std::vector<Vector> poly;
  for (const auto [sx, sy] : {std::pair{-1.0, -1.0}, std::pair{1.0, -1.0},
                              std::pair{1.0, 1.0}, std::pair{-1.0, 1.0}}) {
    Vector v(2);
    v << sx * box, sy * box;
    poly.push_back(v);
  }
  const double tol = 1e-12 * (1.0 + box);

  auto clip = [&](const Vector& n, double b) {
    std::vector<Vector> out;
    const std::size_t k = poly.size();
    for (std::size_t i = 0; i < k; ++i) {
      const Vector& p = poly[i];
      const Vector& q = poly[(i + 1) % k];
      const double sp = n.dot(p) - b;
      const double sq = n.dot(q) - b;
      if (sp <= tol) out.push_back(p);
      if ((sp < -tol && sq > tol) || (sp > tol && sq < -tol)) {
        const double t = sp / (sp - sq);
        out.push_back(p + t * (q - p));
      }
    }
    poly = std::move(out);
  };

  for (const auto& s : slabs) {
    const Interval iv = slab_interval(s);
    clip(s.direction.vec(), iv.hi);
    if (poly.empty()) break;
    clip(-s.direction.vec(), -iv.lo);
    if (poly.empty()) break;
  }

  VertexCache cache;
  cache.box = box;
  bool boundary_vertex = false;
  for (const auto& v : poly) {
    dedup_append(cache.vertices, v, 1e-9 * (1.0 + box));
    boundary_vertex |= on_cube_boundary(v, box, 1e-7 * (1.0 + box));
  }
  cache.feasible = !cache.vertices.empty();
  cache.bounded = cache.feasible && !boundary_vertex;
  return cache;
}

// ---------------------------------------------------------------------------
// d = 3: incremental face clipping. Faces are convex polygons; cutting by a
// half-space clips every face polygon and assembles the new face from the
// collected crossing points (angular sort around the centroid in-plane).

struct Face3 {
  Vector n;
  double b;
  std::vector<Vector> poly;
};

std::vector<Face3> cube_faces(double box) {
  std::vector<Face3> faces;
  for (int axis = 0; axis < 3; ++axis) {
    for (double sign : {1.0, -1.0}) {
      Face3 f;
      f.n = Vector::Zero(3);
      f.n[axis] = sign;
      f.b = box;
      const int u = (axis + 1) % 3, v = (axis + 2) % 3;
      for (const auto [su, sv] : {std::pair{-1.0, -1.0}, std::pair{1.0, -1.0},
                                  std::pair{1.0, 1.0}, std::pair{-1.0, 1.0}}) {
        Vector p(3);
        p[axis] = sign * box;
        p[u] = su * box;
        p[v] = sv * box;
        f.poly.push_back(p);
      }
      faces.push_back(std::move(f));
    }
  }
  return faces;
}

bool clip_faces_3d(std::vector<Face3>& faces, const Vector& n, double b,
                   double tol) {
  bool any_out = false, any_in = false;
  for (const auto& f : faces)
    for (const auto& v : f.poly) {
      const double s = n.dot(v) - b;
      any_out |= s > tol;
      any_in |= s < -tol;
      if (any_out && any_in) break;
    }
  if (!any_out) return true;  // redundant cut
  if (!any_in) {
    faces.clear();
    return false;
  }

  std::vector<Vector> cutpts;
  std::vector<Face3> next;
  next.reserve(faces.size() + 1);
  for (auto& f : faces) {
    std::vector<Vector> out;
    const std::size_t k = f.poly.size();
    for (std::size_t i = 0; i < k; ++i) {
      const Vector& p = f.poly[i];
      const Vector& q = f.poly[(i + 1) % k];
      const double sp = n.dot(p) - b;
      const double sq = n.dot(q) - b;
      if (sp <= tol) out.push_back(p);
      if (std::abs(sp) <= tol) cutpts.push_back(p);
      if ((sp < -tol && sq > tol) || (sp > tol && sq < -tol)) {
        const double t = sp / (sp - sq);
        Vector x = p + t * (q - p);
        out.push_back(x);
        cutpts.push_back(std::move(x));
      }
    }
    // drop collapsed faces
    std::vector<Vector> clean;
    for (const auto& v : out) dedup_append(clean, v, tol * 10.0);
    if (clean.size() >= 3) {
      f.poly = std::move(clean);
      next.push_back(std::move(f));
    }
  }

  PointSet unique_cuts;
  for (const auto& v : cutpts) dedup_append(unique_cuts, v, tol * 10.0);
  if (unique_cuts.size() >= 3) {
    // centroid + in-plane angular order (the section of a convex body is convex)
    Vector c = Vector::Zero(3);
    for (const auto& v : unique_cuts) c += v;
    c /= static_cast<double>(unique_cuts.size());
    Vector e1 = (unique_cuts[0] - c).normalized();
    Vector e2(3);
    e2 << n[1] * e1[2] - n[2] * e1[1], n[2] * e1[0] - n[0] * e1[2],
        n[0] * e1[1] - n[1] * e1[0];
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t i = 0; i < unique_cuts.size(); ++i) {
      const Vector r = unique_cuts[i] - c;
      order.emplace_back(std::atan2(e2.dot(r), e1.dot(r)), i);
    }
    std::sort(order.begin(), order.end());
    Face3 nf;
    nf.n = n;
    nf.b = b;
    for (const auto& [ang, i] : order) nf.poly.push_back(unique_cuts[i]);
    next.push_back(std::move(nf));
  }

  faces = std::move(next);
  return !faces.empty();
}

VertexCache clip_faces_path(const std::vector<Slab>& slabs, double box) {
  auto faces = cube_faces(box);
  const double tol = 1e-12 * (1.0 + box);
  bool alive = true;
  for (const auto& s : slabs) {
    const Interval iv = slab_interval(s);
    alive = clip_faces_3d(faces, s.direction.vec(), iv.hi, tol);
    if (!alive) break;
    alive = clip_faces_3d(faces, -s.direction.vec(), -iv.lo, tol);
    if (!alive) break;
  }

  VertexCache cache;
  cache.box = box;
  if (!alive) {
    cache.feasible = false;
    return cache;
  }

  // Harvest unique vertices via a quantized grid.
  const double merge = 1e-9 * (1.0 + box);
  std::map<std::array<std::int64_t, 3>, std::vector<std::size_t>> grid;
  bool boundary_vertex = false;
  for (const auto& f : faces) {
    for (const auto& v : f.poly) {
      std::array<std::int64_t, 3> key{};
      for (int k = 0; k < 3; ++k)
        key[k] = static_cast<std::int64_t>(std::floor(v[k] / (merge * 16.0)));
      bool seen = false;
      for (int dx = -1; dx <= 1 && !seen; ++dx)
        for (int dy = -1; dy <= 1 && !seen; ++dy)
          for (int dz = -1; dz <= 1 && !seen; ++dz) {
            auto it = grid.find({key[0] + dx, key[1] + dy, key[2] + dz});
            if (it == grid.end()) continue;
            for (auto j : it->second)
              if ((cache.vertices[j] - v).lpNorm<Eigen::Infinity>() <= merge) {
                seen = true;
                break;
              }
          }
      if (!seen) {
        grid[key].push_back(cache.vertices.size());
        cache.vertices.push_back(v);
        boundary_vertex |= on_cube_boundary(v, box, 1e-7 * (1.0 + box));
      }
    }
  }
  cache.feasible = !cache.vertices.empty();
  cache.bounded = cache.feasible && !boundary_vertex;
  return cache;
}

}  // namespace

VertexCache enumerate_vertices(const SlabSystem& sys, double box) {
  const int d = sys.dimension();
  if (d > 6)
    throw std::invalid_argument("enumerate_vertices: dimension must be <= 6");
  if (!(box > 0.0)) throw std::invalid_argument("enumerate_vertices: box > 0");

  const std::vector<Slab> slabs = sys.pruned();
  if (d == 1) return enumerate_1d(slabs, box);

  const std::uint64_t m = 2 * slabs.size() + 2 * d;
  const std::uint64_t combos = subset_count(m, d);
  const std::uint64_t per_cost = d * d * d + m * d;
  const bool small = combos < (std::uint64_t(15) << 27) / per_cost;

  if (small) return enumerate_exhaustive(slabs, d, box);
  if (d == 2) return clip_polygon_2d(slabs, box);
  if (d == 3) return clip_faces_path(slabs, box);
  throw std::length_error(
      "enumerate_vertices: system too large for exhaustive enumeration at d >= 4");
}

VertexCache enumerate_vertices(const SlabSystem& sys) {
  return enumerate_vertices(sys, sys.default_box());
}

namespace {

const VertexCache& require_bounded(const VertexCache& cache) {
  if (!cache.feasible) throw InfeasibleRegion();
  if (!cache.bounded) throw UnboundedRegion();
  return cache;
}

}  // namespace

MebResult region_radius(const VertexCache& cache) {
  require_bounded(cache);
  return min_enclosing_ball(cache.vertices);
}

double region_diameter(const VertexCache& cache) {
  require_bounded(cache);
  return diameter(cache.vertices);
}

std::optional<PointSet> extract_witness(const VertexCache& cache, double scale) {
  require_bounded(cache);
  const int d = static_cast<int>(cache.vertices[0].size());
  MebResult meb = min_enclosing_ball(cache.vertices);
  if (meb.ball.radius < jung_constant(d) * scale - kEpsNum)
    return std::nullopt;  // already below the Jung limit

  PointSet support = meb.support;
  if (static_cast<int>(support.size()) > d + 1) {
    // Degenerate cosphericality: find a (d+1)-subset realizing the radius.
    const std::size_t n = support.size();
    for (std::size_t skip = 0; skip < n; ++skip) {
      PointSet sub;
      for (std::size_t i = 0; i < n; ++i)
        if (i != skip) sub.push_back(support[i]);
      if (std::abs(min_enclosing_ball(sub).ball.radius - meb.ball.radius) <=
          kEpsNum) {
        support = std::move(sub);
        break;
      }
    }
    support.resize(d + 1);
  }
  // Pad by duplication (a witness of cardinality exactly d+1).
  std::size_t i = 0;
  while (static_cast<int>(support.size()) < d + 1)
    support.push_back(support[i++ % support.size()]);
  return support;
}

std::pair<double, double> project_interval(const VertexCache& cache,
                                           const Direction& v) {
  require_bounded(cache);
  return project_interval(cache.vertices, v);
}

std::pair<double, double> project_interval(const SlabSystem& sys,
                                           const Direction& v) {
  return project_interval(enumerate_vertices(sys), v);
}

std::pair<double, double> project_interval(const PointSet& points,
                                           const Direction& v) {
  if (points.empty())
    throw std::invalid_argument("project_interval: empty point set");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& p : points) {
    const double t = v.dot(p);
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  return {lo, hi};
}

}  // namespace recon
