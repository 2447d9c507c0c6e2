#include "recon/strategies.hpp"

#include <cmath>

#include "recon/rng.hpp"

namespace recon {

namespace {

Vector chebyshev_center_or_origin(const GameState& state) {
  const VertexCache cache = enumerate_vertices(state.slab_system());
  if (cache.feasible && cache.bounded)
    return region_radius(cache).ball.center;
  return Vector::Zero(state.config.dimension);  // prior guess
}

}  // namespace

// ---------------------------------------------------------------------------
// CoverNetReconstructor

void CoverNetReconstructor::init(const GameConfig& cfg) {
  if (!(alpha_ > 0.0 && alpha_ < 1.5707963267948966) && cfg.dimension >= 2)
    throw std::invalid_argument("CoverNetReconstructor: alpha in (0, pi/2)");
  if (!prebuilt_ || net_.dimension != cfg.dimension)
    net_ = cached_cover(cfg.dimension, alpha_, cfg.seed ^ 0x4e7);
}

Direction CoverNetReconstructor::next_query(const GameState& state) {
  const std::size_t t = state.rounds.size();
  return net_.directions[t % net_.directions.size()];
}

Vector CoverNetReconstructor::finish(const GameState& state) {
  return chebyshev_center_or_origin(state);
}

// ---------------------------------------------------------------------------
// RobustJungReconstructor

void RobustJungReconstructor::init(const GameConfig& cfg) {
  cfg_ = cfg;
  double beta = beta_;
  if (beta <= 0.0) {
    if (cfg.dimension == 2) beta = 0.01;
    else if (cfg.dimension == 3) beta = 0.005;
    else beta = 0.01 / cfg.dimension;
  }
  const double alpha_d = std::acos(1.0 / (1.0 + beta));
  net_ = cached_cover(cfg.dimension, alpha_d, cfg.seed ^ 0x6a11);
  pending_.clear();
  batch_index_ = 0;
  done_refining_ = false;
}

Direction RobustJungReconstructor::next_query(const GameState& state) {
  const std::size_t t = state.rounds.size();
  if (t < net_.directions.size()) return net_.directions[t];
  if (pending_.empty() && !done_refining_ && batch_index_ < max_batches_) {
    const double scale = 2.0 * cfg_.noise;
    const VertexCache cache = enumerate_vertices(state.slab_system());
    if (cache.feasible && cache.bounded) {
      const auto witness = extract_witness(cache, scale);
      if (!witness) {
        done_refining_ = true;  // already below the Jung limit
      } else {
        const FitResult fit = fit_regular(*witness, scale);
        const PointSet& x = fit.simplex.vertices;
        for (std::size_t i = 0; i < x.size(); ++i)
          for (std::size_t j = i + 1; j < x.size(); ++j)
            pending_.push_back(Direction::of(x[i] - x[j]));
        ++batch_index_;
      }
    }
  }
  if (!pending_.empty()) {
    Direction v = pending_.front();
    pending_.pop_front();
    return v;
  }
  // Pad with repeated net queries (harmless: the region is monotone).
  return net_.directions[t % net_.directions.size()];
}

Vector RobustJungReconstructor::finish(const GameState& state) {
  return chebyshev_center_or_origin(state);
}

// ---------------------------------------------------------------------------
// FixedSetMidpointAdversary

void FixedSetMidpointAdversary::init(const GameConfig& cfg) {
  if (static_cast<int>(set_[0].size()) != cfg.dimension)
    throw std::invalid_argument("FixedSetMidpointAdversary: dimension mismatch");
  if (diameter(set_) > 2.0 * cfg.noise + kEpsUnit)
    throw std::invalid_argument(
        "FixedSetMidpointAdversary: diam(S) must be <= 2 * noise");
}

double FixedSetMidpointAdversary::answer(const Direction& query,
                                         const GameState&) {
  const auto [lo, hi] = project_interval(set_, query);
  return 0.5 * (lo + hi);
}

Vector FixedSetMidpointAdversary::reveal(const GameState&) { return set_[0]; }

// ---------------------------------------------------------------------------
// RotatingSimplexAdversary

RotatingSimplexAdversary::RotatingSimplexAdversary(double alpha0)
    : alpha0_(alpha0) {
  if (!(alpha0 > 0.0 && alpha0 < 0.25))
    throw std::invalid_argument(
        "RotatingSimplexAdversary: alpha0 must be in (0, 1/4)");
}

void RotatingSimplexAdversary::init(const GameConfig& cfg) {
  if (std::abs(cfg.noise - 0.5) > kEpsUnit)
    throw std::invalid_argument(
        "RotatingSimplexAdversary: requires noise = 1/2 (rescale the game)");
  alpha_ = alpha0_;
  // Unit-edge simplex with vertex 0 at the origin.
  simplex_ = regular_simplex(cfg.dimension, 1.0, /*centered=*/false);
  const Vector shift = simplex_[0];
  for (auto& v : simplex_) v -= shift;
  history_.clear();
}

double RotatingSimplexAdversary::answer(const Direction& query,
                                        const GameState&) {
  const std::size_t n = simplex_.size();

  // Maximal edge <v, x_i - x_j>; ties resolved to the smallest (i, j).
  std::size_t bi = 0, bj = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double dot = query.dot(simplex_[i] - simplex_[j]);
      if (dot > best + kEpsUnit) {
        best = dot;
        bi = i;
        bj = j;
      }
    }

  const double alpha_next = alpha_ * alpha_ / 17.0;
  bool rotated = false;

  if (best > 1.0 - 2.0 * alpha_next) {
    // Rotate by theta = alpha/2 about the tail vertex so the criterion of the
    // midpoint response applies to the rotated simplex.
    const double theta = alpha_ / 2.0;
    const Vector pivot = simplex_[bj];
    PointSet ordered;
    ordered.reserve(n);
    ordered.push_back(simplex_[bj] - pivot);
    ordered.push_back(simplex_[bi] - pivot);
    for (std::size_t k = 0; k < n; ++k)
      if (k != bi && k != bj) ordered.push_back(simplex_[k] - pivot);

    const RegularSimplex turned =
        rotate_simplex(RegularSimplex(std::move(ordered), 1.0), query, theta);

    PointSet next(n);
    next[bj] = pivot + turned.vertices[0];
    next[bi] = pivot + turned.vertices[1];
    std::size_t cursor = 2;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == bi || k == bj) continue;
      next[k] = pivot + turned.vertices[cursor++];
    }
    // No vertex may move further than alpha - alpha^2/17, which keeps
    // Delta' + B(alpha') inside Delta + B(alpha).
    const double budget = alpha_ - alpha_next + kEpsUnit;
    for (std::size_t k = 0; k < n; ++k)
      if ((next[k] - simplex_[k]).norm() > budget)
        throw InvariantBreach(
            "rotating adversary: vertex displacement exceeds alpha - alpha^2/17");
    simplex_ = std::move(next);
    rotated = true;
  }

  // Midpoint of the projection interval of the (possibly rotated) simplex.
  const auto [lo, hi] = project_interval(simplex_, query);
  const double reply = 0.5 * (lo + hi);

  // Self-check: every vertex ball of radius alpha' must fit inside the slab.
  for (const auto& x : simplex_)
    if (std::abs(query.dot(x) - reply) + alpha_next > 0.5 + kEpsNum)
      throw InvariantBreach(
          "rotating adversary: simplex neighborhood escapes the new slab");

  alpha_ = alpha_next;
  history_.push_back(Snapshot{simplex_, alpha_, rotated});
  return reply;
}

Vector RotatingSimplexAdversary::reveal(const GameState&) {
  return simplex_[0];
}

// ---------------------------------------------------------------------------
// ZeroGaussianAdversary

Vector ZeroGaussianAdversary::reveal(const GameState& state) {
  Rng rng(seed_, 0x9a55);
  const int d = state.config.dimension;
  for (int attempt = 0; attempt < 100; ++attempt) {
    Vector x = rng.gaussian_vector(d);
    bool ok = true;
    for (const auto& r : state.rounds)
      if (std::abs(r.query.dot(x)) > state.config.noise) {
        ok = false;
        break;
      }
    if (ok) return x;
  }
  return Vector::Zero(d);  // always feasible for all-zero answers
}

// ---------------------------------------------------------------------------

Predictor improper_midpoint_predictor(const GameTrace& trace) {
  auto cache = std::make_shared<VertexCache>(
      enumerate_vertices(trace.slab_system()));
  if (!cache->feasible) throw InfeasibleRegion();
  if (!cache->bounded) throw UnboundedRegion();
  return [cache](const Direction& v) {
    const auto [lo, hi] = project_interval(cache->vertices, v);
    return 0.5 * (lo + hi);
  };
}

}  // namespace recon
