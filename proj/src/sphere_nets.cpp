#include "recon/sphere_nets.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "recon/rng.hpp"

namespace recon {

std::pair<double, double> covering_bounds(int d, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.5707963267948966))
    throw std::invalid_argument("covering_bounds: alpha must be in (0, pi/2)");
  const double pw = std::pow(alpha, -(d - 1));
  return {std::sqrt(static_cast<double>(d)) * pw, std::exp2(2.0 * d) * pw};
}

namespace {

CoverNet build_circle_cover(double alpha, std::uint64_t seed) {
  const int k = static_cast<int>(std::ceil(3.141592653589793 / alpha));
  CoverNet net;
  net.dimension = 2;
  net.alpha = alpha;
  net.seed = seed;
  for (int i = 0; i < k; ++i) {
    const double t = 2.0 * 3.141592653589793 * i / k;
    Vector v(2);
    v << std::cos(t), std::sin(t);
    net.directions.push_back(Direction(v));
  }
  // Spacing 2*pi/k gives covering radius pi/k <= alpha by construction.
  net.verified = true;
  net.certificate_gap = 3.141592653589793 / k;
  return net;
}

CoverNet build_greedy_cover(int d, double alpha, std::uint64_t seed) {
  // Quasi-uniform candidate pool; capped so small alpha stays tractable.
  const double upper = covering_bounds(d, alpha).second;
  const std::size_t pool_size = static_cast<std::size_t>(
      std::min(200.0 * upper, 600000.0));

  Rng rng(seed, 0xc07e1);
  std::vector<Eigen::VectorXd> pool(pool_size);
  for (auto& p : pool) p = rng.unit_vector(d);

  CoverNet net;
  net.dimension = d;
  net.alpha = alpha;
  net.seed = seed;

  // min angle from each pool point to the selected set, tracked via max cosine
  std::vector<double> best_cos(pool_size, -2.0);
  std::size_t far_idx = 0;

  // Seed with the first pool point, then repeat farthest-point insertion until
  // the pool's worst gap is below alpha (small slack so the Monte Carlo
  // certificate holds for the sphere, not just the pool).
  const double target_cos = std::cos(0.95 * alpha);
  std::size_t next = 0;
  while (true) {
    const Eigen::VectorXd& chosen = pool[next];
    net.directions.push_back(Direction(chosen));
    double worst = 2.0;
    for (std::size_t i = 0; i < pool_size; ++i) {
      const double c = chosen.dot(pool[i]);
      if (c > best_cos[i]) best_cos[i] = c;
      if (best_cos[i] < worst) {
        worst = best_cos[i];
        far_idx = i;
      }
    }
    if (worst >= target_cos) break;
    next = far_idx;
  }
  return net;
}

}  // namespace

CoverNet build_cover(int d, double alpha, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("build_cover: d must be >= 1");
  if (d >= 2 && !(alpha > 0.0 && alpha < 1.5707963267948966))
    throw std::invalid_argument("build_cover: alpha must be in (0, pi/2)");

  if (d == 1) {
    CoverNet net;
    net.dimension = 1;
    net.alpha = alpha;
    net.seed = seed;
    Vector plus(1), minus(1);
    plus << 1.0;
    minus << -1.0;
    net.directions.push_back(Direction(plus));
    net.directions.push_back(Direction(minus));
    net.verified = true;
    return net;
  }
  if (d == 2) return build_circle_cover(alpha, seed);

  CoverNet net = build_greedy_cover(d, alpha, seed);
  const CoverCheck check = verify_cover(net, 100000, seed ^ 0x5a5a5a5a);
  net.verified = check.covers;
  net.certificate_samples = 100000;
  net.certificate_gap = check.worst_gap;
  return net;
}

const CoverNet& cached_cover(int d, double alpha, std::uint64_t seed) {
  static std::mutex mu;
  static std::map<std::tuple<int, double, std::uint64_t>, CoverNet> cache;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_tuple(d, alpha, seed);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, build_cover(d, alpha, seed)).first;
  return it->second;
}

CoverCheck verify_cover(const CoverNet& net, std::uint64_t samples,
                        std::uint64_t seed) {
  if (samples < 10000)
    throw std::invalid_argument("verify_cover: samples must be >= 1e4");
  if (net.directions.empty()) return {false, 3.141592653589793};

  const int d = net.dimension;
  Rng rng(seed, 0x7e81f1);
  double worst_cos = 2.0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const Eigen::VectorXd v = rng.unit_vector(d);
    double best = -2.0;
    for (const auto& u : net.directions) {
      const double c = u.vec().dot(v);
      if (c > best) best = c;
    }
    if (best < worst_cos) worst_cos = best;
  }
  const double gap = std::acos(std::clamp(worst_cos, -1.0, 1.0));
  return {gap <= net.alpha, gap};
}

}  // namespace recon
