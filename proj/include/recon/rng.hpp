#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>

namespace recon {

// Counter-based deterministic generator (splitmix64 over seed + counter).
// Every stream is a pure function of (seed, counter), so traces and sweeps
// are bit-reproducible regardless of call interleaving across modules.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(seed ^ (stream * 0x9e3779b97f4a7c15ULL)) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1).
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; one fresh pair per call, no cached spare (keeps the stream
  // position a pure function of the number of calls).
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  Eigen::VectorXd gaussian_vector(int d) {
    Eigen::VectorXd v(d);
    for (int i = 0; i < d; ++i) v[i] = normal();
    return v;
  }

  // Uniform on the unit sphere S^{d-1}.
  Eigen::VectorXd unit_vector(int d) {
    Eigen::VectorXd v = gaussian_vector(d);
    double n = v.norm();
    while (n < 1e-12) {
      v = gaussian_vector(d);
      n = v.norm();
    }
    return v / n;
  }

  // Fisher-Yates over [0, n).
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = next_u64() % i;
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace recon
