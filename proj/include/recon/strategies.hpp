#pragma once

#include <deque>
#include <memory>

#include "recon/game.hpp"
#include "recon/jung_lab.hpp"
#include "recon/sphere_nets.hpp"

namespace recon {

// Queries a verified alpha-net in fixed order (wrapping if the budget exceeds
// the net) and outputs the Chebyshev center of the final region. Guaranteed
// loss <= jung_constant(d) * 2 * noise / cos(alpha) once the net is exhausted.
class CoverNetReconstructor : public Reconstructor {
 public:
  explicit CoverNetReconstructor(double alpha) : alpha_(alpha) {}
  explicit CoverNetReconstructor(CoverNet net)
      : alpha_(net.alpha), net_(std::move(net)), prebuilt_(true) {}

  void init(const GameConfig& cfg) override;
  Direction next_query(const GameState& state) override;
  Vector finish(const GameState& state) override;

  const CoverNet& net() const { return net_; }

 private:
  double alpha_;
  CoverNet net_;
  bool prebuilt_ = false;
};

// Two-phase strategy: an arccos(1/(1+beta))-net preprocessing pass, then
// batches of (d+1 choose 2) queries along the edge directions of the regular
// simplex fitted to the current witness. Stops refining once the region's
// radius drops below the Jung limit.
class RobustJungReconstructor : public Reconstructor {
 public:
  // beta <= 0 selects the per-dimension default (d=2: 0.01, d=3: 0.005).
  explicit RobustJungReconstructor(double beta = 0.0, int max_batches = 1 << 20)
      : beta_(beta), max_batches_(max_batches) {}

  void init(const GameConfig& cfg) override;
  Direction next_query(const GameState& state) override;
  Vector finish(const GameState& state) override;

  int batches_started() const { return batch_index_; }
  std::size_t net_size() const { return net_.directions.size(); }

 private:
  double beta_;
  int max_batches_;
  GameConfig cfg_;
  CoverNet net_;
  std::deque<Direction> pending_;
  int batch_index_ = 0;
  bool done_refining_ = false;
};

// Answers the midpoint of the projection of a fixed set S (diam(S) <= 2 noise)
// so that S stays inside the feasible region forever. A singleton S is the
// truthful adversary for that secret.
class FixedSetMidpointAdversary : public Adversary {
 public:
  explicit FixedSetMidpointAdversary(PointSet set) : set_(std::move(set)) {
    if (set_.empty())
      throw std::invalid_argument("FixedSetMidpointAdversary: empty set");
  }

  void init(const GameConfig& cfg) override;
  double answer(const Direction& query, const GameState& state) override;
  Vector reveal(const GameState& state) override;

 private:
  PointSet set_;
};

// The rotating-simplex adversary: keeps a unit-edge regular simplex Delta_t
// and a safety radius alpha_t with Delta_t + B(alpha_t) inside the feasible
// region, shrinking alpha by alpha^2/17 per round and rotating Delta by
// alpha/2 whenever the query aligns with an edge. Requires noise = 1/2.
class RotatingSimplexAdversary : public Adversary {
 public:
  struct Snapshot {
    PointSet simplex;
    double alpha;
    bool rotated;
  };

  explicit RotatingSimplexAdversary(double alpha0);

  void init(const GameConfig& cfg) override;
  double answer(const Direction& query, const GameState& state) override;
  Vector reveal(const GameState& state) override;

  const PointSet& simplex() const { return simplex_; }
  double alpha() const { return alpha_; }
  // One entry per answered round: the state after that round.
  const std::vector<Snapshot>& history() const { return history_; }

 private:
  double alpha0_;
  double alpha_ = 0.0;
  PointSet simplex_;
  std::vector<Snapshot> history_;
};

// Answers 0 to every query; reveal tries standard Gaussian samples for
// feasibility before falling back to the origin.
class ZeroGaussianAdversary : public Adversary {
 public:
  void init(const GameConfig& cfg) override { seed_ = cfg.seed; }
  double answer(const Direction&, const GameState&) override { return 0.0; }
  Vector reveal(const GameState& state) override;

 private:
  std::uint64_t seed_ = 0;
};

// Prediction rule v -> midpoint of the projection of the final region onto v;
// its worst-case improper error is exactly diam/2.
Predictor improper_midpoint_predictor(const GameTrace& trace);

}  // namespace recon
