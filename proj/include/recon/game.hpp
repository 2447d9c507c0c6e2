#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "recon/polytope.hpp"

namespace recon {

// Raised when a strategy breaks a contract it is required to maintain
// (adversary infeasibility, simplex-neighborhood breach). The CLI maps this
// to exit code 2.
struct InvariantBreach : std::runtime_error {
  explicit InvariantBreach(const std::string& what) : std::runtime_error(what) {}
};

struct GameConfig {
  int dimension = 2;
  double noise = 0.5;
  int rounds = 0;
  std::uint64_t seed = 0;
  int metrics_every = 1;  // 0 = final round only
};

struct RoundRecord {
  Direction query;
  double answer;
};

// History visible to the ports: immutable view of the game so far.
struct GameState {
  GameConfig config;
  std::vector<RoundRecord> rounds;

  SlabSystem slab_system() const {
    SlabSystem sys(config.dimension);
    for (const auto& r : rounds) sys.append(Slab(r.query, r.answer, config.noise));
    return sys;
  }
};

struct RoundStat {
  enum class Kind { skipped, unbounded, ok };
  Kind kind = Kind::skipped;
  double radius = 0.0;
  double diameter = 0.0;
};

struct GameTrace {
  GameConfig config;
  std::vector<RoundRecord> rounds;
  std::vector<RoundStat> per_round;
  std::optional<Vector> estimate;
  std::optional<Vector> revealed;
  bool infeasible = false;

  SlabSystem slab_system() const {
    SlabSystem sys(config.dimension);
    for (const auto& r : rounds) sys.append(Slab(r.query, r.answer, config.noise));
    return sys;
  }
};

class Reconstructor {
 public:
  virtual ~Reconstructor() = default;
  virtual void init(const GameConfig&) {}
  virtual Direction next_query(const GameState& state) = 0;
  virtual Vector finish(const GameState& state) = 0;
};

class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual void init(const GameConfig&) {}
  virtual double answer(const Direction& query, const GameState& state) = 0;
  // A feasible secret, chosen post hoc; must lie in the final region.
  virtual Vector reveal(const GameState& state) = 0;
};

// Runs the T-round protocol. Region stats are recomputed every
// config.metrics_every rounds (always on the final round). The revealed
// secret is checked against every slab; a violation marks the trace
// infeasible.
GameTrace run_game(Reconstructor& rec, Adversary& adv, const GameConfig& cfg);

// Worst-case loss of the recorded estimate: sup over the final region of the
// distance to it (max over enumerated vertices). Infinity if the final region
// is unbounded; throws InfeasibleRegion on infeasible traces.
double proper_loss(const GameTrace& trace);

using Predictor = std::function<double(const Direction&)>;

// Worst prediction error over probe directions (a verified net, `probes`
// sampled directions, and the region's diameter direction), maximized over
// the region's vertices.
double improper_loss(const GameTrace& trace, const Predictor& predictor,
                     int probes);

// Scales answers, noise, estimate and per-round stats by `factor`;
// queries are unchanged.
GameTrace rescale_game(const GameTrace& trace, double factor);

// Versioned JSON document; reals serialized as decimal strings with 17
// significant digits so traces round-trip bit-exactly.
std::string trace_to_json(const GameTrace& trace);
GameTrace trace_from_json(const std::string& text);

}  // namespace recon
