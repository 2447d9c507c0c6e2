#pragma once

#include <map>
#include <memory>
#include <string>

#include "recon/game.hpp"

namespace recon {

struct StrategySpec {
  std::string name;
  std::map<std::string, double> params;

  double param(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }
};

struct ExperimentSpec {
  std::string name = "experiment";
  int dimension = 2;
  double noise = 0.5;
  std::vector<int> rounds_grid;
  StrategySpec reconstructor;
  StrategySpec adversary;
  std::vector<std::uint64_t> seeds;
  int metrics_every = 0;
  bool improper = false;
  int probes = 2000;
};

ExperimentSpec spec_from_json(const std::string& text);
std::string spec_to_json(const ExperimentSpec& spec);

// Strategy registry used by the CLI and sweeps. Reconstructors:
// cover_net(alpha), robust_jung(beta, batches). Adversaries:
// midpoint_simplex(edge), truthful(secret0..), rotating_simplex(alpha0), zero.
std::unique_ptr<Reconstructor> make_reconstructor(const StrategySpec& spec);
std::unique_ptr<Adversary> make_adversary(const StrategySpec& spec,
                                          int dimension, double noise);

struct SweepRow {
  std::string name;
  int dimension = 0;
  double noise = 0.0;
  int rounds = 0;
  std::uint64_t seed = 0;
  double radius = 0.0;
  double diameter = 0.0;
  double excess = 0.0;
  std::string status;  // ok | converged | unbounded | infeasible
  double wallclock_ms = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<GameTrace> traces;  // spec-order, one per row
};

// Runs every (T, seed) cell. excess = radius - 2 Jung_d delta for proper
// games, improper midpoint error - delta otherwise. Cells run on `jobs`
// workers; rows are assembled in spec order.
SweepResult sweep(const ExperimentSpec& spec, int jobs = 1);

std::string sweep_csv(const SweepResult& result);

enum class RateModel { doubly_exponential, power_law };

struct RateFit {
  RateModel model = RateModel::power_law;
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  int points_used = 0;
};

// Least-squares fit on (T, excess) pairs. doubly_exponential regresses
// log2(-log2 excess) on T; power_law regresses log(excess) on log T.
// Converged cells (excess < 1e-12) and non-positive values are excluded;
// at least 4 usable points are required.
RateFit fit_rate(const std::vector<std::pair<double, double>>& series,
                 RateModel model);

// (T, excess) pairs of ok-status rows from a sweep CSV.
std::vector<std::pair<double, double>> csv_series(const std::string& csv_text);

std::string ratefit_to_json(const RateFit& fit);

struct DimensionRow {
  int dimension = 0;
  int rounds = 0;
  double delta = 0.0;
  int trials = 0;
  int successes = 0;      // both Gaussians feasible and ||X-Y|| >= sqrt(d)
  double empirical = 0.0;
  double analytic_floor = 0.0;
};

// Zero-answer adversary at delta = 2 sqrt(ln T): per dimension, the empirical
// probability that two independent standard Gaussians are both feasible and
// at distance >= sqrt(d). T is capped at 2^16 and d at 256.
std::vector<DimensionRow> dimension_experiment(const std::vector<int>& d_grid,
                                               const std::vector<int>& t_grid,
                                               int trials, std::uint64_t seed);

std::string dimension_csv(const std::vector<DimensionRow>& rows);

struct AsymptoticRow {
  int dimension = 0;
  double delta = 0.0;
  double alpha = 0.0;
  int rounds = 0;
  double loss = 0.0;
  double lower = 0.0;   // 2 Jung_d delta
  double upper = 0.0;   // 2 Jung_d delta / cos(alpha)
  double target = 0.0;  // sqrt(2d/(d+1)) delta
  bool squeeze = false;
};

// Cover-net reconstructor against the midpoint adversary on a regular simplex
// of edge 2 delta, for every (delta, alpha) pair; alpha grid must decrease.
std::vector<AsymptoticRow> asymptotic_experiment(
    int d, const std::vector<double>& deltas, const std::vector<double>& alphas,
    std::uint64_t seed);

std::string asymptotic_csv(const std::vector<AsymptoticRow>& rows);

}  // namespace recon
