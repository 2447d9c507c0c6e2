#include "recon/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "recon/rng.hpp"
#include "recon/sphere_nets.hpp"
#include "recon/strategies.hpp"

namespace recon {

namespace {

std::string real17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

StrategySpec strategy_from_json(const nlohmann::json& j) {
  StrategySpec s;
  s.name = j.at("name").get<std::string>();
  if (j.contains("params"))
    for (const auto& [k, v] : j.at("params").items())
      s.params[k] = v.get<double>();
  return s;
}

nlohmann::json strategy_to_json(const StrategySpec& s) {
  nlohmann::json j;
  j["name"] = s.name;
  j["params"] = nlohmann::json::object();
  for (const auto& [k, v] : s.params) j["params"][k] = v;
  return j;
}

}  // namespace

ExperimentSpec spec_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  ExperimentSpec spec;
  spec.name = j.value("name", std::string("experiment"));
  spec.dimension = j.at("dimension").get<int>();
  spec.noise = j.at("noise").get<double>();
  spec.rounds_grid = j.at("roundsGrid").get<std::vector<int>>();
  if (spec.rounds_grid.empty())
    throw std::invalid_argument("spec: roundsGrid must be nonempty");
  spec.reconstructor = strategy_from_json(j.at("reconstructor"));
  spec.adversary = strategy_from_json(j.at("adversary"));
  spec.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  if (spec.seeds.empty())
    throw std::invalid_argument("spec: seeds must be nonempty");
  spec.metrics_every = j.value("metricsEvery", 0);
  spec.improper = j.value("improper", false);
  spec.probes = j.value("probes", 2000);
  return spec;
}

std::string spec_to_json(const ExperimentSpec& spec) {
  nlohmann::json j;
  j["name"] = spec.name;
  j["dimension"] = spec.dimension;
  j["noise"] = spec.noise;
  j["roundsGrid"] = spec.rounds_grid;
  j["reconstructor"] = strategy_to_json(spec.reconstructor);
  j["adversary"] = strategy_to_json(spec.adversary);
  j["seeds"] = spec.seeds;
  j["metricsEvery"] = spec.metrics_every;
  j["improper"] = spec.improper;
  j["probes"] = spec.probes;
  return j.dump(2);
}

std::unique_ptr<Reconstructor> make_reconstructor(const StrategySpec& spec) {
  if (spec.name == "cover_net")
    return std::make_unique<CoverNetReconstructor>(spec.param("alpha", 0.1));
  if (spec.name == "robust_jung")
    return std::make_unique<RobustJungReconstructor>(
        spec.param("beta", 0.0),
        static_cast<int>(spec.param("batches", 1 << 20)));
  throw std::invalid_argument("unknown reconstructor: " + spec.name);
}

std::unique_ptr<Adversary> make_adversary(const StrategySpec& spec,
                                          int dimension, double noise) {
  if (spec.name == "midpoint_simplex") {
    const double edge = spec.param("edge", 2.0 * noise);
    return std::make_unique<FixedSetMidpointAdversary>(
        regular_simplex(dimension, edge, /*centered=*/true));
  }
  if (spec.name == "truthful") {
    Vector secret = Vector::Zero(dimension);
    for (int k = 0; k < dimension; ++k)
      secret[k] = spec.param("secret" + std::to_string(k), 0.0);
    return std::make_unique<FixedSetMidpointAdversary>(PointSet{secret});
  }
  if (spec.name == "rotating_simplex")
    return std::make_unique<RotatingSimplexAdversary>(
        spec.param("alpha0", 0.05));
  if (spec.name == "zero") return std::make_unique<ZeroGaussianAdversary>();
  throw std::invalid_argument("unknown adversary: " + spec.name);
}

namespace {

SweepRow run_cell(const ExperimentSpec& spec, int rounds, std::uint64_t seed,
                  GameTrace& trace_out) {
  SweepRow row;
  row.name = spec.name;
  row.dimension = spec.dimension;
  row.noise = spec.noise;
  row.rounds = rounds;
  row.seed = seed;

  const auto t0 = std::chrono::steady_clock::now();
  auto rec = make_reconstructor(spec.reconstructor);
  auto adv = make_adversary(spec.adversary, spec.dimension, spec.noise);
  GameConfig cfg{spec.dimension, spec.noise, rounds, seed, spec.metrics_every};
  GameTrace trace = run_game(*rec, *adv, cfg);

  if (trace.infeasible) {
    row.status = "infeasible";
  } else {
    const RoundStat* final_stat =
        trace.per_round.empty() ? nullptr : &trace.per_round.back();
    if (!final_stat || final_stat->kind != RoundStat::Kind::ok) {
      row.status = "unbounded";
    } else {
      row.radius = final_stat->radius;
      row.diameter = final_stat->diameter;
      if (spec.improper) {
        const double err =
            improper_loss(trace, improper_midpoint_predictor(trace), spec.probes);
        row.excess = err - spec.noise;
      } else {
        row.excess =
            row.radius - 2.0 * jung_constant(spec.dimension) * spec.noise;
      }
      row.status = row.excess < 1e-12 ? "converged" : "ok";
    }
  }
  row.wallclock_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
  trace_out = std::move(trace);
  return row;
}

}  // namespace

SweepResult sweep(const ExperimentSpec& spec, int jobs) {
  struct Cell {
    int rounds;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (int rounds : spec.rounds_grid)
    for (std::uint64_t seed : spec.seeds) cells.push_back({rounds, seed});

  SweepResult result;
  result.rows.resize(cells.size());
  result.traces.resize(cells.size());

  jobs = std::max(1, jobs);
  std::atomic<std::size_t> cursor{0};
  std::vector<std::string> errors(cells.size());
  auto worker = [&]() {
    while (true) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= cells.size()) break;
      try {
        result.rows[i] =
            run_cell(spec, cells[i].rounds, cells[i].seed, result.traces[i]);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error("sweep cell failed: " + e);
  return result;
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "# recon-sweep-csv v1\n";
  out << "name,d,delta,T,seed,radius,diameter,excess,status,wallclock_ms\n";
  for (const auto& r : result.rows) {
    out << r.name << ',' << r.dimension << ',' << real17(r.noise) << ','
        << r.rounds << ',' << r.seed << ',';
    if (r.status == "ok" || r.status == "converged")
      out << real17(r.radius) << ',' << real17(r.diameter) << ','
          << real17(r.excess);
    else
      out << ",,";
    out << ',' << r.status << ',' << real17(r.wallclock_ms) << '\n';
  }
  return out.str();
}

RateFit fit_rate(const std::vector<std::pair<double, double>>& series,
                 RateModel model) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [t, y] : series) {
    if (!(y >= 1e-12)) continue;  // converged / nonpositive excess excluded
    if (model == RateModel::doubly_exponential && y >= 1.0) continue;
    if (model == RateModel::power_law && !(t > 0.0)) continue;
    double x, yy;
    if (model == RateModel::doubly_exponential) {
      x = t;
      yy = std::log2(-std::log2(y));
    } else {
      x = std::log(t);
      yy = std::log(y);
    }
    pts.emplace_back(x, yy);
  }
  if (pts.size() < 4)
    throw std::invalid_argument("fit_rate: needs at least 4 usable points");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(pts.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;

  double ss_res = 0, ss_tot = 0;
  const double mean = sy / n;
  for (const auto& [x, y] : pts) {
    ss_res += (y - (slope * x + intercept)) * (y - (slope * x + intercept));
    ss_tot += (y - mean) * (y - mean);
  }
  RateFit fit;
  fit.model = model;
  fit.slope = slope;
  fit.intercept = intercept;
  fit.r2 = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
  fit.points_used = static_cast<int>(pts.size());
  return fit;
}

std::vector<std::pair<double, double>> csv_series(const std::string& csv_text) {
  std::vector<std::pair<double, double>> series;
  std::istringstream in(csv_text);
  std::string line;
  int col_t = -1, col_excess = -1, col_status = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    if (col_t < 0) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == "T") col_t = static_cast<int>(i);
        if (fields[i] == "excess") col_excess = static_cast<int>(i);
        if (fields[i] == "status") col_status = static_cast<int>(i);
      }
      if (col_t < 0 || col_excess < 0)
        throw std::invalid_argument("csv_series: missing T/excess columns");
      continue;
    }
    if (col_status >= 0 && col_status < static_cast<int>(fields.size()) &&
        fields[col_status] != "ok")
      continue;
    if (col_excess >= static_cast<int>(fields.size()) ||
        fields[col_excess].empty())
      continue;
    series.emplace_back(std::stod(fields[col_t]),
                        std::stod(fields[col_excess]));
  }
  return series;
}

std::string ratefit_to_json(const RateFit& fit) {
  nlohmann::json j;
  j["model"] = fit.model == RateModel::doubly_exponential ? "doublyExponential"
                                                          : "powerLaw";
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["r2"] = fit.r2;
  j["pointsUsed"] = fit.points_used;
  return j.dump(2);
}

std::vector<DimensionRow> dimension_experiment(const std::vector<int>& d_grid,
                                               const std::vector<int>& t_grid,
                                               int trials, std::uint64_t seed) {
  if (trials < 30)
    throw std::invalid_argument("dimension_experiment: trials >= 30");
  if (t_grid.size() != d_grid.size() && t_grid.size() != 1)
    throw std::invalid_argument(
        "dimension_experiment: t_grid must match d_grid or be a single value");

  std::vector<DimensionRow> rows;
  for (std::size_t gi = 0; gi < d_grid.size(); ++gi) {
    const int d = std::min(d_grid[gi], 256);
    const int rounds =
        std::min(t_grid.size() == 1 ? t_grid[0] : t_grid[gi], 1 << 16);
    DimensionRow row;
    row.dimension = d;
    row.rounds = rounds;
    row.delta = 2.0 * std::sqrt(std::log(static_cast<double>(rounds)));
    row.trials = trials;
    row.analytic_floor =
        1.0 - 2.0 / rounds -
        std::pow(std::exp(0.5) / 2.0, static_cast<double>(d) / 2.0);

    Rng dir_rng(seed ^ static_cast<std::uint64_t>(d) * 0x9e37, 0xd1);
    std::vector<Eigen::VectorXd> queries(rounds);
    for (auto& q : queries) q = dir_rng.unit_vector(d);

    Rng trial_rng(seed ^ static_cast<std::uint64_t>(d) * 0x51ed, 0xd2);
    const double sqrt_d = std::sqrt(static_cast<double>(d));
    for (int trial = 0; trial < trials; ++trial) {
      const Vector x = trial_rng.gaussian_vector(d);
      const Vector y = trial_rng.gaussian_vector(d);
      bool feasible = true;
      for (const auto& q : queries) {
        if (std::abs(q.dot(x)) > row.delta || std::abs(q.dot(y)) > row.delta) {
          feasible = false;
          break;
        }
      }
      if (feasible && (x - y).norm() >= sqrt_d) ++row.successes;
    }
    row.empirical = static_cast<double>(row.successes) / trials;
    rows.push_back(row);
  }
  return rows;
}

std::string dimension_csv(const std::vector<DimensionRow>& rows) {
  std::ostringstream out;
  out << "# recon-dimension-csv v1\n";
  out << "d,T,delta,trials,successes,empirical,floor\n";
  for (const auto& r : rows)
    out << r.dimension << ',' << r.rounds << ',' << real17(r.delta) << ','
        << r.trials << ',' << r.successes << ',' << real17(r.empirical) << ','
        << real17(r.analytic_floor) << '\n';
  return out.str();
}

std::vector<AsymptoticRow> asymptotic_experiment(
    int d, const std::vector<double>& deltas, const std::vector<double>& alphas,
    std::uint64_t seed) {
  for (std::size_t i = 1; i < alphas.size(); ++i)
    if (!(alphas[i] < alphas[i - 1]))
      throw std::invalid_argument("asymptotic_experiment: alpha grid must decrease");

  std::vector<AsymptoticRow> rows;
  for (double alpha : alphas) {
    const CoverNet net = build_cover(d, alpha, seed);
    for (double delta : deltas) {
      AsymptoticRow row;
      row.dimension = d;
      row.delta = delta;
      row.alpha = alpha;
      row.rounds = static_cast<int>(net.directions.size());

      CoverNetReconstructor rec(net);
      FixedSetMidpointAdversary adv(
          regular_simplex(d, 2.0 * delta, /*centered=*/true));
      GameConfig cfg{d, delta, row.rounds, seed, 0};
      const GameTrace trace = run_game(rec, adv, cfg);
      row.loss = proper_loss(trace);

      const double jung = jung_constant(d);
      row.lower = 2.0 * jung * delta;
      row.upper = 2.0 * jung * delta / std::cos(alpha);
      row.target = std::sqrt(2.0 * d / (d + 1.0)) * delta;
      row.squeeze =
          row.loss >= row.lower - kEpsNum && row.loss <= row.upper + kEpsNum;
      rows.push_back(row);
    }
  }
  return rows;
}

std::string asymptotic_csv(const std::vector<AsymptoticRow>& rows) {
  std::ostringstream out;
  out << "# recon-asymptotic-csv v1\n";
  out << "d,delta,alpha,T,loss,lower,upper,target,squeeze\n";
  for (const auto& r : rows)
    out << r.dimension << ',' << real17(r.delta) << ',' << real17(r.alpha)
        << ',' << r.rounds << ',' << real17(r.loss) << ',' << real17(r.lower)
        << ',' << real17(r.upper) << ',' << real17(r.target) << ','
        << (r.squeeze ? "true" : "false") << '\n';
  return out.str();
}

}  // namespace recon
