#include "recon/game.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "recon/rng.hpp"
#include "recon/sphere_nets.hpp"

namespace recon {

GameTrace run_game(Reconstructor& rec, Adversary& adv, const GameConfig& cfg) {
  if (cfg.dimension < 1) throw std::invalid_argument("run_game: dimension >= 1");
  if (!(cfg.noise > 0.0)) throw std::invalid_argument("run_game: noise > 0");
  if (cfg.rounds < 0) throw std::invalid_argument("run_game: rounds >= 0");

  rec.init(cfg);
  adv.init(cfg);

  GameState state{cfg, {}};
  GameTrace trace;
  trace.config = cfg;
  SlabSystem sys(cfg.dimension);

  for (int t = 1; t <= cfg.rounds; ++t) {
    Direction query = rec.next_query(state);
    if (query.dim() != cfg.dimension)
      throw std::invalid_argument("run_game: query dimension mismatch");
    const double reply = adv.answer(query, state);
    state.rounds.push_back(RoundRecord{query, reply});
    sys.append(Slab(query, reply, cfg.noise));

    RoundStat stat;
    const bool due =
        (cfg.metrics_every > 0 && t % cfg.metrics_every == 0) || t == cfg.rounds;
    if (due) {
      const VertexCache cache = enumerate_vertices(sys);
      if (!cache.feasible) {
        trace.rounds = state.rounds;
        trace.per_round.push_back(stat);
        trace.infeasible = true;
        return trace;
      }
      if (!cache.bounded) {
        stat.kind = RoundStat::Kind::unbounded;
      } else {
        stat.kind = RoundStat::Kind::ok;
        stat.radius = region_radius(cache).ball.radius;
        stat.diameter = region_diameter(cache);
      }
    }
    trace.per_round.push_back(stat);
  }

  trace.rounds = state.rounds;
  trace.estimate = rec.finish(state);
  trace.revealed = adv.reveal(state);
  if (!sys.contains(*trace.revealed)) trace.infeasible = true;
  return trace;
}

double proper_loss(const GameTrace& trace) {
  if (!trace.estimate)
    throw std::logic_error("proper_loss: trace has no estimate");
  const VertexCache cache = enumerate_vertices(trace.slab_system());
  if (!cache.feasible) throw InfeasibleRegion();
  if (!cache.bounded) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const auto& v : cache.vertices)
    worst = std::max(worst, (v - *trace.estimate).norm());
  return worst;
}

double improper_loss(const GameTrace& trace, const Predictor& predictor,
                     int probes) {
  if (probes < 1000)
    throw std::invalid_argument("improper_loss: probes must be >= 1e3");
  const VertexCache cache = enumerate_vertices(trace.slab_system());
  if (!cache.feasible) throw InfeasibleRegion();
  if (!cache.bounded) throw UnboundedRegion();

  const int d = trace.config.dimension;
  std::vector<Direction> dirs;

  const double alpha =
      d == 2 ? std::max(3.141592653589793 / probes, 0.01) : 0.3;
  if (d >= 2) {
    const CoverNet& net = cached_cover(d, alpha, 0x9e77);
    dirs.insert(dirs.end(), net.directions.begin(), net.directions.end());
  }
  Rng rng(trace.config.seed, 0x18093);
  for (int i = 0; i < probes; ++i) dirs.push_back(Direction(rng.unit_vector(d)));

  // Diameter direction: for the midpoint rule this probe makes the loss hit
  // diam/2 exactly.
  if (cache.vertices.size() >= 2) {
    const auto [i, j] = diameter_pair(cache.vertices);
    const Vector diff = cache.vertices[i] - cache.vertices[j];
    if (diff.norm() > kEpsUnit) {
      dirs.push_back(Direction::of(diff));
      dirs.push_back(Direction::of(-diff));
    }
  }

  double worst = 0.0;
  for (const auto& v : dirs) {
    const auto [lo, hi] = project_interval(cache.vertices, v);
    const double guess = predictor(v);
    worst = std::max({worst, std::abs(guess - lo), std::abs(guess - hi)});
  }
  return worst;
}

GameTrace rescale_game(const GameTrace& trace, double factor) {
  if (!(factor > 0.0))
    throw std::invalid_argument("rescale_game: factor must be > 0");
  GameTrace out = trace;
  out.config.noise *= factor;
  for (auto& r : out.rounds) r.answer *= factor;
  for (auto& s : out.per_round) {
    if (s.kind == RoundStat::Kind::ok) {
      s.radius *= factor;
      s.diameter *= factor;
    }
  }
  if (out.estimate) *out.estimate *= factor;
  if (out.revealed) *out.revealed *= factor;
  return out;
}

namespace {

std::string real17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

nlohmann::json vec_json(const Vector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(real17(v[i]));
  return a;
}

Vector vec_parse(const nlohmann::json& a) {
  Vector v(static_cast<int>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    v[static_cast<int>(i)] = std::stod(a[i].get<std::string>());
  return v;
}

}  // namespace

std::string trace_to_json(const GameTrace& trace) {
  nlohmann::json j;
  j["version"] = 1;
  j["config"] = {{"dimension", trace.config.dimension},
                 {"noise", real17(trace.config.noise)},
                 {"rounds", trace.config.rounds},
                 {"seed", trace.config.seed},
                 {"metricsEvery", trace.config.metrics_every}};
  nlohmann::json rounds = nlohmann::json::array();
  for (const auto& r : trace.rounds)
    rounds.push_back(
        {{"query", vec_json(r.query.vec())}, {"answer", real17(r.answer)}});
  j["rounds"] = std::move(rounds);

  nlohmann::json per = nlohmann::json::array();
  for (const auto& s : trace.per_round) {
    switch (s.kind) {
      case RoundStat::Kind::skipped:
        per.push_back("skipped");
        break;
      case RoundStat::Kind::unbounded:
        per.push_back({{"radius", "unbounded"}, {"diameter", "unbounded"}});
        break;
      case RoundStat::Kind::ok:
        per.push_back({{"radius", real17(s.radius)},
                       {"diameter", real17(s.diameter)}});
        break;
    }
  }
  j["perRound"] = std::move(per);
  j["estimate"] =
      trace.estimate ? vec_json(*trace.estimate) : nlohmann::json(nullptr);
  j["revealed"] =
      trace.revealed ? vec_json(*trace.revealed) : nlohmann::json(nullptr);
  j["infeasible"] = trace.infeasible;
  return j.dump(2);
}

GameTrace trace_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("version").get<int>() != 1)
    throw std::invalid_argument("trace_from_json: unsupported version");
  GameTrace trace;
  const auto& c = j.at("config");
  trace.config.dimension = c.at("dimension").get<int>();
  trace.config.noise = std::stod(c.at("noise").get<std::string>());
  trace.config.rounds = c.at("rounds").get<int>();
  trace.config.seed = c.at("seed").get<std::uint64_t>();
  trace.config.metrics_every = c.at("metricsEvery").get<int>();

  for (const auto& r : j.at("rounds"))
    trace.rounds.push_back(
        RoundRecord{Direction(vec_parse(r.at("query"))),
                    std::stod(r.at("answer").get<std::string>())});

  for (const auto& s : j.at("perRound")) {
    RoundStat stat;
    if (s.is_string()) {
      stat.kind = RoundStat::Kind::skipped;
    } else if (s.at("radius").get<std::string>() == "unbounded") {
      stat.kind = RoundStat::Kind::unbounded;
    } else {
      stat.kind = RoundStat::Kind::ok;
      stat.radius = std::stod(s.at("radius").get<std::string>());
      stat.diameter = std::stod(s.at("diameter").get<std::string>());
    }
    trace.per_round.push_back(stat);
  }
  if (!j.at("estimate").is_null()) trace.estimate = vec_parse(j.at("estimate"));
  if (!j.at("revealed").is_null()) trace.revealed = vec_parse(j.at("revealed"));
  trace.infeasible = j.at("infeasible").get<bool>();
  return trace;
}

}  // namespace recon
