#include <doctest.h>

#include <cmath>

#include "recon/game.hpp"
#include "recon/rng.hpp"
#include "recon/strategies.hpp"

using namespace recon;

namespace {

constexpr double kPi = 3.141592653589793;

Vector vec2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

Direction dir2(double angle) {
  return Direction(vec2(std::cos(angle), std::sin(angle)));
}

// Trace with a prescribed transcript (no live game needed).
GameTrace manual_trace(const std::vector<std::pair<Direction, double>>& rounds,
                       double noise, std::optional<Vector> estimate) {
  GameTrace trace;
  trace.config.dimension = rounds.empty() ? 2 : rounds[0].first.dim();
  trace.config.noise = noise;
  trace.config.rounds = static_cast<int>(rounds.size());
  for (const auto& [v, r] : rounds) trace.rounds.push_back(RoundRecord{v, r});
  trace.estimate = std::move(estimate);
  return trace;
}

GameTrace unit_square_trace(std::optional<Vector> estimate) {
  return manual_trace({{dir2(0.0), 0.0}, {dir2(kPi / 2.0), 0.0}}, 0.5,
                      std::move(estimate));
}

}  // namespace

TEST_CASE("T = 0: empty rounds, prior estimate, unbounded loss") {
  CoverNetReconstructor rec(0.3);
  FixedSetMidpointAdversary adv(PointSet{vec2(0.25, -0.125)});
  const GameTrace trace = run_game(rec, adv, GameConfig{2, 0.5, 0, 9, 1});
  CHECK(trace.rounds.empty());
  CHECK(trace.per_round.empty());
  REQUIRE(trace.estimate.has_value());
  CHECK(trace.estimate->norm() == doctest::Approx(0.0));
  CHECK(!trace.infeasible);
  CHECK(std::isinf(proper_loss(trace)));
}

TEST_CASE("truthful adversary + cover net: loss within the covering bound") {
  const double alpha = 0.1, noise = 0.5;
  CoverNetReconstructor rec(alpha);
  const Vector secret = vec2(0.3, -0.2);
  FixedSetMidpointAdversary adv(PointSet{secret});
  const int rounds = 32;  // ceil(pi/0.1)
  const GameTrace trace = run_game(rec, adv, GameConfig{2, noise, rounds, 5, 8});
  REQUIRE(!trace.infeasible);

  const double bound = jung_constant(2) * 2.0 * noise / std::cos(alpha);
  CHECK(bound == doctest::Approx(0.5803).epsilon(1e-3));
  CHECK(proper_loss(trace) <= bound + 1e-9);
  CHECK((*trace.estimate - secret).norm() <= bound + 1e-9);
  REQUIRE(trace.revealed.has_value());
  CHECK((*trace.revealed - secret).norm() < 1e-12);
}

TEST_CASE("fixed midpoint simplex adversary forces radius >= 2 Jung delta") {
  const double noise = 0.5;
  CoverNetReconstructor rec(0.15);
  FixedSetMidpointAdversary adv(regular_simplex(2, 2.0 * noise, true));
  const GameTrace trace = run_game(rec, adv, GameConfig{2, noise, 24, 3, 0});
  REQUIRE(!trace.infeasible);
  const RoundStat& last = trace.per_round.back();
  REQUIRE(last.kind == RoundStat::Kind::ok);
  CHECK(last.radius >= 2.0 * jung_constant(2) * noise - 1e-9);
  CHECK(proper_loss(trace) >= 2.0 * jung_constant(2) * noise - 1e-9);
}

TEST_CASE("per-round radius and diameter are non-increasing once bounded") {
  CoverNetReconstructor rec(0.2);
  FixedSetMidpointAdversary adv(regular_simplex(2, 1.0, true));
  const GameTrace trace = run_game(rec, adv, GameConfig{2, 0.5, 16, 21, 1});
  double prev_rad = 1e100, prev_diam = 1e100;
  for (const auto& s : trace.per_round) {
    if (s.kind != RoundStat::Kind::ok) continue;
    CHECK(s.radius <= prev_rad + 1e-9);
    CHECK(s.diameter <= prev_diam + 1e-9);
    CHECK(s.radius >= 0.5 * s.diameter - 1e-9);
    CHECK(s.radius <= jung_constant(2) * s.diameter + 1e-9);
    prev_rad = s.radius;
    prev_diam = s.diameter;
  }
}

TEST_CASE("proper loss: frozen square values and center optimality") {
  // estimate at the Chebyshev center of the unit square
  CHECK(proper_loss(unit_square_trace(vec2(0.0, 0.0))) ==
        doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-9));
  // estimate at a corner
  CHECK(proper_loss(unit_square_trace(vec2(0.5, 0.5))) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));

  // any estimate is at least the region radius; the center attains it
  Rng rng(61);
  const GameTrace base = unit_square_trace(vec2(0.0, 0.0));
  const double rad =
      region_radius(enumerate_vertices(base.slab_system())).ball.radius;
  for (int trial = 0; trial < 50; ++trial) {
    GameTrace t = unit_square_trace(Vector(rng.gaussian_vector(2)));
    CHECK(proper_loss(t) >= rad - 1e-9);
  }
}

TEST_CASE("improper loss: midpoint predictor achieves diam/2") {
  Rng rng(67);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + static_cast<int>(rng.next_u64() % 2);
    std::vector<std::pair<Direction, double>> rounds;
    for (int i = 0; i < 3 * d; ++i)
      rounds.emplace_back(Direction(rng.unit_vector(d)), rng.uniform(-0.3, 0.3));
    GameTrace trace = manual_trace(rounds, 1.0, Vector(Vector::Zero(d)));
    const VertexCache cache = enumerate_vertices(trace.slab_system());
    if (!cache.feasible || !cache.bounded) continue;
    const double diam = region_diameter(cache);
    const double err =
        improper_loss(trace, improper_midpoint_predictor(trace), 1000);
    CHECK(err == doctest::Approx(diam / 2.0).epsilon(1e-6));
  }
}

TEST_CASE("improper loss: constant-zero predictor on a far region") {
  // square centered at (10, 0): predictor 0 errs by about the distance
  GameTrace trace =
      manual_trace({{dir2(0.0), 10.0}, {dir2(kPi / 2.0), 0.0}}, 0.5,
                   Vector(vec2(10.0, 0.0)));
  const VertexCache cache = enumerate_vertices(trace.slab_system());
  const double diam = region_diameter(cache);
  const double err = improper_loss(
      trace, [](const Direction&) { return 0.0; }, 1000);
  CHECK(err >= 10.0 - diam / 2.0 - 1e-9);
}

TEST_CASE("improper loss refuses unbounded regions and tiny probe budgets") {
  GameTrace trace = manual_trace({{dir2(0.0), 0.0}}, 0.5, Vector(vec2(0, 0)));
  CHECK_THROWS_AS(
      improper_loss(trace, [](const Direction&) { return 0.0; }, 1000),
      UnboundedRegion);
  GameTrace square = unit_square_trace(vec2(0, 0));
  CHECK_THROWS_AS(
      improper_loss(square, [](const Direction&) { return 0.0; }, 10),
      std::invalid_argument);
}

TEST_CASE("rescale: identity at 1, linear at 2, replay matches a native run") {
  CoverNetReconstructor rec1(0.12);
  FixedSetMidpointAdversary adv1(regular_simplex(2, 2.0, true));  // delta = 1
  const GameTrace at1 = run_game(rec1, adv1, GameConfig{2, 1.0, 27, 77, 1});
  REQUIRE(!at1.infeasible);

  const GameTrace same = rescale_game(at1, 1.0);
  CHECK(trace_to_json(same) == trace_to_json(at1));

  const double loss1 = proper_loss(at1);
  const GameTrace doubled = rescale_game(at1, 2.0);
  CHECK(proper_loss(doubled) == doctest::Approx(2.0 * loss1).epsilon(1e-9));

  // independent run at delta = 1/2 matches the rescaled trace round-for-round
  CoverNetReconstructor rec2(0.12);
  FixedSetMidpointAdversary adv2(regular_simplex(2, 1.0, true));
  const GameTrace at_half = run_game(rec2, adv2, GameConfig{2, 0.5, 27, 77, 1});
  const GameTrace halved = rescale_game(at1, 0.5);
  REQUIRE(at_half.rounds.size() == halved.rounds.size());
  for (std::size_t t = 0; t < at_half.rounds.size(); ++t) {
    CHECK((at_half.rounds[t].query.vec() - halved.rounds[t].query.vec())
              .lpNorm<Eigen::Infinity>() < 1e-15);
    CHECK(at_half.rounds[t].answer ==
          doctest::Approx(halved.rounds[t].answer).epsilon(1e-12));
    if (at_half.per_round[t].kind == RoundStat::Kind::ok)
      CHECK(at_half.per_round[t].radius ==
            doctest::Approx(halved.per_round[t].radius).epsilon(1e-9));
  }
  CHECK(proper_loss(at_half) == doctest::Approx(0.5 * loss1).epsilon(1e-9));

  CHECK_THROWS_AS(rescale_game(at1, 0.0), std::invalid_argument);
}

TEST_CASE("trace JSON round-trips bit-exactly") {
  CoverNetReconstructor rec(0.25);
  RotatingSimplexAdversary adv(0.05);
  const GameTrace trace = run_game(rec, adv, GameConfig{2, 0.5, 9, 123, 2});
  const std::string doc = trace_to_json(trace);
  const GameTrace back = trace_from_json(doc);
  CHECK(trace_to_json(back) == doc);
  CHECK(back.config.seed == trace.config.seed);
  CHECK(back.rounds.size() == trace.rounds.size());
  for (std::size_t t = 0; t < trace.rounds.size(); ++t)
    CHECK(back.rounds[t].answer == trace.rounds[t].answer);  // exact
}

TEST_CASE("runs are deterministic given the seed") {
  auto play = [] {
    CoverNetReconstructor rec(0.2);
    FixedSetMidpointAdversary adv(regular_simplex(2, 1.0, true));
    return trace_to_json(run_game(rec, adv, GameConfig{2, 0.5, 18, 42, 3}));
  };
  CHECK(play() == play());
}
