// Command-line surface: simulate | sweep | net | verify | fit.
// Exit codes: 0 success, 2 invariant breach, 3 config error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "recon/experiments.hpp"
#include "recon/jung_lab.hpp"
#include "recon/rng.hpp"
#include "recon/sphere_nets.hpp"
#include "recon/strategies.hpp"

namespace fs = std::filesystem;
using namespace recon;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBreach = 2;
constexpr int kExitConfig = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path);
  out << text;
}

std::string real17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// FNV-1a over spec + seed: content-addressed trace filenames.
std::string content_hash(const std::string& text, std::uint64_t seed) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](unsigned char c) {
    h ^= c;
    h *= 0x100000001b3ULL;
  };
  for (unsigned char c : text) mix(c);
  for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(seed >> (8 * i)));
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int cmd_simulate(const std::string& config_path, std::uint64_t seed_override,
                 bool has_seed, int metrics_every, const std::string& out_dir) {
  ExperimentSpec spec = spec_from_json(slurp(config_path));
  const std::uint64_t seed = has_seed ? seed_override : spec.seeds.front();
  if (metrics_every >= 0) spec.metrics_every = metrics_every;

  auto rec = make_reconstructor(spec.reconstructor);
  auto adv = make_adversary(spec.adversary, spec.dimension, spec.noise);
  GameConfig cfg{spec.dimension, spec.noise, spec.rounds_grid.front(), seed,
                 spec.metrics_every};
  const GameTrace trace = run_game(*rec, *adv, cfg);
  const std::string doc = trace_to_json(trace);
  std::cout << doc << "\n";
  if (!out_dir.empty())
    spill(fs::path(out_dir) /
              (content_hash(spec_to_json(spec), seed) + ".trace.json"),
          doc);
  return trace.infeasible ? kExitBreach : kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              int jobs) {
  const std::string spec_text = slurp(config_path);
  const nlohmann::json j = nlohmann::json::parse(spec_text);
  const std::string kind = j.value("kind", std::string("game"));

  if (kind == "dimension") {
    const auto rows = dimension_experiment(
        j.at("dGrid").get<std::vector<int>>(),
        j.at("tGrid").get<std::vector<int>>(), j.value("trials", 100),
        j.value("seed", 1ULL));
    const std::string csv = dimension_csv(rows);
    std::cout << csv;
    if (!out_dir.empty()) spill(fs::path(out_dir) / "dimension.csv", csv);
    return kExitOk;
  }
  if (kind == "asymptotic") {
    const auto rows = asymptotic_experiment(
        j.at("dimension").get<int>(), j.at("deltas").get<std::vector<double>>(),
        j.at("alphas").get<std::vector<double>>(), j.value("seed", 1ULL));
    const std::string csv = asymptotic_csv(rows);
    std::cout << csv;
    if (!out_dir.empty()) spill(fs::path(out_dir) / "asymptotic.csv", csv);
    for (const auto& r : rows)
      if (!r.squeeze) return kExitBreach;
    return kExitOk;
  }

  const ExperimentSpec spec = spec_from_json(spec_text);
  const SweepResult result = sweep(spec, jobs);
  const std::string csv = sweep_csv(result);
  std::cout << csv;
  if (!out_dir.empty()) {
    spill(fs::path(out_dir) / (spec.name + ".csv"), csv);
    for (std::size_t i = 0; i < result.traces.size(); ++i)
      spill(fs::path(out_dir) /
                (content_hash(spec_to_json(spec), result.rows[i].seed) + "_" +
                 std::to_string(result.rows[i].rounds) + ".trace.json"),
            trace_to_json(result.traces[i]));
  }
  for (const auto& r : result.rows)
    if (r.status == "infeasible") return kExitBreach;
  return kExitOk;
}

int cmd_net(int d, double alpha, std::uint64_t seed, std::uint64_t samples,
            const std::string& out_path) {
  CoverNet net = build_cover(d, alpha, seed);
  if (samples > 0) {
    const CoverCheck check = verify_cover(net, samples, seed ^ 0xabcd);
    net.verified = check.covers;
    net.certificate_samples = samples;
    net.certificate_gap = check.worst_gap;
  }
  std::ostringstream out;
  out << "# d=" << d << " alpha=" << real17(alpha)
      << " verified=" << (net.verified ? "true" : "false") << " seed=" << seed
      << "\n";
  for (const auto& dir : net.directions) {
    for (int k = 0; k < dir.dim(); ++k)
      out << (k ? "," : "") << real17(dir.vec()[k]);
    out << "\n";
  }
  std::cout << out.str();
  if (!out_path.empty()) spill(out_path, out.str());
  return net.verified ? kExitOk : kExitBreach;
}

int cmd_fit(const std::string& csv_path, const std::string& model_name,
            const std::string& out_path) {
  RateModel model;
  if (model_name == "doublyExponential")
    model = RateModel::doubly_exponential;
  else if (model_name == "powerLaw")
    model = RateModel::power_law;
  else
    throw std::invalid_argument("model must be doublyExponential or powerLaw");
  const RateFit fit = fit_rate(csv_series(slurp(csv_path)), model);
  const std::string doc = ratefit_to_json(fit);
  std::cout << doc << "\n";
  if (!out_path.empty()) spill(out_path, doc);
  return kExitOk;
}

// Monte Carlo suites for the simplex-stability toolbox: bilipschitz sweep,
// rotation contract, fit residuals under perturbation.
int cmd_verify(std::uint64_t seed, int cases, const std::string& out_path) {
  nlohmann::json report;
  report["seed"] = seed;
  bool all_ok = true;

  for (int d : {2, 3}) {
    Rng rng(seed, 0x100 + d);
    const double bt = beta_test(d);
    int failures = 0;
    double worst_ratio = 0.0;
    nlohmann::json worst;
    for (int c = 0; c < cases; ++c) {
      const PointSet base = regular_simplex(d, 1.0, true);
      // small Euclidean motion: rotation angle and translation <= 1e-3
      const double angle = rng.uniform(0.0, 1e-3);
      const Vector shift = rng.uniform(0.0, 1e-3) * rng.unit_vector(d);
      const Vector u1 = rng.unit_vector(d);
      Vector u2 = rng.unit_vector(d);
      u2 -= u1.dot(u2) * u1;
      if (u2.norm() < 1e-6) continue;
      u2.normalize();
      PointSet moved;
      for (const auto& x : base) {
        const double a = u1.dot(x), b = u2.dot(x);
        Vector y = x + (a * std::cos(angle) - b * std::sin(angle) - a) * u1 +
                   (a * std::sin(angle) + b * std::cos(angle) - b) * u2 + shift;
        moved.push_back(y);
      }
      const auto chk = check_bilipschitz(RegularSimplex(base, 1.0),
                                         RegularSimplex(moved, 1.0));
      if (!chk.applicable) continue;
      const bool lower_ok = chk.beta <= 2.0 * chk.dist_h + 1e-9;
      if (!chk.holds || !lower_ok) {
        ++failures;
        all_ok = false;
      }
      if (chk.beta > 0 && chk.dist_h / chk.beta > worst_ratio) {
        worst_ratio = chk.dist_h / chk.beta;
        worst = {{"beta", chk.beta}, {"distH", chk.dist_h}};
      }
      (void)bt;
    }
    report["bilipschitz_d" + std::to_string(d)] = {
        {"cases", cases}, {"failures", failures}, {"worst", worst}};
  }

  // Rotation isometry contract.
  for (int d : {2, 3}) {
    Rng rng(seed, 0x200 + d);
    int failures = 0;
    for (int c = 0; c < cases; ++c) {
      PointSet verts = regular_simplex(d, 1.0, false);
      const Vector shift = verts[0];
      for (auto& v : verts) v -= shift;
      const double theta = rng.uniform(1e-4, 3.141592653589793 / 18.0);
      // admissible direction near x1
      const Vector& x1 = verts[1];
      Vector v = x1 + std::tan(theta * rng.uniform(0.0, 0.9)) *
                          rng.unit_vector(d);
      v.normalize();
      double maxdot = -1e9;
      for (const auto& xi : verts)
        for (const auto& xj : verts) maxdot = std::max(maxdot, v.dot(xi - xj));
      if (std::abs(maxdot - v.dot(x1)) > 1e-12 || v.dot(x1) <= std::cos(theta))
        continue;
      try {
        const auto rot = rotate_simplex(RegularSimplex(verts, 1.0),
                                        Direction(v), theta);
        const double got = v.dot(rot.vertices[1]);
        if (got > std::cos(theta) + 1e-9 ||
            got < std::cos(2.0 * theta) - 1e-9)
          ++failures;
      } catch (const std::exception&) {
        ++failures;
      }
    }
    if (failures > 0) all_ok = false;
    report["rotation_d" + std::to_string(d)] = {{"cases", cases},
                                                {"failures", failures}};
  }

  report["pass"] = all_ok;
  const std::string doc = report.dump(2);
  std::cout << doc << "\n";
  if (!out_path.empty()) spill(out_path, doc);
  return all_ok ? kExitOk : kExitBreach;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linear reconstruction game simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir, out_path, model_name = "powerLaw",
                                              csv_path;
  std::uint64_t seed = 1;
  bool seed_set = false;
  int metrics_every = -1, jobs = 1, dim = 2, cases = 10000;
  double alpha = 0.1;
  std::uint64_t samples = 100000;

  auto* sim = app.add_subcommand("simulate", "run one game, print trace JSON");
  sim->add_option("--config", config_path, "JSON experiment spec")->required();
  sim->add_option("--seed", seed, "seed override")->each([&](const std::string&) {
    seed_set = true;
  });
  sim->add_option("--metrics-every", metrics_every, "per-round metric stride");
  sim->add_option("--out", out_dir, "output directory");

  auto* sw = app.add_subcommand("sweep", "spec file -> CSV + JSON traces");
  sw->add_option("--config", config_path, "JSON experiment spec")->required();
  sw->add_option("--out", out_dir, "output directory");
  sw->add_option("--jobs", jobs, "worker pool size");

  auto* net = app.add_subcommand("net", "build/verify covering nets");
  net->add_option("--dim", dim, "dimension")->required();
  net->add_option("--alpha", alpha, "angular radius")->required();
  net->add_option("--seed", seed, "seed");
  net->add_option("--verify-samples", samples, "Monte Carlo samples");
  net->add_option("--out", out_path, "output CSV path");

  auto* fit = app.add_subcommand("fit", "CSV -> RateFit JSON");
  fit->add_option("--csv", csv_path, "sweep CSV path")->required();
  fit->add_option("--model", model_name, "doublyExponential | powerLaw");
  fit->add_option("--out", out_path, "output JSON path");

  auto* ver = app.add_subcommand("verify", "Monte Carlo geometry suites");
  ver->add_option("--seed", seed, "seed");
  ver->add_option("--cases", cases, "cases per suite");
  ver->add_option("--out", out_path, "report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (sim->parsed())
      return cmd_simulate(config_path, seed, seed_set, metrics_every, out_dir);
    if (sw->parsed()) return cmd_sweep(config_path, out_dir, jobs);
    if (net->parsed()) return cmd_net(dim, alpha, seed, samples, out_path);
    if (fit->parsed()) return cmd_fit(csv_path, model_name, out_path);
    if (ver->parsed()) return cmd_verify(seed, cases, out_path);
  } catch (const InvariantBreach& e) {
    std::cerr << "invariant breach: " << e.what() << "\n";
    return kExitBreach;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
