// Command-line front end: simulate issue sequences, iterate the reduced
// planar models, check the consensus conditions, and run the grid / sweep
// experiment harnesses. Every run writes a manifest with the fully resolved
// config; re-running a subcommand from that manifest reproduces the outputs
// byte-exactly.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "fjvote/analysis.hpp"
#include "fjvote/dynamics.hpp"
#include "fjvote/errors.hpp"
#include "fjvote/experiments.hpp"
#include "fjvote/format.hpp"
#include "fjvote/graph.hpp"
#include "fjvote/manifest.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSimulation = 3;
constexpr int kExitIo = 4;

int default_workers() {
  if (const char* env = std::getenv("FJVOTE_WORKERS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

json read_json_file(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw fjvote::IoError("cannot read " + file.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw fjvote::ConfigError("invalid JSON in " + file.string() + ": " +
                              e.what());
  }
  return j;
}

// A config path may point at a bare config or at a manifest from an earlier
// run; in the latter case the embedded resolved config is used.
json resolve_config(const fs::path& file, const std::string& subcommand) {
  json j = read_json_file(file);
  if (fjvote::is_manifest(j)) {
    const auto m = fjvote::RunManifest::from_json(j);
    if (m.subcommand != subcommand) {
      throw fjvote::ConfigError("manifest was written by subcommand \"" +
                                m.subcommand + "\", not \"" + subcommand +
                                "\"");
    }
    return m.config;
  }
  return j;
}

void ensure_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw fjvote::IoError("cannot create output directory " + dir.string());
  }
}

Eigen::VectorXd vector_from_json(const json& arr, const std::string& name) {
  if (!arr.is_array() || arr.empty()) {
    throw fjvote::ConfigError("\"" + name + "\" must be a nonempty array");
  }
  Eigen::VectorXd v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = arr.at(i).get<double>();
  }
  return v;
}

fjvote::InfluenceGraph graph_from_config(const json& cfg) {
  if (!cfg.contains("graph")) {
    throw fjvote::ConfigError("config requires a \"graph\" section");
  }
  const json& g = cfg.at("graph");
  if (g.contains("weights")) {
    json with_n = g;
    if (!with_n.contains("n")) with_n["n"] = g.at("weights").size();
    return fjvote::InfluenceGraph::from_json(with_n);
  }
  if (g.contains("file")) {
    return fjvote::InfluenceGraph::load(g.at("file").get<std::string>());
  }
  if (g.contains("generator")) {
    const std::string gen = g.at("generator").get<std::string>();
    const int n = g.value("n", 8);
    if (gen == "complete_uniform") {
      return fjvote::InfluenceGraph::complete_uniform(n);
    }
    if (gen == "random_strongly_connected") {
      return fjvote::InfluenceGraph::random_strongly_connected(
          n, g.value("seed", std::uint64_t{1}), g.value("density", 0.5));
    }
    throw fjvote::ConfigError("unknown graph generator \"" + gen + "\"");
  }
  throw fjvote::ConfigError(
      "graph section requires \"weights\", \"file\" or \"generator\"");
}

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed_override;
  int workers = default_workers();
  double tol = 1e-3;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_config) {
  auto* c = cmd->add_option("--config", opts.config_path,
                            "JSON config (or manifest of a previous run)");
  if (needs_config) c->check(CLI::ExistingFile);
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--seed", opts.seed_override, "master seed override");
  cmd->add_option("--workers", opts.workers, "worker thread count");
  cmd->add_option("--tol", opts.tol, "consensus tolerance for verdicts");
}

int cmd_simulate(const CommonOpts& opts) {
  if (opts.config_path.empty()) {
    throw fjvote::ConfigError("simulate requires --config");
  }
  json cfg = resolve_config(opts.config_path, "simulate");
  if (opts.seed_override) cfg["seed"] = *opts.seed_override;

  const auto g = graph_from_config(cfg);
  if (!cfg.contains("initial_opinions") ||
      !cfg.contains("initial_stubbornness")) {
    throw fjvote::ConfigError(
        "config requires \"initial_opinions\" and \"initial_stubbornness\"");
  }
  const auto y0 = fjvote::OpinionState::validated(
      vector_from_json(cfg.at("initial_opinions"), "initial_opinions"));
  const auto theta0 = fjvote::StubbornnessProfile::validated(
      vector_from_json(cfg.at("initial_stubbornness"),
                       "initial_stubbornness"));
  const auto policy = fjvote::StubbornnessPolicy::from_json(
      cfg.value("policy", json{{"kind", "constant"}}));
  const int issues = cfg.value("issues", 100);
  if (issues < 0) throw fjvote::ConfigError("\"issues\" must be >= 0");

  auto trace = fjvote::run_issue_sequence(g, theta0, y0, policy, issues);
  trace.seed = cfg.value("seed", std::uint64_t{0});

  // Resolved config: inline the graph so reruns do not depend on generator
  // defaults or external files.
  json resolved = cfg;
  resolved["graph"] = g.to_json();
  resolved["policy"] = policy.to_json();
  resolved["issues"] = issues;

  const fs::path out(opts.out_dir);
  ensure_out_dir(out);
  trace.write_csv(out / "trace.csv");
  {
    std::ofstream jout(out / "trace.json");
    if (!jout) throw fjvote::IoError("cannot write trace.json");
    jout << trace.to_json().dump(2) << '\n';
  }
  fjvote::RunManifest manifest;
  manifest.subcommand = "simulate";
  manifest.seed = trace.seed;
  manifest.config = resolved;
  manifest.outputs = {"trace.csv", "trace.json"};
  manifest.save(out / "manifest.json");

  if (const auto s = fjvote::consensus_issue(trace, opts.tol)) {
    std::cout << "consensus reached at issue " << *s << " (spread < "
              << opts.tol << ")\n";
  } else {
    std::cout << "no consensus within " << issues << " issues (tolerance "
              << opts.tol << ")\n";
  }
  return kExitOk;
}

struct ReducedOpts {
  double delta0 = 0.0;
  double theta0 = 0.0;
  double c = 1.0;
  int steps = 100;
  std::string variant = "two-agent";
};

int cmd_reduced(const ReducedOpts& ropts, const CommonOpts& opts) {
  if (ropts.variant != "two-agent" && ropts.variant != "polarized") {
    throw fjvote::ConfigError("--variant must be two-agent or polarized");
  }
  const bool two_agent = ropts.variant == "two-agent";
  if (two_agent && ropts.delta0 > 0.5) {
    throw fjvote::DomainViolation(
        "two-agent variant requires delta0 in [0, 0.5]");
  }
  fjvote::ReducedState check{ropts.delta0, ropts.theta0};
  if (!check.in_extended_domain() || !(ropts.c >= 0.0 && ropts.c <= 1.0)) {
    throw fjvote::DomainViolation(
        "need delta0 in [0, 1], theta0 in [0, 1), c in [0, 1]");
  }

  const bool holds =
      fjvote::check_two_agent_condition(ropts.c, ropts.delta0, ropts.theta0);
  const double margin =
      fjvote::condition_margin(ropts.c, ropts.delta0, ropts.theta0);
  std::cout << "sufficient condition c*delta0 + theta0 < 1: "
            << (holds ? "holds" : "does not hold") << " (margin "
            << fjvote::format_full(margin) << ")\n";

  const fs::path out(opts.out_dir);
  ensure_out_dir(out);
  std::ofstream csv(out / "reduced.csv");
  if (!csv) throw fjvote::IoError("cannot write reduced.csv");
  csv << (two_agent ? "s,delta,theta\n" : "s,d,theta_bar\n");

  std::cout << "lyapunov (a = c):";
  if (two_agent) {
    fjvote::ReducedState st{ropts.delta0, ropts.theta0};
    for (int s = 0; s <= ropts.steps; ++s) {
      csv << s << ',' << fjvote::format_full(st.delta) << ','
          << fjvote::format_full(st.theta) << '\n';
      std::cout << ' '
                << fjvote::format_full(fjvote::lyapunov_value(ropts.c, st));
      if (s < ropts.steps) st = fjvote::two_agent_reduced_step(st, ropts.c);
    }
  } else {
    fjvote::PolarizedState st{ropts.delta0, ropts.theta0};
    for (int s = 0; s <= ropts.steps; ++s) {
      csv << s << ',' << fjvote::format_full(st.spread) << ','
          << fjvote::format_full(st.theta_bar) << '\n';
      std::cout << ' '
                << fjvote::format_full(ropts.c * st.spread + st.theta_bar);
      if (s < ropts.steps) st = fjvote::polarized_reduced_step(st, ropts.c);
    }
  }
  std::cout << '\n';

  fjvote::RunManifest manifest;
  manifest.subcommand = "reduced";
  manifest.config = {{"delta0", ropts.delta0},
                     {"theta0", ropts.theta0},
                     {"c", ropts.c},
                     {"steps", ropts.steps},
                     {"variant", ropts.variant}};
  manifest.outputs = {"reduced.csv"};
  manifest.save(out / "manifest.json");
  return kExitOk;
}

int cmd_check(double delta0, double theta0, double c) {
  if (!(delta0 >= 0.0 && delta0 <= 1.0) || !(theta0 >= 0.0 && theta0 < 1.0) ||
      !(c >= 0.0 && c <= 1.0)) {
    throw fjvote::DomainViolation(
        "need delta0 in [0, 1], theta0 in [0, 1), c in [0, 1]");
  }
  const bool holds = fjvote::check_two_agent_condition(c, delta0, theta0);
  const double margin = fjvote::condition_margin(c, delta0, theta0);
  std::cout << "sufficient condition c*delta0 + theta0 < 1: "
            << (holds ? "holds" : "does not hold") << '\n';
  std::cout << json{{"holds", holds}, {"margin", margin}}.dump() << '\n';
  return kExitOk;
}

int cmd_grid(const CommonOpts& opts) {
  fjvote::GridConfig cfg;
  if (!opts.config_path.empty()) {
    cfg = fjvote::GridConfig::from_json(
        resolve_config(opts.config_path, "grid"));
  }
  if (opts.seed_override) cfg.seed = *opts.seed_override;
  cfg.validate();

  const auto cells = fjvote::run_grid(cfg, opts.workers);

  const fs::path out(opts.out_dir);
  ensure_out_dir(out);
  fjvote::write_grid_csv(cells, out / "grid.csv");
  fjvote::RunManifest manifest;
  manifest.subcommand = "grid";
  manifest.seed = cfg.seed;
  manifest.config = cfg.to_json();
  manifest.outputs = {"grid.csv"};
  manifest.save(out / "manifest.json");

  int consensus_cells = 0;
  for (const auto& cell : cells) consensus_cells += cell.consensus ? 1 : 0;
  std::cout << cells.size() << " cells, " << consensus_cells
            << " classified consensus\n";
  return kExitOk;
}

int cmd_sweep(const CommonOpts& opts) {
  fjvote::SweepConfig cfg;
  if (!opts.config_path.empty()) {
    cfg = fjvote::SweepConfig::from_json(
        resolve_config(opts.config_path, "sweep"));
  }
  if (opts.seed_override) cfg.seed = *opts.seed_override;
  cfg.validate();

  const auto series = fjvote::run_sweep(cfg, opts.workers);

  const fs::path out(opts.out_dir);
  ensure_out_dir(out);
  fjvote::write_sweep_csv(series, out / "sweep.csv");
  fjvote::RunManifest manifest;
  manifest.subcommand = "sweep";
  manifest.seed = cfg.seed;
  manifest.config = cfg.to_json();
  manifest.outputs = {"sweep.csv"};
  manifest.save(out / "manifest.json");

  for (const auto& s : series) {
    std::cout << "c=" << s.c << ": final spread "
              << fjvote::format_full(s.spread.back()) << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concatenated opinion-dynamics simulator with median-vote "
               "stubbornness feedback"};
  app.require_subcommand(1);

  CommonOpts sim_opts;
  auto* sim = app.add_subcommand("simulate", "run an issue sequence");
  add_common(sim, sim_opts, true);

  ReducedOpts red;
  CommonOpts red_opts;
  auto* reduced =
      app.add_subcommand("reduced", "iterate a reduced planar model");
  reduced->add_option("delta0", red.delta0, "initial distance")->required();
  reduced->add_option("theta0", red.theta0, "initial stubbornness")
      ->required();
  reduced->add_option("c", red.c, "update gain")->required();
  reduced->add_option("--steps", red.steps, "number of issues");
  reduced->add_option("--variant", red.variant, "two-agent | polarized");
  add_common(reduced, red_opts, false);

  double chk_delta0 = 0.0, chk_theta0 = 0.0, chk_c = 1.0;
  auto* check = app.add_subcommand("check", "evaluate the consensus condition");
  check->add_option("delta0", chk_delta0, "initial distance")->required();
  check->add_option("theta0", chk_theta0, "initial stubbornness")->required();
  check->add_option("c", chk_c, "update gain")->required();

  CommonOpts grid_opts;
  auto* grid = app.add_subcommand("grid", "grid search over (d0, theta_max)");
  add_common(grid, grid_opts, true);

  CommonOpts sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "convergence-rate sweep over c");
  add_common(sweep, sweep_opts, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (sim->parsed()) return cmd_simulate(sim_opts);
    if (reduced->parsed()) return cmd_reduced(red, red_opts);
    if (check->parsed()) return cmd_check(chk_delta0, chk_theta0, chk_c);
    if (grid->parsed()) return cmd_grid(grid_opts);
    if (sweep->parsed()) return cmd_sweep(sweep_opts);
  } catch (const fjvote::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fjvote::SingularSystem& e) {
    std::cerr << "simulation error: " << e.what() << '\n';
    return kExitSimulation;
  } catch (const fjvote::NoConvergence& e) {
    std::cerr << "simulation error: " << e.what() << '\n';
    return kExitSimulation;
  } catch (const fjvote::DimensionMismatch& e) {
    std::cerr << "simulation error: " << e.what() << '\n';
    return kExitSimulation;
  } catch (const fjvote::Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
