#include "fjvote/experiments.hpp"

#include <atomic>
#include <fstream>
#include <functional>
#include <thread>
#include <vector>

#include "fjvote/dynamics.hpp"
#include "fjvote/errors.hpp"
#include "fjvote/format.hpp"
#include "fjvote/voting.hpp"

namespace fjvote {
namespace {

constexpr int kMaxResampleAttempts = 64;

double spread(const Eigen::VectorXd& y) {
  return y.maxCoeff() - y.minCoeff();
}

// Runs one trial to its classification. The spread is non-increasing from
// issue to issue (rows of the transfer map are convex weights), so dropping
// below the tolerance once settles the verdict.
bool trial_converges(const InfluenceGraph& g, OpinionState y,
                     StubbornnessProfile theta,
                     const StubbornnessPolicy& policy, int issues, double tol) {
  if ((theta.values.array() == 0.0).all()) {
    // Averaging-only dynamics on a strongly connected aperiodic graph; the
    // spread contracts to zero within the first issue.
    return true;
  }
  double d = spread(y.values);
  if (d < tol) return true;
  StubbornnessPolicy resolved = policy;
  if (resolved.kind == PolicyKind::kDecreasing &&
      resolved.initial_theta.size() == 0) {
    resolved.initial_theta = theta.values;
  }
  for (int s = 0; s < issues; ++s) {
    y = final_opinion_closed_form(g, theta, y);
    d = spread(y.values);
    if (d < tol) return true;
    const double mu = median_vote(y);
    theta = update_stubbornness(theta, distances(y, mu), resolved);
  }
  return d < tol;
}

void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
  workers = std::max(1, workers);
  if (workers == 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

void GridConfig::validate() const {
  if (n < 2) throw ConfigError("grid: n must be >= 2");
  if (resolution < 2) throw ConfigError("grid: resolution must be >= 2");
  if (trials < 1) throw ConfigError("grid: trials must be >= 1");
  if (issues < 1) throw ConfigError("grid: issues must be >= 1");
  if (!(c >= 0.0 && c <= 1.0)) throw ConfigError("grid: c must lie in [0, 1]");
  if (!(tolerance > 0.0)) throw ConfigError("grid: tolerance must be > 0");
}

GridConfig GridConfig::from_json(const nlohmann::json& j) {
  GridConfig cfg;
  const auto graph = j.value("graph", nlohmann::json::object());
  const auto policy = j.value("policy", nlohmann::json::object());
  const auto exp = j.value("experiment", nlohmann::json::object());
  cfg.n = graph.value("n", cfg.n);
  cfg.c = policy.value("c", cfg.c);
  cfg.resolution = exp.value("resolution", cfg.resolution);
  cfg.trials = exp.value("trials", cfg.trials);
  cfg.issues = exp.value("issues", cfg.issues);
  cfg.tolerance = exp.value("tolerance", cfg.tolerance);
  cfg.seed = exp.value("seed", cfg.seed);
  cfg.validate();
  return cfg;
}

nlohmann::json GridConfig::to_json() const {
  return {{"graph", {{"n", n}}},
          {"policy", {{"kind", "increasing"}, {"c", c}}},
          {"experiment",
           {{"resolution", resolution},
            {"trials", trials},
            {"issues", issues},
            {"tolerance", tolerance},
            {"seed", seed}}}};
}

std::pair<OpinionState, StubbornnessProfile> sample_cell_instance(
    double d0, double theta_max, int n, Rng& rng) {
  if (n < 2) throw TooSmall("sample_cell_instance needs n >= 2");
  if (!(d0 >= 0.0 && d0 <= 1.0) || !(theta_max >= 0.0 && theta_max <= 1.0)) {
    throw DomainViolation("d0 and theta_max must lie in [0, 1]");
  }
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y[i] = rng.uniform(0.0, d0);
  y[0] = 0.0;
  y[1] = d0;  // pin the extremes so the actual spread equals d0

  Eigen::VectorXd theta(n);
  for (int attempt = 0; attempt < kMaxResampleAttempts; ++attempt) {
    for (int i = 0; i < n; ++i) theta[i] = rng.uniform(0.0, theta_max);
    if ((theta.array() > 0.0).any()) break;
  }
  return {OpinionState{std::move(y)}, StubbornnessProfile{std::move(theta)}};
}

std::vector<GridCell> run_grid(const GridConfig& config, int workers) {
  config.validate();
  const int res = config.resolution;
  const double step = 1.0 / (res - 1);
  const InfluenceGraph g = InfluenceGraph::complete_uniform(config.n);
  const StubbornnessPolicy policy = StubbornnessPolicy::increasing(config.c);

  std::vector<GridCell> cells(static_cast<std::size_t>(res) * res);
  parallel_for(res * res, workers, [&](int k) {
    const int i = k / res;  // d0 axis
    const int j = k % res;  // theta_max axis
    GridCell cell;
    cell.d0 = i * step;
    cell.theta_max = j * step;
    cell.trials = config.trials;
    for (int t = 0; t < config.trials; ++t) {
      Rng rng = Rng::substream(config.seed, static_cast<std::uint64_t>(k),
                               static_cast<std::uint64_t>(t));
      auto [y, theta] =
          sample_cell_instance(cell.d0, cell.theta_max, config.n, rng);
      if (trial_converges(g, std::move(y), std::move(theta), policy,
                          config.issues, config.tolerance)) {
        ++cell.converged;
      }
    }
    cell.consensus = cell.converged == cell.trials;
    cells[static_cast<std::size_t>(k)] = std::move(cell);
  });
  return cells;
}

void write_grid_csv(const std::vector<GridCell>& cells, std::ostream& out) {
  out << "d0,theta_max,trials,converged,classification\n";
  for (const auto& cell : cells) {
    out << format_full(cell.d0) << ',' << format_full(cell.theta_max) << ','
        << cell.trials << ',' << cell.converged << ','
        << (cell.consensus ? "consensus" : "disagreement") << '\n';
  }
}

void write_grid_csv(const std::vector<GridCell>& cells,
                    const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot write grid file " + file.string());
  write_grid_csv(cells, out);
}

void SweepConfig::validate() const {
  if (n < 2) throw ConfigError("sweep: n must be >= 2");
  if (c_values.empty()) throw ConfigError("sweep: c_values must be nonempty");
  for (double c : c_values) {
    if (!(c >= -1.0 && c <= 0.0)) {
      throw ConfigError("sweep: every c must lie in [-1, 0]");
    }
  }
  if (!(epsilon > 0.0)) throw ConfigError("sweep: epsilon must be > 0");
  if (issues < 1) throw ConfigError("sweep: issues must be >= 1");
  if (!(density > 0.0 && density <= 1.0)) {
    throw ConfigError("sweep: density must lie in (0, 1]");
  }
}

SweepConfig SweepConfig::from_json(const nlohmann::json& j) {
  SweepConfig cfg;
  const auto graph = j.value("graph", nlohmann::json::object());
  const auto policy = j.value("policy", nlohmann::json::object());
  const auto exp = j.value("experiment", nlohmann::json::object());
  cfg.n = graph.value("n", cfg.n);
  cfg.density = graph.value("density", cfg.density);
  if (policy.contains("c_values")) {
    cfg.c_values = policy.at("c_values").get<std::vector<double>>();
  }
  cfg.epsilon = policy.value("epsilon", cfg.epsilon);
  cfg.issues = exp.value("issues", cfg.issues);
  cfg.seed = exp.value("seed", cfg.seed);
  cfg.validate();
  return cfg;
}

nlohmann::json SweepConfig::to_json() const {
  return {{"graph", {{"n", n}, {"density", density}}},
          {"policy",
           {{"kind", "decreasing"},
            {"c_values", c_values},
            {"epsilon", epsilon}}},
          {"experiment", {{"issues", issues}, {"seed", seed}}}};
}

std::vector<SweepSeries> run_sweep(const SweepConfig& config, int workers) {
  config.validate();
  const std::uint64_t graph_seed =
      Rng::substream(config.seed, 0x73776565, 0).next_u64();
  const InfluenceGraph g =
      InfluenceGraph::random_strongly_connected(config.n, graph_seed,
                                                config.density);

  // One realization shared by all c values (paired comparison).
  Rng rng = Rng::substream(config.seed, 0x73776565, 1);
  Eigen::VectorXd y0(config.n);
  for (int i = 0; i < config.n; ++i) y0[i] = rng.next_double();
  Eigen::VectorXd theta0(config.n);
  StubbornnessProfile profile;
  do {
    for (int i = 0; i < config.n; ++i) theta0[i] = rng.next_double();
    profile = StubbornnessProfile{theta0};
  } while (!profile.satisfies_initial_assumption());

  const int count = static_cast<int>(config.c_values.size());
  std::vector<SweepSeries> series(static_cast<std::size_t>(count));
  parallel_for(count, workers, [&](int k) {
    SweepSeries s;
    s.c = config.c_values[static_cast<std::size_t>(k)];
    const StubbornnessPolicy policy =
        StubbornnessPolicy::decreasing(s.c, config.epsilon);
    IssueTrace trace = run_issue_sequence(g, StubbornnessProfile{theta0},
                                          OpinionState{y0}, policy,
                                          config.issues);
    s.spread = trace.spread_sequence();
    series[static_cast<std::size_t>(k)] = std::move(s);
  });
  return series;
}

void write_sweep_csv(const std::vector<SweepSeries>& series,
                     std::ostream& out) {
  out << "c,s,d\n";
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.spread.size(); ++i) {
      out << format_full(s.c) << ',' << i << ',' << format_full(s.spread[i])
          << '\n';
    }
  }
}

void write_sweep_csv(const std::vector<SweepSeries>& series,
                     const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot write sweep file " + file.string());
  write_sweep_csv(series, out);
}

}  // namespace fjvote
