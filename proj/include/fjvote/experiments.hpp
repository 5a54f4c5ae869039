#pragma once

#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <ostream>
#include <utility>
#include <vector>

#include "fjvote/graph.hpp"
#include "fjvote/rng.hpp"
#include "fjvote/types.hpp"

namespace fjvote {

/// Grid search over initial spread d0 and stubbornness cap theta_max on the
/// complete uniform graph with the increasing policy.
struct GridConfig {
  int n = 8;
  int resolution = 21;  // grid points per axis on [0, 1]
  int trials = 25;
  int issues = 500;
  double c = 1.0;
  double tolerance = 1e-3;  // spread below this at the final issue = converged
  std::uint64_t seed = 1;

  void validate() const;
  static GridConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct GridCell {
  double d0 = 0.0;
  double theta_max = 0.0;
  int trials = 0;
  int converged = 0;
  bool consensus = false;  // all trials converged
};

/// Opinions uniform on [0, d0] with agents 0 and 1 pinned to 0 and d0;
/// stubbornness uniform on [0, theta_max], resampled while all entries are
/// zero (a theta_max of 0 leaves every draw at zero, so resampling is capped;
/// callers treat the all-zero profile as the averaging-only case).
std::pair<OpinionState, StubbornnessProfile> sample_cell_instance(
    double d0, double theta_max, int n, Rng& rng);

/// Deterministic in config.seed regardless of worker count: every
/// (cell, trial) pair draws from its own counter-derived stream and results
/// are aggregated by cell index. Cells are ordered d0-major.
std::vector<GridCell> run_grid(const GridConfig& config, int workers = 1);

void write_grid_csv(const std::vector<GridCell>& cells, std::ostream& out);
void write_grid_csv(const std::vector<GridCell>& cells,
                    const std::filesystem::path& file);

/// Convergence-rate sweep over the decreasing-policy gain c. One random
/// strongly connected graph and one initial (y, theta) are sampled from the
/// master seed and reused across all c values.
struct SweepConfig {
  int n = 10;
  std::vector<double> c_values = {0.0, -0.2, -0.4, -0.6, -0.8, -1.0};
  double epsilon = 1e-6;
  int issues = 300;
  double density = 0.5;
  std::uint64_t seed = 1;

  void validate() const;
  static SweepConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct SweepSeries {
  double c = 0.0;
  std::vector<double> spread;  // d(0), ..., d(issues)
};

std::vector<SweepSeries> run_sweep(const SweepConfig& config, int workers = 1);

/// Long format, one row per (c, issue): c, s, d.
void write_sweep_csv(const std::vector<SweepSeries>& series, std::ostream& out);
void write_sweep_csv(const std::vector<SweepSeries>& series,
                     const std::filesystem::path& file);

}  // namespace fjvote
