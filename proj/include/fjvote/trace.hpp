#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <ostream>
#include <vector>

#include "fjvote/voting.hpp"

namespace fjvote {

/// One issue of a simulation run.
struct IssueRecord {
  int issue = 0;
  Eigen::VectorXd opinions_initial;  // y(s, 0)
  Eigen::VectorXd stubbornness;      // theta(s)
  Eigen::VectorXd opinions_final;    // y_f(s)
  double vote = 0.0;                 // median of y_f(s)
  Eigen::VectorXd vote_distances;    // |y_f(s) - vote|; drives theta(s+1)
  double spread_initial = 0.0;       // d(s)  = max - min of y(s, 0)
  double spread_final = 0.0;         // d(s+1) = max - min of y_f(s)
};

struct IssueTrace {
  Eigen::VectorXd initial_opinions;
  Eigen::VectorXd initial_stubbornness;
  double initial_median = 0.0;
  /// Distance of every agent to the initial median. Recorded for the
  /// condition checkers; never used by any stubbornness update.
  Eigen::VectorXd initial_distances;

  StubbornnessPolicy policy;
  std::uint64_t seed = 0;
  double iterative_tol = 1e-12;

  std::vector<IssueRecord> records;

  /// d(0), d(1), ..., d(num_issues): spread at the start of every issue plus
  /// the spread after the last one. Invariant under the carryover rule
  /// y(s+1, 0) = y_f(s), which the records satisfy bit-exactly.
  std::vector<double> spread_sequence() const;

  /// One row per issue: s, y_1..y_n (final), theta_1..theta_n, mu, d
  /// with d = spread after the issue. 17 significant digits.
  void write_csv(std::ostream& out) const;
  void write_csv(const std::filesystem::path& file) const;

  nlohmann::json to_json() const;
};

}  // namespace fjvote
