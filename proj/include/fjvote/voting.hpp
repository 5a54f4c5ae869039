#pragma once

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "fjvote/types.hpp"

namespace fjvote {

enum class PolicyKind { kIncreasing, kDecreasing, kConstant };

/// Rule updating stubbornness from the per-agent distance to the vote.
///
///   increasing:  theta' = theta + c (1 - theta) delta,        c in [0, 1]
///   decreasing:  theta' = theta - |c| theta delta + eps theta(0),
///                clamped to [0, 1 - 1e-12],                   c in [-1, 0]
///   constant:    theta' = theta
///
/// The decreasing rule subtracts |c| theta delta: the source recursion is
/// written with a -c factor and c <= 0, which read literally would increase
/// stubbornness; only the decreasing reading matches its stated behavior.
struct StubbornnessPolicy {
  PolicyKind kind = PolicyKind::kConstant;
  double c = 0.0;
  double epsilon = 1e-6;
  /// Snapshot of theta(0); the decreasing rule anchors on it. Filled in by
  /// run_issue_sequence when empty.
  Eigen::VectorXd initial_theta;

  static StubbornnessPolicy increasing(double c);
  static StubbornnessPolicy decreasing(double c, double epsilon = 1e-6);
  static StubbornnessPolicy constant();

  /// Throws PolicyError when c (or epsilon) is out of range for the kind.
  void validate() const;

  static StubbornnessPolicy from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Median of the opinion vector: middle order statistic for odd n, midpoint
/// of the two central order statistics for even n.
double median_vote(const OpinionState& y);

/// Entry i is |y_i - mu|.
Eigen::VectorXd distances(const OpinionState& y, double mu);

StubbornnessProfile update_stubbornness(const StubbornnessProfile& theta,
                                        const Eigen::VectorXd& delta,
                                        const StubbornnessPolicy& policy);

}  // namespace fjvote
