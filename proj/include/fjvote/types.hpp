#pragma once

#include <Eigen/Dense>

namespace fjvote {

/// Vector of agent opinions, each in [0, 1]. Ranges are checked only on
/// input validation; the within-issue update is a convex combination, so
/// evolution preserves the bounds analytically and is never clamped.
struct OpinionState {
  Eigen::VectorXd values;

  static OpinionState validated(Eigen::VectorXd v);
  int size() const { return static_cast<int>(values.size()); }
};

/// Per-agent stubbornness, each in [0, 1]. theta = 0 is a fully open agent,
/// theta = 1 a frozen one.
struct StubbornnessProfile {
  Eigen::VectorXd values;

  static StubbornnessProfile validated(Eigen::VectorXd v);
  int size() const { return static_cast<int>(values.size()); }

  /// All entries < 1 and at least one > 0. Required at the start of an issue
  /// sequence for the within-issue dynamics to have a unique fixed point.
  bool satisfies_initial_assumption() const;
};

}  // namespace fjvote
