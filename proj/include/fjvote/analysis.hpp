#pragma once

#include <optional>

#include "fjvote/trace.hpp"
#include "fjvote/types.hpp"

namespace fjvote {

/// Largest pairwise opinion distance, max(y) - min(y). Requires n >= 2.
double max_distance(const OpinionState& y);

/// First issue index s with d(s) < tol, scanning d(0), d(1), ... from the
/// trace; empty when the spread never drops below tol.
std::optional<int> consensus_issue(const IssueTrace& trace, double tol);

/// State of the planar reduction of the symmetric two-agent problem:
/// delta is the distance to the median, theta the shared stubbornness.
/// The two-agent domain restricts delta to [0, 0.5]; the extended domain
/// (one-versus-all reading) allows delta in [0, 1].
struct ReducedState {
  double delta = 0.0;
  double theta = 0.0;

  bool in_two_agent_domain() const {
    return delta >= 0.0 && delta <= 0.5 && theta >= 0.0 && theta < 1.0;
  }
  bool in_extended_domain() const {
    return delta >= 0.0 && delta <= 1.0 && theta >= 0.0 && theta < 1.0;
  }
};

/// Conservative polarized reduction: d is the maximum pairwise distance,
/// theta_bar the shared worst-case stubbornness of the two extreme agents.
struct PolarizedState {
  double spread = 0.0;     // d
  double theta_bar = 0.0;  // worst-case shared stubbornness
};

/// delta' = theta delta, theta' = theta + c (1 - theta) delta theta.
/// Throws DomainViolation outside the extended domain or for c outside [0, 1].
ReducedState two_agent_reduced_step(const ReducedState& state, double c);

/// d' = theta_bar d, theta_bar' = theta_bar + c (1 - theta_bar) d'.
/// The gain c multiplies the increment so that the recursion matches the
/// sufficient condition c d(0) + theta_max < 1; the source recursion is the
/// c = 1 case.
PolarizedState polarized_reduced_step(const PolarizedState& state, double c);

/// V(delta, theta) = a delta + theta. Decreases along reduced trajectories
/// inside the level set V < 1 whenever a >= c; the per-step decrement is
/// delta (1 - theta) (c theta - a).
double lyapunov_value(double a, const ReducedState& state);

/// Sufficient condition for the reduced trajectory to reach consensus:
/// c delta0 + theta0 < 1 (valid on the extended domain as well).
bool check_two_agent_condition(double c, double delta0, double theta0);

/// Sufficient condition for the full model on the complete uniform graph:
/// c d0 + theta_max < 1.
bool check_polarized_condition(double c, double d0, double theta_max);

/// 1 - (c delta0 + theta0); positive exactly when the condition holds.
double condition_margin(double c, double delta0, double theta0);

}  // namespace fjvote
