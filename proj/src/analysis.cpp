#include "fjvote/analysis.hpp"

#include <algorithm>
#include <string>

#include "fjvote/errors.hpp"

namespace fjvote {

namespace {

// Matches the ceiling used by update_stubbornness: theta stays strictly below
// 1 in exact arithmetic, but rounding can land on 1.0 exactly.
constexpr double kThetaCeiling = 1.0 - 1e-12;

}  // namespace

double max_distance(const OpinionState& y) {
  if (y.size() < 2) {
    throw TooSmall("max_distance needs at least 2 agents");
  }
  return y.values.maxCoeff() - y.values.minCoeff();
}

std::optional<int> consensus_issue(const IssueTrace& trace, double tol) {
  const auto d = trace.spread_sequence();
  for (std::size_t s = 0; s < d.size(); ++s) {
    if (d[s] < tol) return static_cast<int>(s);
  }
  return std::nullopt;
}

ReducedState two_agent_reduced_step(const ReducedState& state, double c) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw DomainViolation("reduced dynamics require c in [0, 1], got " +
                          std::to_string(c));
  }
  if (!state.in_extended_domain()) {
    throw DomainViolation("reduced state (delta=" + std::to_string(state.delta) +
                          ", theta=" + std::to_string(state.theta) +
                          ") outside [0, 1] x [0, 1)");
  }
  const double delta_next = state.theta * state.delta;
  const double theta_next =
      state.theta + c * (1.0 - state.theta) * state.delta * state.theta;
  return ReducedState{delta_next, std::min(theta_next, kThetaCeiling)};
}

PolarizedState polarized_reduced_step(const PolarizedState& state, double c) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw DomainViolation("polarized dynamics require c in [0, 1], got " +
                          std::to_string(c));
  }
  if (!(state.spread >= 0.0 && state.spread <= 1.0 && state.theta_bar >= 0.0 &&
        state.theta_bar < 1.0)) {
    throw DomainViolation(
        "polarized state (d=" + std::to_string(state.spread) +
        ", theta_bar=" + std::to_string(state.theta_bar) +
        ") outside [0, 1] x [0, 1)");
  }
  const double spread_next = state.theta_bar * state.spread;
  const double theta_next =
      state.theta_bar + c * (1.0 - state.theta_bar) * spread_next;
  return PolarizedState{spread_next, std::min(theta_next, kThetaCeiling)};
}

double lyapunov_value(double a, const ReducedState& state) {
  return a * state.delta + state.theta;
}

bool check_two_agent_condition(double c, double delta0, double theta0) {
  return c * delta0 + theta0 < 1.0;
}

bool check_polarized_condition(double c, double d0, double theta_max) {
  return c * d0 + theta_max < 1.0;
}

double condition_margin(double c, double delta0, double theta0) {
  return 1.0 - (c * delta0 + theta0);
}

}  // namespace fjvote
