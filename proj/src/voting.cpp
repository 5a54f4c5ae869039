#include "fjvote/voting.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "fjvote/errors.hpp"

namespace fjvote {

OpinionState OpinionState::validated(Eigen::VectorXd v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!(v[i] >= 0.0 && v[i] <= 1.0)) {
      throw DomainViolation("opinion " + std::to_string(i) + " = " +
                            std::to_string(v[i]) + " outside [0, 1]");
    }
  }
  return OpinionState{std::move(v)};
}

StubbornnessProfile StubbornnessProfile::validated(Eigen::VectorXd v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!(v[i] >= 0.0 && v[i] <= 1.0)) {
      throw DomainViolation("stubbornness " + std::to_string(i) + " = " +
                            std::to_string(v[i]) + " outside [0, 1]");
    }
  }
  return StubbornnessProfile{std::move(v)};
}

bool StubbornnessProfile::satisfies_initial_assumption() const {
  bool any_positive = false;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] >= 1.0) return false;
    if (values[i] > 0.0) any_positive = true;
  }
  return any_positive;
}

StubbornnessPolicy StubbornnessPolicy::increasing(double c) {
  StubbornnessPolicy p;
  p.kind = PolicyKind::kIncreasing;
  p.c = c;
  p.validate();
  return p;
}

StubbornnessPolicy StubbornnessPolicy::decreasing(double c, double epsilon) {
  StubbornnessPolicy p;
  p.kind = PolicyKind::kDecreasing;
  p.c = c;
  p.epsilon = epsilon;
  p.validate();
  return p;
}

StubbornnessPolicy StubbornnessPolicy::constant() {
  return StubbornnessPolicy{};
}

void StubbornnessPolicy::validate() const {
  switch (kind) {
    case PolicyKind::kIncreasing:
      if (!(c >= 0.0 && c <= 1.0)) {
        throw PolicyError("increasing policy requires c in [0, 1], got " +
                          std::to_string(c));
      }
      break;
    case PolicyKind::kDecreasing:
      if (!(c >= -1.0 && c <= 0.0)) {
        throw PolicyError("decreasing policy requires c in [-1, 0], got " +
                          std::to_string(c));
      }
      if (!(epsilon > 0.0)) {
        throw PolicyError("decreasing policy requires epsilon > 0");
      }
      break;
    case PolicyKind::kConstant:
      break;  // c is ignored
  }
}

StubbornnessPolicy StubbornnessPolicy::from_json(const nlohmann::json& j) {
  StubbornnessPolicy p;
  const std::string kind = j.value("kind", "constant");
  if (kind == "increasing") {
    p.kind = PolicyKind::kIncreasing;
  } else if (kind == "decreasing") {
    p.kind = PolicyKind::kDecreasing;
  } else if (kind == "constant") {
    p.kind = PolicyKind::kConstant;
  } else {
    throw PolicyError("unknown policy kind \"" + kind + "\"");
  }
  p.c = j.value("c", 0.0);
  p.epsilon = j.value("epsilon", 1e-6);
  p.validate();
  return p;
}

nlohmann::json StubbornnessPolicy::to_json() const {
  const char* name = kind == PolicyKind::kIncreasing   ? "increasing"
                     : kind == PolicyKind::kDecreasing ? "decreasing"
                                                       : "constant";
  return {{"kind", name}, {"c", c}, {"epsilon", epsilon}};
}

double median_vote(const OpinionState& y) {
  const int n = y.size();
  std::vector<double> v(y.values.data(), y.values.data() + n);
  std::sort(v.begin(), v.end());
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Eigen::VectorXd distances(const OpinionState& y, double mu) {
  return (y.values.array() - mu).abs();
}

StubbornnessProfile update_stubbornness(const StubbornnessProfile& theta,
                                        const Eigen::VectorXd& delta,
                                        const StubbornnessPolicy& policy) {
  policy.validate();
  if (delta.size() != theta.values.size()) {
    throw DimensionMismatch("distance vector size " +
                            std::to_string(delta.size()) +
                            " does not match agent count " +
                            std::to_string(theta.values.size()));
  }
  const Eigen::VectorXd& th = theta.values;
  Eigen::VectorXd out(th.size());
  switch (policy.kind) {
    case PolicyKind::kIncreasing:
      out = th.array() + policy.c * (1.0 - th.array()) * delta.array();
      break;
    case PolicyKind::kDecreasing: {
      if (policy.initial_theta.size() != th.size()) {
        throw PolicyError(
            "decreasing policy requires an initial stubbornness snapshot of "
            "matching size");
      }
      // The epsilon anchor can push a near-1 entry to or above 1 when delta
      // is near zero; the clamp keeps every agent strictly below full
      // stubbornness.
      out = th.array() - std::abs(policy.c) * th.array() * delta.array() +
            policy.epsilon * policy.initial_theta.array();
      out = out.cwiseMax(0.0).cwiseMin(1.0 - 1e-12);
      break;
    }
    case PolicyKind::kConstant:
      out = th;
      break;
  }
  return StubbornnessProfile{std::move(out)};
}

}  // namespace fjvote
