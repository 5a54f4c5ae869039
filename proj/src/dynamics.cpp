#include "fjvote/dynamics.hpp"

#include <string>

#include "fjvote/errors.hpp"

namespace fjvote {
namespace {

void check_dims(const InfluenceGraph& g, const StubbornnessProfile& theta,
                const OpinionState& y) {
  if (theta.size() != g.size() || y.size() != g.size()) {
    throw DimensionMismatch(
        "graph has " + std::to_string(g.size()) + " agents, stubbornness has " +
        std::to_string(theta.size()) + ", opinions have " +
        std::to_string(y.size()));
  }
}

// I - (I - Theta) W, the system matrix of the within-issue fixed point.
Eigen::MatrixXd system_matrix(const InfluenceGraph& g,
                              const StubbornnessProfile& theta) {
  const int n = g.size();
  Eigen::MatrixXd m =
      -((1.0 - theta.values.array()).matrix().asDiagonal() * g.weights());
  m += Eigen::MatrixXd::Identity(n, n);
  return m;
}

Eigen::PartialPivLU<Eigen::MatrixXd> factorize(
    const InfluenceGraph& g, const StubbornnessProfile& theta) {
  if ((theta.values.array() == 0.0).all()) {
    throw SingularSystem(
        "all agents have zero stubbornness; the within-issue fixed point is "
        "not unique (at least one agent must be partially stubborn)");
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(system_matrix(g, theta));
  const Eigen::VectorXd diag = lu.matrixLU().diagonal().cwiseAbs();
  if (diag.minCoeff() <= 1e-12 * std::max(1.0, diag.maxCoeff())) {
    throw SingularSystem("within-issue system matrix is numerically singular");
  }
  return lu;
}

}  // namespace

OpinionState within_issue_step(const InfluenceGraph& g,
                               const StubbornnessProfile& theta,
                               const OpinionState& y_t,
                               const OpinionState& y0) {
  check_dims(g, theta, y_t);
  check_dims(g, theta, y0);
  Eigen::VectorXd next =
      (1.0 - theta.values.array()) *
          (g.weights() * y_t.values).array() +
      theta.values.array() * y0.values.array();
  return OpinionState{std::move(next)};
}

Eigen::MatrixXd issue_transfer_matrix(const InfluenceGraph& g,
                                      const StubbornnessProfile& theta) {
  check_dims(g, theta, OpinionState{theta.values});
  const auto lu = factorize(g, theta);
  Eigen::MatrixXd rhs = theta.values.asDiagonal();
  return lu.solve(rhs);
}

OpinionState final_opinion_closed_form(const InfluenceGraph& g,
                                       const StubbornnessProfile& theta,
                                       const OpinionState& y0) {
  check_dims(g, theta, y0);
  const auto lu = factorize(g, theta);
  Eigen::VectorXd rhs = theta.values.cwiseProduct(y0.values);
  return OpinionState{lu.solve(rhs)};
}

OpinionState final_opinion_iterative(const InfluenceGraph& g,
                                     const StubbornnessProfile& theta,
                                     const OpinionState& y0, double tol,
                                     long max_iter) {
  check_dims(g, theta, y0);
  const Eigen::MatrixXd a =
      (1.0 - theta.values.array()).matrix().asDiagonal() * g.weights();
  const Eigen::VectorXd b = theta.values.cwiseProduct(y0.values);
  Eigen::VectorXd y = y0.values;
  for (long it = 0; it < max_iter; ++it) {
    Eigen::VectorXd next = a * y + b;
    const double diff = (next - y).cwiseAbs().maxCoeff();
    y = std::move(next);
    if (diff < tol) return OpinionState{std::move(y)};
  }
  throw NoConvergence("within-issue iteration did not reach tol " +
                      std::to_string(tol) + " in " + std::to_string(max_iter) +
                      " steps");
}

IssueTrace run_issue_sequence(const InfluenceGraph& g,
                              const StubbornnessProfile& theta0,
                              const OpinionState& y0,
                              const StubbornnessPolicy& policy,
                              int num_issues) {
  check_dims(g, theta0, y0);
  policy.validate();
  StubbornnessPolicy resolved = policy;
  if (resolved.kind == PolicyKind::kDecreasing &&
      resolved.initial_theta.size() == 0) {
    resolved.initial_theta = theta0.values;
  }

  IssueTrace trace;
  trace.initial_opinions = y0.values;
  trace.initial_stubbornness = theta0.values;
  trace.initial_median = median_vote(y0);
  trace.initial_distances = distances(y0, trace.initial_median);
  trace.policy = resolved;
  trace.records.reserve(static_cast<std::size_t>(std::max(num_issues, 0)));

  OpinionState y = y0;
  StubbornnessProfile theta = theta0;
  for (int s = 0; s < num_issues; ++s) {
    OpinionState yf = final_opinion_closed_form(g, theta, y);
    const double mu = median_vote(yf);
    Eigen::VectorXd delta = distances(yf, mu);

    IssueRecord rec;
    rec.issue = s;
    rec.opinions_initial = y.values;
    rec.stubbornness = theta.values;
    rec.opinions_final = yf.values;
    rec.vote = mu;
    rec.vote_distances = delta;
    rec.spread_initial = y.values.maxCoeff() - y.values.minCoeff();
    rec.spread_final = yf.values.maxCoeff() - yf.values.minCoeff();
    trace.records.push_back(std::move(rec));

    theta = update_stubbornness(theta, delta, resolved);
    y = std::move(yf);  // carryover, bit-exact
  }
  return trace;
}

}  // namespace fjvote
