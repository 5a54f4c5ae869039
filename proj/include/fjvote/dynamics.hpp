#pragma once

#include <Eigen/Dense>

#include "fjvote/graph.hpp"
#include "fjvote/trace.hpp"
#include "fjvote/types.hpp"
#include "fjvote/voting.hpp"

namespace fjvote {

/// One within-issue step:
///   y_i(t+1) = (1 - theta_i) sum_j w_ij y_j(t) + theta_i y_i(0).
OpinionState within_issue_step(const InfluenceGraph& g,
                               const StubbornnessProfile& theta,
                               const OpinionState& y_t, const OpinionState& y0);

/// The linear map V = (I - (I - Theta) W)^-1 Theta sending issue-initial to
/// issue-final opinions. Row-stochastic; column j is identically zero when
/// theta_j = 0. Throws SingularSystem when the system is singular (all
/// theta_i = 0 on a stochastic W).
Eigen::MatrixXd issue_transfer_matrix(const InfluenceGraph& g,
                                      const StubbornnessProfile& theta);

/// y_f = V y0 computed by a dense solve (without forming V).
OpinionState final_opinion_closed_form(const InfluenceGraph& g,
                                       const StubbornnessProfile& theta,
                                       const OpinionState& y0);

/// y_f obtained by iterating within_issue_step until successive iterates
/// differ by less than tol in max-norm. Exists as an independent
/// cross-validation path for the closed form. Throws NoConvergence when
/// max_iter is exceeded.
OpinionState final_opinion_iterative(const InfluenceGraph& g,
                                     const StubbornnessProfile& theta,
                                     const OpinionState& y0,
                                     double tol = 1e-12,
                                     long max_iter = 1000000);

/// Simulates num_issues issues: closed-form final opinions, median vote,
/// distance feedback, stubbornness update, and the carryover
/// y(s+1, 0) = y_f(s). With num_issues = 0 the trace holds only the
/// initial state.
IssueTrace run_issue_sequence(const InfluenceGraph& g,
                              const StubbornnessProfile& theta0,
                              const OpinionState& y0,
                              const StubbornnessPolicy& policy, int num_issues);

}  // namespace fjvote
