#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include "fjvote/dynamics.hpp"
#include "fjvote/errors.hpp"
#include "fjvote/graph.hpp"
#include "fjvote/rng.hpp"

using namespace fjvote;

namespace {

OpinionState opinions(std::initializer_list<double> v) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double e : v) x[i++] = e;
  return OpinionState{std::move(x)};
}

StubbornnessProfile stubbornness(std::initializer_list<double> v) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double e : v) x[i++] = e;
  return StubbornnessProfile{std::move(x)};
}

// Random Assumption-2-valid instance on a random strongly connected graph.
struct Instance {
  InfluenceGraph g;
  StubbornnessProfile theta;
  OpinionState y;
};

Instance random_instance(Rng& rng, int max_n = 12) {
  const int n = 2 + static_cast<int>(rng.next_u64() % (max_n - 1));
  const auto g = InfluenceGraph::random_strongly_connected(
      n, rng.next_u64(), rng.uniform(0.3, 1.0));
  Eigen::VectorXd theta(n), y(n);
  bool any = false;
  for (int i = 0; i < n; ++i) {
    if (rng.bernoulli(0.3)) {
      theta[i] = 0.0;
    } else {
      theta[i] = rng.uniform(0.05, 0.95);
      any = true;
    }
    y[i] = rng.next_double();
  }
  if (!any) theta[0] = rng.uniform(0.05, 0.95);
  return {g, StubbornnessProfile{theta}, OpinionState{y}};
}

}  // namespace

TEST_CASE("within_issue_step: fully stubborn agent keeps its anchor") {
  const auto g = InfluenceGraph::complete_uniform(3);
  const auto y0 = opinions({0.9, 0.2, 0.4});
  const auto yt = opinions({0.1, 0.5, 0.5});
  const auto next = within_issue_step(g, stubbornness({1.0, 0.5, 0.0}), yt, y0);
  CHECK(next.values[0] == 0.9);
}

TEST_CASE("within_issue_step: zero stubbornness averages") {
  const auto g = InfluenceGraph::complete_uniform(4);
  const auto yt = opinions({0.0, 0.4, 0.6, 1.0});
  const auto next =
      within_issue_step(g, stubbornness({0.0, 0.0, 0.0, 0.0}), yt, yt);
  for (int i = 0; i < 4; ++i) {
    CHECK(next.values[i] == doctest::Approx(0.5).epsilon(1e-15));
  }
}

TEST_CASE("within_issue_step: symmetric two-agent contraction") {
  const auto g = InfluenceGraph::complete_uniform(2);
  const double theta = 0.6, delta = 0.3;
  const auto y = opinions({0.5 + delta, 0.5 - delta});
  const auto next = within_issue_step(g, stubbornness({theta, theta}), y, y);
  CHECK(next.values[0] == doctest::Approx(0.5 + theta * delta).epsilon(1e-15));
  CHECK(next.values[1] == doctest::Approx(0.5 - theta * delta).epsilon(1e-15));
}

TEST_CASE("within_issue_step rejects mismatched dimensions") {
  const auto g = InfluenceGraph::complete_uniform(3);
  CHECK_THROWS_AS(within_issue_step(g, stubbornness({0.5, 0.5}),
                                    opinions({0.1, 0.2}), opinions({0.1, 0.2})),
                  DimensionMismatch);
}

TEST_CASE("issue_transfer_matrix: all-zero stubbornness is singular") {
  const auto g = InfluenceGraph::complete_uniform(2);
  CHECK_THROWS_AS(issue_transfer_matrix(g, stubbornness({0.0, 0.0})),
                  SingularSystem);
  CHECK_THROWS_AS(
      final_opinion_closed_form(g, stubbornness({0.0, 0.0}),
                                opinions({0.2, 0.8})),
      SingularSystem);
}

TEST_CASE("issue_transfer_matrix: single stubborn agent gives a rank-1 map") {
  const auto g = InfluenceGraph::complete_uniform(3);
  const auto theta = stubbornness({0.9, 0.0, 0.0});
  const auto v = issue_transfer_matrix(g, theta);

  // Independent oracle: iterate the within-issue step to its fixed point.
  const auto y0 = opinions({0.2, 0.7, 0.9});
  OpinionState y = y0;
  for (int t = 0; t < 20000; ++t) y = within_issue_step(g, theta, y, y0);

  for (int i = 0; i < 3; ++i) {
    CHECK(v(i, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(v(i, 1) == 0.0);
    CHECK(v(i, 2) == 0.0);
    CHECK(y.values[i] == doctest::Approx(0.2).epsilon(1e-10));
  }

  const auto yf = final_opinion_closed_form(g, theta, y0);
  for (int i = 0; i < 3; ++i) {
    CHECK(yf.values[i] == doctest::Approx(0.2).epsilon(1e-12));
  }
}

TEST_CASE("transfer matrix is row-stochastic with zero columns for theta=0") {
  Rng rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    auto inst = random_instance(rng);
    const auto v = issue_transfer_matrix(inst.g, inst.theta);
    for (int i = 0; i < inst.g.size(); ++i) {
      CHECK(std::abs(v.row(i).sum() - 1.0) <= 1e-10);
      for (int j = 0; j < inst.g.size(); ++j) {
        if (inst.theta.values[j] == 0.0) {
          CHECK(std::abs(v(i, j)) <= 1e-12);
        } else {
          CHECK(v(i, j) > 0.0);
        }
      }
    }
  }
}

TEST_CASE("closed form: full stubbornness is the identity") {
  const auto g = InfluenceGraph::complete_uniform(3);
  const auto y0 = opinions({0.1, 0.6, 0.8});
  const auto yf =
      final_opinion_closed_form(g, stubbornness({1.0, 1.0, 1.0}), y0);
  CHECK((yf.values - y0.values).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("closed form: symmetric two-agent distance shrinks by theta") {
  const auto g = InfluenceGraph::complete_uniform(2);
  const double theta = 0.4, delta0 = 0.25;
  const auto yf = final_opinion_closed_form(
      g, stubbornness({theta, theta}), opinions({0.5 + delta0, 0.5 - delta0}));
  CHECK(yf.values[0] == doctest::Approx(0.5 + theta * delta0).epsilon(1e-12));
  CHECK(yf.values[1] == doctest::Approx(0.5 - theta * delta0).epsilon(1e-12));
}

TEST_CASE("iterative path: full stubbornness converges immediately") {
  const auto g = InfluenceGraph::complete_uniform(2);
  const auto y0 = opinions({0.3, 0.8});
  const auto yf = final_opinion_iterative(g, stubbornness({1.0, 1.0}), y0);
  CHECK(yf.values == y0.values);
}

TEST_CASE("iterative path raises NoConvergence on a tiny budget") {
  // Heavy self-loops make the within-issue mixing slow.
  Eigen::MatrixXd w(2, 2);
  w << 0.99, 0.01, 0.01, 0.99;
  const auto g = InfluenceGraph::from_weights(w);
  CHECK_THROWS_AS(final_opinion_iterative(g, stubbornness({0.01, 0.01}),
                                          opinions({0.0, 1.0}), 1e-14, 3),
                  NoConvergence);
}

TEST_CASE("closed-form and iterative paths agree") {
  Rng rng(77);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    auto inst = random_instance(rng);
    const auto closed = final_opinion_closed_form(inst.g, inst.theta, inst.y);
    const auto iter =
        final_opinion_iterative(inst.g, inst.theta, inst.y, 1e-12, 1000000);
    worst = std::max(worst,
                     (closed.values - iter.values).cwiseAbs().maxCoeff());
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("opinions stay inside the unit interval along whole sequences") {
  Rng rng(555);
  for (int trial = 0; trial < 20; ++trial) {
    auto inst = random_instance(rng, 8);
    const auto trace = run_issue_sequence(
        inst.g, inst.theta, inst.y, StubbornnessPolicy::increasing(1.0), 50);
    for (const auto& rec : trace.records) {
      CHECK(rec.opinions_final.minCoeff() >= 0.0);
      CHECK(rec.opinions_final.maxCoeff() <= 1.0);
      CHECK(rec.stubbornness.minCoeff() >= 0.0);
      CHECK(rec.stubbornness.maxCoeff() <= 1.0);
    }
  }
}

TEST_CASE("issue sequence: constant policy gives geometric two-agent decay") {
  const auto g = InfluenceGraph::complete_uniform(2);
  const double theta = 0.7, delta0 = 0.2;
  const auto trace = run_issue_sequence(g, stubbornness({theta, theta}),
                                        opinions({0.5 + delta0, 0.5 - delta0}),
                                        StubbornnessPolicy::constant(), 30);
  double expected = delta0;
  for (const auto& rec : trace.records) {
    CHECK(rec.opinions_initial[0] ==
          doctest::Approx(0.5 + expected).epsilon(1e-10));
    expected *= theta;
  }
}

TEST_CASE("issue sequence: cognitive freezing is bit-exact") {
  Rng rng(808);
  auto inst = random_instance(rng, 6);
  const auto trace = run_issue_sequence(
      inst.g, inst.theta, inst.y, StubbornnessPolicy::increasing(0.8), 40);
  CHECK(trace.records.front().opinions_initial == inst.y.values);
  for (std::size_t s = 1; s < trace.records.size(); ++s) {
    CHECK(trace.records[s].opinions_initial ==
          trace.records[s - 1].opinions_final);
  }
}

TEST_CASE("issue sequence with zero issues holds only the initial state") {
  const auto g = InfluenceGraph::complete_uniform(2);
  const auto trace =
      run_issue_sequence(g, stubbornness({0.5, 0.5}), opinions({0.1, 0.9}),
                         StubbornnessPolicy::constant(), 0);
  CHECK(trace.records.empty());
  CHECK(trace.initial_opinions.size() == 2);
  CHECK(trace.spread_sequence().size() == 1);
}
