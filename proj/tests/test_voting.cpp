#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <vector>

#include "fjvote/errors.hpp"
#include "fjvote/rng.hpp"
#include "fjvote/voting.hpp"

using namespace fjvote;

namespace {

OpinionState opinions(std::initializer_list<double> v) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double e : v) x[i++] = e;
  return OpinionState{std::move(x)};
}

}  // namespace

TEST_CASE("median of an odd configuration is the middle order statistic") {
  CHECK(median_vote(opinions({0.3, 0.1, 0.9})) == 0.3);
  CHECK(median_vote(opinions({0.7, 0.7, 0.7, 0.7, 0.7})) == 0.7);
}

TEST_CASE("median of an even configuration is the central midpoint") {
  CHECK(median_vote(opinions({0.2, 0.8})) == 0.5);
  CHECK(median_vote(opinions({0.0, 0.2, 0.6, 1.0})) == doctest::Approx(0.4));
}

TEST_CASE("median is permutation invariant") {
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 9);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y[i] = rng.next_double();
    const double mu = median_vote(OpinionState{y});
    std::vector<double> shuffled(y.data(), y.data() + n);
    for (int i = n - 1; i > 0; --i) {
      std::swap(shuffled[i],
                shuffled[static_cast<int>(rng.next_u64() % (i + 1))]);
    }
    Eigen::VectorXd z =
        Eigen::Map<Eigen::VectorXd>(shuffled.data(), n);
    CHECK(median_vote(OpinionState{z}) == mu);
    CHECK(mu >= 0.0);
    CHECK(mu <= 1.0);
  }
}

TEST_CASE("distances from the vote") {
  const auto d = distances(opinions({0.3, 0.1, 0.9}), 0.3);
  CHECK(d[0] == 0.0);
  CHECK(d[1] == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(d[2] == doctest::Approx(0.6).epsilon(1e-15));

  CHECK(distances(opinions({0.4, 0.4}), 0.4).isZero());
  const auto sym = distances(opinions({0.0, 1.0}), 0.5);
  CHECK(sym[0] == 0.5);
  CHECK(sym[1] == 0.5);
}

TEST_CASE("increasing update reproduces the three-agent example") {
  Eigen::VectorXd theta(3);
  theta << 0.8, 0.5, 0.3;
  Eigen::VectorXd delta(3);
  delta << 0.0, 0.2, 0.6;
  const auto next = update_stubbornness(StubbornnessProfile{theta}, delta,
                                        StubbornnessPolicy::increasing(1.0));
  CHECK(next.values[0] == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(next.values[1] == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(next.values[2] == doctest::Approx(0.72).epsilon(1e-14));
}

TEST_CASE("zero distance leaves stubbornness unchanged") {
  Eigen::VectorXd theta(2);
  theta << 0.4, 0.9;
  const Eigen::VectorXd delta = Eigen::VectorXd::Zero(2);
  for (auto policy : {StubbornnessPolicy::increasing(0.7),
                      StubbornnessPolicy::constant()}) {
    const auto next =
        update_stubbornness(StubbornnessProfile{theta}, delta, policy);
    CHECK(next.values == theta);
  }
}

TEST_CASE("decreasing update arithmetic") {
  Eigen::VectorXd theta(1);
  theta << 0.5;
  Eigen::VectorXd delta(1);
  delta << 0.4;
  auto policy = StubbornnessPolicy::decreasing(-1.0, 1e-6);
  policy.initial_theta = theta;
  const auto next =
      update_stubbornness(StubbornnessProfile{theta}, delta, policy);
  // 0.5 - 1*0.5*0.4 + 1e-6*0.5
  CHECK(next.values[0] == doctest::Approx(0.3000005).epsilon(1e-14));
}

TEST_CASE("policy validation rejects out-of-range gains") {
  CHECK_THROWS_AS(StubbornnessPolicy::increasing(1.5), PolicyError);
  CHECK_THROWS_AS(StubbornnessPolicy::increasing(-0.1), PolicyError);
  CHECK_THROWS_AS(StubbornnessPolicy::decreasing(0.5), PolicyError);
  CHECK_THROWS_AS(StubbornnessPolicy::decreasing(-0.5, 0.0), PolicyError);
  CHECK_THROWS_AS(
      StubbornnessPolicy::from_json({{"kind", "quadratic"}}), PolicyError);
}

TEST_CASE("increasing update is monotone and bounded") {
  Rng rng(123);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_u64() % 8);
    Eigen::VectorXd theta(n), delta(n);
    for (int i = 0; i < n; ++i) {
      theta[i] = rng.next_double();
      delta[i] = rng.next_double();
    }
    const double c = rng.next_double();
    const auto next = update_stubbornness(
        StubbornnessProfile{theta}, delta, StubbornnessPolicy::increasing(c));
    for (int i = 0; i < n; ++i) {
      CHECK(next.values[i] >= theta[i]);
      CHECK(next.values[i] <= 1.0);
      const bool frozen = c * delta[i] * (1.0 - theta[i]) == 0.0;
      CHECK((next.values[i] > theta[i]) == !frozen);
      if (theta[i] < 1.0 && (c < 1.0 || delta[i] < 1.0)) {
        CHECK(next.values[i] < 1.0);
      }
    }
  }
}

TEST_CASE("decreasing update keeps the epsilon floor") {
  Rng rng(321);
  Eigen::VectorXd theta0(3);
  theta0 << 0.6, 0.0, 0.95;
  auto policy = StubbornnessPolicy::decreasing(-1.0, 1e-4);
  policy.initial_theta = theta0;
  StubbornnessProfile theta{theta0};
  for (int s = 0; s < 400; ++s) {
    Eigen::VectorXd delta(3);
    for (int i = 0; i < 3; ++i) delta[i] = rng.next_double() * 0.999;
    theta = update_stubbornness(theta, delta, policy);
    for (int i = 0; i < 3; ++i) {
      if (theta0[i] > 0.0) CHECK(theta.values[i] >= 1e-4 * theta0[i]);
      CHECK(theta.values[i] >= 0.0);
      CHECK(theta.values[i] < 1.0);
    }
  }
  CHECK(theta.values[1] == 0.0);  // initially non-stubborn agents stay at zero
}
