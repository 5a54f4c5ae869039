#include "fjvote/graph.hpp"

#include <fstream>
#include <string>
#include <vector>

#include "fjvote/errors.hpp"
#include "fjvote/rng.hpp"

namespace fjvote {
namespace {

// Reachability from `start` over the nonzero pattern, following edges
// (i, j) with w_ij != 0 (or the transposed pattern).
std::vector<bool> reachable(const Eigen::MatrixXd& w, int start,
                            bool transpose) {
  const int n = static_cast<int>(w.rows());
  std::vector<bool> seen(n, false);
  std::vector<int> stack = {start};
  seen[start] = true;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (int j = 0; j < n; ++j) {
      const double wij = transpose ? w(j, i) : w(i, j);
      if (wij != 0.0 && !seen[j]) {
        seen[j] = true;
        stack.push_back(j);
      }
    }
  }
  return seen;
}

}  // namespace

InfluenceGraph InfluenceGraph::from_weights(Eigen::MatrixXd weights) {
  if (weights.rows() != weights.cols()) {
    throw ConfigError("weight matrix must be square, got " +
                      std::to_string(weights.rows()) + "x" +
                      std::to_string(weights.cols()));
  }
  const int n = static_cast<int>(weights.rows());
  if (n < 2) {
    throw TooSmall("influence graph needs at least 2 agents, got " +
                   std::to_string(n));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (weights(i, j) < 0.0) {
        throw NegativeWeight("negative weight at (" + std::to_string(i) + ", " +
                             std::to_string(j) + ")");
      }
    }
    const double sum = weights.row(i).sum();
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw NotRowStochastic("row " + std::to_string(i) + " sums to " +
                             std::to_string(sum) + ", expected 1");
    }
  }
  return InfluenceGraph(std::move(weights));
}

InfluenceGraph InfluenceGraph::complete_uniform(int n) {
  if (n < 2) {
    throw TooSmall("influence graph needs at least 2 agents, got " +
                   std::to_string(n));
  }
  return InfluenceGraph(Eigen::MatrixXd::Constant(n, n, 1.0 / n));
}

InfluenceGraph InfluenceGraph::random_strongly_connected(int n,
                                                          std::uint64_t seed,
                                                          double density) {
  if (n < 2) {
    throw TooSmall("influence graph needs at least 2 agents, got " +
                   std::to_string(n));
  }
  if (!(density > 0.0 && density <= 1.0)) {
    throw ConfigError("density must lie in (0, 1]");
  }
  Rng rng = Rng::substream(seed, 0x67726170, 0);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const bool cycle_edge = j == (i + 1) % n;
      if (cycle_edge || rng.bernoulli(density)) {
        w(i, j) = rng.uniform_positive();
      }
    }
    w.row(i) /= w.row(i).sum();
  }
  return InfluenceGraph(std::move(w));
}

bool InfluenceGraph::is_strongly_connected() const {
  const auto fwd = reachable(weights_, 0, false);
  const auto bwd = reachable(weights_, 0, true);
  for (int i = 0; i < size(); ++i) {
    if (!fwd[i] || !bwd[i]) return false;
  }
  return true;
}

InfluenceGraph InfluenceGraph::from_json(const nlohmann::json& j) {
  if (!j.contains("n") || !j.contains("weights")) {
    throw ConfigError("graph JSON requires fields \"n\" and \"weights\"");
  }
  const int n = j.at("n").get<int>();
  const auto& rows = j.at("weights");
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
    throw ConfigError("graph JSON: \"weights\" must be an n-row array");
  }
  Eigen::MatrixXd w(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& row = rows.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw ConfigError("graph JSON: row " + std::to_string(i) +
                        " must have n entries");
    }
    for (int k = 0; k < n; ++k) w(i, k) = row.at(k).get<double>();
  }
  return from_weights(std::move(w));
}

nlohmann::json InfluenceGraph::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < size(); ++j) row.push_back(weights_(i, j));
    rows.push_back(std::move(row));
  }
  return {{"n", size()}, {"weights", std::move(rows)}};
}

InfluenceGraph InfluenceGraph::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot read graph file " + file.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("invalid JSON in " + file.string() + ": " + e.what());
  }
  return from_json(j);
}

void InfluenceGraph::save(const std::filesystem::path& file) const {
  std::ofstream out(file);
  if (!out) throw IoError("cannot write graph file " + file.string());
  out << to_json().dump(2) << '\n';
}

}  // namespace fjvote
