#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>

namespace fjvote {

/// Directed influence network with a row-stochastic weight matrix W.
/// Entry (i, j) is the influence of agent j on agent i; an edge exists
/// exactly where the entry is nonzero. Immutable after construction.
class InfluenceGraph {
 public:
  /// Tolerance on row sums for user-supplied matrices. Generated graphs are
  /// normalized to 1e-12 or better.
  static constexpr double kRowSumTolerance = 1e-9;

  static InfluenceGraph from_weights(Eigen::MatrixXd weights);

  /// Complete graph (self-loops included) with every weight equal to 1/n.
  static InfluenceGraph complete_uniform(int n);

  /// Random graph whose nonzero pattern contains the directed cycle
  /// 0 -> 1 -> ... -> n-1 -> 0, so strong connectivity holds by construction.
  /// Remaining (i, j) pairs become edges with probability `density`; weights
  /// are uniform on (0, 1] and each row is normalized. Deterministic in seed.
  static InfluenceGraph random_strongly_connected(int n, std::uint64_t seed,
                                                  double density);

  static InfluenceGraph from_json(const nlohmann::json& j);
  static InfluenceGraph load(const std::filesystem::path& file);
  nlohmann::json to_json() const;
  void save(const std::filesystem::path& file) const;

  int size() const { return static_cast<int>(weights_.rows()); }
  const Eigen::MatrixXd& weights() const { return weights_; }

  /// True iff a directed path exists between every ordered pair of nodes.
  bool is_strongly_connected() const;

 private:
  explicit InfluenceGraph(Eigen::MatrixXd w) : weights_(std::move(w)) {}

  Eigen::MatrixXd weights_;
};

}  // namespace fjvote
