#include "fjvote/trace.hpp"

#include <fstream>

#include "fjvote/errors.hpp"
#include "fjvote/format.hpp"

namespace fjvote {
namespace {

nlohmann::json vec_to_json(const Eigen::VectorXd& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

}  // namespace

std::vector<double> IssueTrace::spread_sequence() const {
  std::vector<double> d;
  d.reserve(records.size() + 1);
  d.push_back(initial_opinions.maxCoeff() - initial_opinions.minCoeff());
  for (const auto& rec : records) d.push_back(rec.spread_final);
  return d;
}

void IssueTrace::write_csv(std::ostream& out) const {
  const int n = static_cast<int>(initial_opinions.size());
  out << "s";
  for (int i = 1; i <= n; ++i) out << ",y_" << i;
  for (int i = 1; i <= n; ++i) out << ",theta_" << i;
  out << ",mu,d\n";
  for (const auto& rec : records) {
    out << rec.issue;
    for (int i = 0; i < n; ++i) out << ',' << format_full(rec.opinions_final[i]);
    for (int i = 0; i < n; ++i) out << ',' << format_full(rec.stubbornness[i]);
    out << ',' << format_full(rec.vote) << ',' << format_full(rec.spread_final)
        << '\n';
  }
}

void IssueTrace::write_csv(const std::filesystem::path& file) const {
  std::ofstream out(file);
  if (!out) throw IoError("cannot write trace file " + file.string());
  write_csv(out);
}

nlohmann::json IssueTrace::to_json() const {
  nlohmann::json issues = nlohmann::json::array();
  for (const auto& rec : records) {
    issues.push_back({{"s", rec.issue},
                      {"opinions_initial", vec_to_json(rec.opinions_initial)},
                      {"stubbornness", vec_to_json(rec.stubbornness)},
                      {"opinions_final", vec_to_json(rec.opinions_final)},
                      {"vote", rec.vote},
                      {"distances", vec_to_json(rec.vote_distances)},
                      {"spread_initial", rec.spread_initial},
                      {"spread_final", rec.spread_final}});
  }
  return {{"seed", seed},
          {"iterative_tol", iterative_tol},
          {"policy", policy.to_json()},
          {"initial",
           {{"opinions", vec_to_json(initial_opinions)},
            {"stubbornness", vec_to_json(initial_stubbornness)},
            {"median", initial_median},
            {"distances", vec_to_json(initial_distances)}}},
          {"issues", std::move(issues)}};
}

}  // namespace fjvote
