#include "srclda/reduction.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "srclda/stats.hpp"

namespace srclda {

namespace {

TopicModelResult keep_topics(const TopicModelResult& result,
                             const std::vector<int>& keep) {
  TopicModelResult out;
  out.swap_counts = result.swap_counts;
  out.boundary_events = result.boundary_events;
  for (int t : keep) {
    out.labels.push_back(result.labels[t]);
    out.phi.push_back(result.phi[t]);
    out.topic_tokens.push_back(result.topic_tokens[t]);
    out.doc_frequency.push_back(result.doc_frequency[t]);
  }
  out.theta.reserve(result.theta.size());
  for (const auto& row : result.theta) {
    std::vector<double> slim(keep.size());
    for (size_t i = 0; i < keep.size(); ++i) slim[i] = row[keep[i]];
    normalize(slim);
    out.theta.push_back(std::move(slim));
  }
  return out;
}

}  // namespace

TopicModelResult prune_topics(const TopicModelResult& result,
                              const ReductionPolicy& policy,
                              ReductionReport* report) {
  if (policy.min_doc_frequency < 0)
    throw std::invalid_argument("min_doc_frequency must be nonnegative");
  std::vector<int> keep;
  for (int t = 0; t < result.topics(); ++t) {
    if (result.doc_frequency[t] >= policy.min_doc_frequency)
      keep.push_back(t);
    else if (report)
      report->pruned.push_back(result.labels[t]);
  }
  if (keep.empty())
    throw std::runtime_error(
        "every topic fell below min_doc_frequency; lower the threshold");
  if (static_cast<int>(keep.size()) == result.topics()) {
    // Nothing dropped: leave theta untouched so pruning is idempotent.
    if (report) report->surviving = result.labels;
    return result;
  }
  TopicModelResult out = keep_topics(result, keep);
  if (report) report->surviving = out.labels;
  return out;
}

TopicModelResult cluster_to_k(const TopicModelResult& result, int target_k,
                              ReductionReport* report) {
  if (target_k < 1) throw std::invalid_argument("target_k must be positive");
  int n = result.topics();
  if (target_k > n)
    throw std::invalid_argument("target_k exceeds the current topic count");

  TopicModelResult out = result;
  out.lambda_posterior.clear();  // rows no longer line up with source topics
  // Pairwise JSD cache; only the merged row's entries are recomputed.
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      dist[i][j] = dist[j][i] = js_divergence(out.phi[i], out.phi[j]);

  while (static_cast<int>(out.phi.size()) > target_k) {
    int m = static_cast<int>(out.phi.size());
    int bi = 0, bj = 1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (dist[i][j] < best) {
          best = dist[i][j];
          bi = i;
          bj = j;
        }

    double wi = out.topic_tokens[bi], wj = out.topic_tokens[bj];
    double tot = wi + wj;
    double fi = tot > 0.0 ? wi / tot : 0.5;
    std::string kept = wj > wi ? out.labels[bj] : out.labels[bi];
    std::string absorbed = wj > wi ? out.labels[bi] : out.labels[bj];
    if (report) report->merges.push_back({kept, absorbed, best});

    for (int v = 0; v < out.vocab(); ++v)
      out.phi[bi][v] = fi * out.phi[bi][v] + (1.0 - fi) * out.phi[bj][v];
    out.labels[bi] = kept;
    out.topic_tokens[bi] = tot;
    out.doc_frequency[bi] =
        std::max(out.doc_frequency[bi], out.doc_frequency[bj]);
    for (auto& row : out.theta) {
      row[bi] += row[bj];
      row.erase(row.begin() + bj);
    }
    out.phi.erase(out.phi.begin() + bj);
    out.labels.erase(out.labels.begin() + bj);
    out.topic_tokens.erase(out.topic_tokens.begin() + bj);
    out.doc_frequency.erase(out.doc_frequency.begin() + bj);

    for (int i = 0; i < m; ++i) dist[i].erase(dist[i].begin() + bj);
    dist.erase(dist.begin() + bj);
    for (int i = 0; i < m - 1; ++i) {
      if (i == bi) continue;
      dist[bi][i] = dist[i][bi] = js_divergence(out.phi[bi], out.phi[i]);
    }
  }
  if (report) report->surviving = out.labels;
  return out;
}

TopicModelResult reduce_topics(const TopicModelResult& result,
                               const ReductionPolicy& policy,
                               ReductionReport* report) {
  TopicModelResult out = prune_topics(result, policy, report);
  if (policy.target_k >= 0) out = cluster_to_k(out, policy.target_k, report);
  return out;
}

}  // namespace srclda
