#include "srclda/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "srclda/stats.hpp"

namespace srclda {

size_t HeldOutSet::token_count() const {
  size_t n = 0;
  for (const auto& d : documents) n += d.tokens.size();
  return n;
}

HeldOutSet heldout_from(const Corpus& held, const Vocabulary& vocab) {
  HeldOutSet out;
  for (const auto& doc : held.docs) {
    Document mapped;
    for (int32_t w : doc.tokens) {
      int32_t id = vocab.find(held.vocab.words[w]);
      if (id >= 0)
        mapped.tokens.push_back(id);
      else
        ++out.dropped_tokens;
    }
    out.documents.push_back(std::move(mapped));
  }
  if (out.token_count() == 0)
    throw std::runtime_error("held-out set shares no vocabulary with training");
  return out;
}

HeldOutSet load_heldout(const std::filesystem::path& path,
                        const Vocabulary& vocab) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  HeldOutSet out;
  std::string line, word;
  while (std::getline(in, line)) {
    Document doc;
    std::istringstream row(line);
    while (row >> word) {
      int32_t id = vocab.find(word);
      if (id >= 0)
        doc.tokens.push_back(id);
      else
        ++out.dropped_tokens;
    }
    out.documents.push_back(std::move(doc));
  }
  if (out.documents.empty())
    throw std::runtime_error("empty held-out file: " + path.string());
  if (out.token_count() == 0)
    throw std::runtime_error("held-out set shares no vocabulary with training");
  return out;
}

double perplexity_importance(const TopicModelResult& result,
                             const HeldOutSet& heldout, double alpha,
                             int samples, RandomStream rng) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  if (heldout.token_count() == 0)
    throw std::invalid_argument("held-out set is empty");
  int T = result.topics();
  std::vector<double> prior(T, alpha);
  std::vector<std::vector<double>> thetas(samples);
  for (auto& th : thetas) th = dirichlet_sample(rng, prior);

  // Contributions are per-document and order-free; summing them sorted keeps
  // the result bitwise identical under any permutation of the held-out set.
  std::vector<double> doc_log;
  size_t tokens = 0;
  std::vector<double> sample_log(samples);
  for (const auto& doc : heldout.documents) {
    if (doc.tokens.empty()) continue;
    for (int s = 0; s < samples; ++s) {
      double acc = 0.0;
      for (int32_t w : doc.tokens) {
        double like = 0.0;
        for (int t = 0; t < T; ++t) like += thetas[s][t] * result.phi[t][w];
        acc += std::log(std::max(like, 1e-300));
      }
      sample_log[s] = acc;
    }
    doc_log.push_back(log_sum_exp(sample_log) - std::log(double(samples)));
    tokens += doc.tokens.size();
  }
  std::sort(doc_log.begin(), doc_log.end());
  double loglik = 0.0;
  for (double v : doc_log) loglik += v;
  return std::exp(-loglik / static_cast<double>(tokens));
}

double classification_accuracy(const std::vector<std::vector<int32_t>>& z_pred,
                               const std::vector<std::string>& labels_pred,
                               const std::vector<std::vector<int32_t>>& z_true,
                               const std::vector<std::string>& labels_true) {
  if (z_pred.size() != z_true.size())
    throw std::invalid_argument("document count mismatch");
  long long hits = 0, total = 0;
  for (size_t d = 0; d < z_pred.size(); ++d) {
    if (z_pred[d].size() != z_true[d].size())
      throw std::invalid_argument("token count mismatch in document " +
                                  std::to_string(d));
    for (size_t j = 0; j < z_pred[d].size(); ++j) {
      if (labels_pred.at(z_pred[d][j]) == labels_true.at(z_true[d][j])) ++hits;
      ++total;
    }
  }
  if (total == 0) throw std::invalid_argument("no tokens to score");
  return static_cast<double>(hits) / static_cast<double>(total);
}

std::vector<std::string> map_topics_to_labels(
    const std::vector<std::vector<double>>& phi,
    const KnowledgeSource& knowledge) {
  std::vector<std::vector<double>> source_dists;
  source_dists.reserve(knowledge.topics.size());
  for (const auto& t : knowledge.topics)
    source_dists.push_back(source_distribution(t));

  std::vector<std::string> labels;
  labels.reserve(phi.size());
  for (const auto& raw : phi) {
    std::vector<double> row = raw;
    normalize(row);
    int best = 0;
    double best_jsd = 2.0;
    for (size_t s = 0; s < source_dists.size(); ++s) {
      double d = js_divergence(row, source_dists[s]);
      if (d < best_jsd) {
        best_jsd = d;
        best = static_cast<int>(s);
      }
    }
    labels.push_back(knowledge.topics[best].label);
  }
  return labels;
}

std::vector<double> pmi_coherence(const TopicModelResult& result,
                                  const Corpus& corpus, int top_n, int window) {
  if (top_n < 2) throw std::invalid_argument("top_n must be at least 2");
  if (window < 1) throw std::invalid_argument("window must be positive");
  int T = result.topics();
  int V = result.vocab();
  top_n = std::min(top_n, V);

  // Top words per topic, then one counting pass over the corpus restricted to
  // the union of all tracked words.
  std::vector<std::vector<int32_t>> top(T);
  std::unordered_set<int32_t> tracked;
  for (int t = 0; t < T; ++t) {
    std::vector<int32_t> order(V);
    for (int v = 0; v < V; ++v) order[v] = v;
    std::partial_sort(order.begin(), order.begin() + top_n, order.end(),
                      [&](int32_t a, int32_t b) {
                        if (result.phi[t][a] != result.phi[t][b])
                          return result.phi[t][a] > result.phi[t][b];
                        return a < b;
                      });
    top[t].assign(order.begin(), order.begin() + top_n);
    for (int32_t w : top[t]) tracked.insert(w);
  }

  std::unordered_map<int32_t, long long> single;
  std::unordered_map<uint64_t, long long> pair;
  long long windows = 0;
  std::vector<int32_t> present;
  for (const auto& doc : corpus.docs) {
    const auto& toks = doc.tokens;
    if (toks.empty()) continue;
    size_t width = std::min<size_t>(window, toks.size());
    size_t count = toks.size() - width + 1;
    windows += static_cast<long long>(count);
    for (size_t start = 0; start < count; ++start) {
      present.clear();
      for (size_t j = start; j < start + width; ++j)
        if (tracked.count(toks[j])) present.push_back(toks[j]);
      std::sort(present.begin(), present.end());
      present.erase(std::unique(present.begin(), present.end()), present.end());
      for (size_t a = 0; a < present.size(); ++a) {
        ++single[present[a]];
        for (size_t b = a + 1; b < present.size(); ++b)
          ++pair[(uint64_t(uint32_t(present[a])) << 32) |
                 uint32_t(present[b])];
      }
    }
  }
  if (windows == 0) throw std::invalid_argument("corpus has no tokens");

  const double eps = 1e-12;
  std::vector<double> scores(T, 0.0);
  for (int t = 0; t < T; ++t) {
    double acc = 0.0;
    int pairs = 0;
    for (int a = 0; a < top_n; ++a)
      for (int b = a + 1; b < top_n; ++b) {
        int32_t wi = std::min(top[t][a], top[t][b]);
        int32_t wj = std::max(top[t][a], top[t][b]);
        double pi = double(single.count(wi) ? single.at(wi) : 0) / windows;
        double pj = double(single.count(wj) ? single.at(wj) : 0) / windows;
        auto it = pair.find((uint64_t(uint32_t(wi)) << 32) | uint32_t(wj));
        double pij = double(it == pair.end() ? 0 : it->second) / windows;
        acc += std::log2((pij + eps) / (pi * pj + eps));
        ++pairs;
      }
    scores[t] = acc / pairs;
  }
  return scores;
}

ThetaJsReport theta_js_total(
    const std::vector<std::vector<double>>& theta_pred,
    const std::vector<std::vector<double>>& theta_true) {
  if (theta_pred.size() != theta_true.size())
    throw std::invalid_argument("document count mismatch");
  ThetaJsReport out;
  out.sorted.reserve(theta_pred.size());
  for (size_t d = 0; d < theta_pred.size(); ++d) {
    double jsd = js_divergence(theta_pred[d], theta_true[d]);
    out.sorted.push_back(jsd);
    out.total += jsd;
  }
  std::sort(out.sorted.begin(), out.sorted.end());
  return out;
}

}  // namespace srclda
