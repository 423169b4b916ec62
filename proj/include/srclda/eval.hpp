#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "srclda/corpus.hpp"
#include "srclda/knowledge.hpp"
#include "srclda/model.hpp"
#include "srclda/rng.hpp"

namespace srclda {

struct HeldOutSet {
  std::vector<Document> documents;
  long long dropped_tokens = 0;  // out-of-vocabulary tokens removed

  size_t token_count() const;
};

// Same file format as load_corpus; tokens missing from vocab are dropped and
// counted. Errors if no tokens survive.
HeldOutSet load_heldout(const std::filesystem::path& path,
                        const Vocabulary& vocab);

// Maps an in-memory corpus onto a training vocabulary.
HeldOutSet heldout_from(const Corpus& held, const Vocabulary& vocab);

// Importance-sampled held-out perplexity with the Dir(alpha) prior as the
// proposal. One shared set of theta samples scores every document, so the
// result does not depend on document order.
double perplexity_importance(const TopicModelResult& result,
                             const HeldOutSet& heldout, double alpha,
                             int samples, RandomStream rng);

// Fraction of tokens whose predicted topic label matches the true label.
double classification_accuracy(const std::vector<std::vector<int32_t>>& z_pred,
                               const std::vector<std::string>& labels_pred,
                               const std::vector<std::vector<int32_t>>& z_true,
                               const std::vector<std::string>& labels_true);

// Label of the source topic with the smallest JSD to each phi row;
// many-to-one mappings are allowed.
std::vector<std::string> map_topics_to_labels(
    const std::vector<std::vector<double>>& phi,
    const KnowledgeSource& knowledge);

// Mean pairwise PMI of each topic's top_n words, counted over sliding windows
// of `window` tokens within each document (one window when a document is
// shorter). Scores come back in topic order.
std::vector<double> pmi_coherence(const TopicModelResult& result,
                                  const Corpus& corpus, int top_n, int window);

struct ThetaJsReport {
  std::vector<double> sorted;  // ascending per-document JSD
  double total = 0.0;
};

ThetaJsReport theta_js_total(const std::vector<std::vector<double>>& theta_pred,
                             const std::vector<std::vector<double>>& theta_true);

}  // namespace srclda
