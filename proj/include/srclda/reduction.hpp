#pragma once

#include <string>
#include <vector>

#include "srclda/model.hpp"

namespace srclda {

struct ReductionPolicy {
  // A topic survives pruning only if at least this many documents hold one of
  // its tokens. 0 keeps everything.
  int min_doc_frequency = 1;
  // Agglomerative merge target after pruning; < 0 skips clustering.
  int target_k = -1;
};

struct MergeRecord {
  std::string kept;
  std::string absorbed;
  double jsd = 0.0;
};

struct ReductionReport {
  std::vector<std::string> pruned;
  std::vector<MergeRecord> merges;
  std::vector<std::string> surviving;
};

// Drops topics below the document-frequency threshold; theta rows are
// renormalized over the survivors. Errors if nothing survives.
TopicModelResult prune_topics(const TopicModelResult& result,
                              const ReductionPolicy& policy,
                              ReductionReport* report = nullptr);

// Repeatedly merges the pair of phi rows with the smallest JSD (merged row =
// token-mass-weighted average, label from the heavier member, theta columns
// summed) until target_k topics remain.
TopicModelResult cluster_to_k(const TopicModelResult& result, int target_k,
                              ReductionReport* report = nullptr);

// prune_topics followed by cluster_to_k when the policy asks for both.
TopicModelResult reduce_topics(const TopicModelResult& result,
                               const ReductionPolicy& policy,
                               ReductionReport* report = nullptr);

}  // namespace srclda
