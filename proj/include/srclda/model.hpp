#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "srclda/knowledge.hpp"

namespace srclda {

// lda:       unlabeled topics only, symmetric beta prior.
// eda:       topic-word rows pinned to the source distributions.
// bijective: source topics only, raw delta prior (exponent 1).
// source:    delta prior raised to g(lambda); lambda either fixed or
//            integrated over a truncated Gaussian on [0,1].
enum class ModelMode { lda, eda, bijective, source };

// Per-token cumulative-sum strategy. All three choose the same topics for the
// same seed, up to draws that land within the boundary tolerance.
enum class ParallelStrategy { none, prefix, simple };

const char* to_string(ModelMode mode);
const char* to_string(ParallelStrategy strategy);
ModelMode parse_mode(const std::string& name);
ParallelStrategy parse_strategy(const std::string& name);

struct ModelConfig {
  ModelMode mode = ModelMode::source;
  int unlabeled_topics = 0;             // K; source topics occupy [K, T)
  std::optional<double> alpha;          // default 50 / T
  std::optional<double> beta;           // default 200 / V
  double epsilon = 0.01;
  double mu = 0.7;
  double sigma = 0.3;                   // standard deviation
  int integration_steps = 20;           // midpoint-rule points on [0,1]
  std::optional<double> lambda_fixed;   // bypasses the integral when set
  int iterations = 500;
  ParallelStrategy strategy = ParallelStrategy::none;
  int workers = 1;
  uint64_t seed = 1;
  CalibrationConfig calibration;
  bool shared_g = false;                // one g from pooled counts
  std::string g_cache;                  // optional JSON cache path

  // source_topics = B from the knowledge source (0 when absent).
  void validate(int source_topics) const;
};

struct SamplerState {
  int V = 0, T = 0, K = 0;
  std::vector<std::vector<int32_t>> z;  // per document topic assignments
  std::vector<int32_t> n_w;             // V x T, word-topic counts
  std::vector<int32_t> n_d;             // D x T, document-topic counts
  std::vector<int32_t> n_t;             // T, topic totals
  long long tokens = 0;

  int32_t nw(int32_t w, int t) const { return n_w[size_t(w) * T + t]; }
  int32_t nd(int d, int t) const { return n_d[size_t(d) * T + t]; }
};

struct TopicModelResult {
  std::vector<std::string> labels;                    // length T
  std::vector<std::vector<double>> phi;               // T x V
  std::vector<std::vector<double>> theta;             // D x T
  std::vector<double> topic_tokens;                   // assignment mass per topic
  std::vector<int> doc_frequency;                     // docs with >= 1 token
  std::vector<std::vector<double>> lambda_posterior;  // B x A when integrating
  std::vector<long long> swap_counts;                 // per iteration
  long long boundary_events = 0;

  int topics() const { return static_cast<int>(phi.size()); }
  int vocab() const { return phi.empty() ? 0 : static_cast<int>(phi[0].size()); }
};

}  // namespace srclda
