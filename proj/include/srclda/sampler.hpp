#pragma once

#include <vector>

#include "srclda/corpus.hpp"
#include "srclda/knowledge.hpp"
#include "srclda/model.hpp"
#include "srclda/rng.hpp"

namespace srclda {

// Collapsed Gibbs sampler over K unlabeled topics plus B source topics.
// Per token: decrement counts, evaluate the conditional over all topics,
// cumulative-sum it with the configured strategy, draw, increment.
class GibbsSampler {
 public:
  GibbsSampler(const Corpus& corpus, const KnowledgeSource* knowledge,
               const ModelConfig& cfg);

  // Restore mode: no corpus, counts supplied via load_counts. Supports
  // snapshot() and heldout_perplexity() but not sweeps.
  GibbsSampler(int vocab_size, const KnowledgeSource* knowledge,
               const ModelConfig& cfg);

  // Calibrates g where the mode needs it, then assigns every token a uniform
  // random topic.
  void init();

  // Adopts externally saved word-topic counts (restore mode).
  void load_counts(const std::vector<int32_t>& n_w,
                   const std::vector<int32_t>& n_t);

  // One full Gibbs pass over every token.
  void sweep();

  // init() + configured iterations + snapshot().
  TopicModelResult run();

  // Point estimates from the current counts.
  TopicModelResult snapshot() const;

  int topics() const { return T_; }
  int unlabeled() const { return K_; }
  int vocab() const { return V_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  const SamplerState& state() const { return state_; }
  const ModelConfig& config() const { return cfg_; }
  const std::vector<long long>& swap_counts() const { return swap_counts_; }
  long long boundary_events() const { return boundary_events_; }

  // Normalized weights over the lambda midpoint grid (integrating modes).
  const std::vector<double>& integration_weights() const { return weights_; }
  const SmoothingFunction& g(int source_index) const;

  // The lambda integral for one source topic and word at explicit counts.
  double integrate_lambda(int source_index, int32_t word, double n_w_value,
                          double n_t_value) const;

  // Normalized conditional for one held token (diagnostic; restores state).
  std::vector<double> conditional(int doc, int pos);

  // Posterior over the lambda grid given the current counts, per source topic.
  std::vector<std::vector<double>> lambda_posterior() const;

  // Recounts every array from z and throws on any mismatch.
  void check_consistency() const;

  // Held-out perplexity: training counts stay frozen while test-side counts
  // evolve by Gibbs sampling; per-token likelihood is averaged over the
  // post-burn-in states.
  double heldout_perplexity(const std::vector<Document>& docs, int burn_in,
                            int samples, uint64_t seed) const;

 private:
  enum class SourceKind { none, eda, fixed, integrate };

  struct SourceCache {
    std::vector<int32_t> sup_index;  // V; row in pow_rows or -1
    std::vector<double> pow_rows;    // support x A (A=1 for fixed kind)
    std::vector<double> eps_pow;     // A entries: epsilon^g(lambda_q)
    std::vector<double> denom;       // A entries: sum_w delta^g(lambda_q)
    std::vector<double> recip;       // A entries: 1 / (n_t + denom)
    std::vector<double> dist;        // eda only: source distribution
  };

  void setup(int vocab_size, const KnowledgeSource* knowledge);
  void calibrate();
  void build_caches();
  void refresh(int t);
  void refresh_all();
  double topic_prob(int t, int32_t w, const int32_t* nd_row, double doc_norm) const;
  double topic_prob_tilde(int t, int32_t w, double extra_nw, double extra_nt,
                          const int32_t* nd_row, double doc_norm) const;
  void sweep_serial();
  void sweep_strategy();
  size_t draw_topic(int32_t w, const int32_t* nd_row, double doc_norm, double u01);

  const Corpus* corpus_ = nullptr;
  const KnowledgeSource* knowledge_ = nullptr;
  ModelConfig cfg_;
  int V_ = 0, D_ = 0, K_ = 0, B_ = 0, T_ = 0, A_ = 1;
  double alpha_ = 0.0, beta_ = 0.0;
  SourceKind source_kind_ = SourceKind::none;
  bool initialized_ = false;

  std::vector<SmoothingFunction> g_;
  std::vector<double> weights_;
  std::vector<SourceCache> caches_;
  std::vector<double> recip_unlab_;

  SamplerState state_;
  RandomStream chain_;
  std::vector<double> p_, cum_, scratch_;
  std::vector<long long> swap_counts_;
  long long boundary_events_ = 0;
};

}  // namespace srclda
