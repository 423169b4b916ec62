#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "srclda/corpus.hpp"
#include "srclda/knowledge.hpp"
#include "srclda/rng.hpp"

namespace srclda {

struct GenerativeSpec {
  KnowledgeSource knowledge;     // offered source topics
  std::vector<int> use_topics;   // offered indices used in generation; empty = all
  int unlabeled_topics = 0;      // K, symmetric-beta topics drawn fresh
  double alpha = 1.0;
  double beta = 0.01;
  double xi = 25.0;              // Poisson mean document length
  int fixed_doc_len = 0;         // > 0 replaces the Poisson draw
  int docs = 0;
  double mu = 0.7;
  double sigma = 0.3;            // lambda draws are clamped to [0, 1]
  CalibrationConfig calibration;
  uint64_t seed = 1;
};

struct GroundTruth {
  std::vector<std::string> labels;          // per generative topic
  std::vector<std::vector<double>> phi;     // T_gen x V
  std::vector<std::vector<double>> theta;   // D x T_gen
  std::vector<std::vector<int32_t>> z;      // per-token topic assignments
  std::vector<double> lambda;               // per source topic, post-clamp
  std::vector<int> used_topics;             // offered indices actually used
};

struct SynthResult {
  Corpus corpus;
  GroundTruth truth;
};

// Full generative pass: unlabeled phi ~ Dir(beta); per source topic lambda ~
// clamped N(mu, sigma) and phi ~ Dir(delta^g(lambda)); per document N_d ~
// Poisson(xi) (redrawn while zero, or fixed_doc_len), theta ~ Dir(alpha),
// tokens z ~ Mult(theta), w ~ Mult(phi_z).
SynthResult generate_corpus(const GenerativeSpec& spec, const Vocabulary& vocab);

// Document loop only — the rows of phi are taken as the topics verbatim.
SynthResult generate_from_phi(const std::vector<std::vector<double>>& phi,
                              const std::vector<std::string>& labels,
                              const Vocabulary& vocab, double alpha, double xi,
                              int fixed_doc_len, int docs, uint64_t seed);

// The 5x5 cell fixture: vocabulary "xy" (column digit then row digit), five
// row topics then five column topics, each uniform on its five cells.
struct PixelTopicSet {
  Vocabulary vocab;
  std::vector<std::vector<int32_t>> support;  // 10 x 5 word ids
  std::vector<std::string> labels;

  std::vector<std::vector<double>> phi() const;
};

PixelTopicSet pixel_topics();

// Pairs the ten topics at random and swaps one supported word across each
// pair, rejecting swaps that land a word back in its own original topic.
// Every returned topic differs from its original in exactly one of five words.
PixelTopicSet augment_topics(const PixelTopicSet& base, RandomStream& rng);

// Display intensity for one cell probability.
double intensity(double p_w_given_t);

// The fixture as a knowledge source: every supported cell gets the same count.
KnowledgeSource pixel_knowledge(const PixelTopicSet& set, long long count,
                                double epsilon);

// Word names "w0000"...; fixture vocabulary for generated knowledge sources.
Vocabulary synthetic_vocabulary(int size);

// `topics` random articles: words_per_topic distinct words each, counts
// uniform in [1, max_count].
KnowledgeSource random_knowledge_source(int topics, const Vocabulary& vocab,
                                        int words_per_topic,
                                        long long max_count, double epsilon,
                                        RandomStream& rng);

// First-appearance vocabulary over every *.txt article in dir (sorted).
Vocabulary vocab_from_sources(const std::filesystem::path& dir);

// One "<label>.txt" per topic, each supported word repeated count times;
// load_knowledge_source over the same vocabulary reproduces the counts.
void write_sources(const std::filesystem::path& dir,
                   const KnowledgeSource& knowledge, const Vocabulary& vocab);

// 5x5 intensity rasters for phi rows over the pixel vocabulary.
void write_intensity_csv(const std::vector<std::vector<double>>& phi,
                         const std::vector<std::string>& labels,
                         const Vocabulary& vocab,
                         const std::filesystem::path& path);
void write_intensity_pgm(const std::vector<std::vector<double>>& phi,
                         const Vocabulary& vocab,
                         const std::filesystem::path& path);

}  // namespace srclda
