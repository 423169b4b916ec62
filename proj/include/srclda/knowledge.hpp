#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "srclda/corpus.hpp"
#include "srclda/rng.hpp"

namespace srclda {

// One knowledge-source article, counted over the corpus vocabulary.
struct SourceTopic {
  std::string label;
  std::vector<long long> counts;  // length V
  std::vector<double> delta0;     // counts + epsilon, the unsmoothed prior
  std::vector<int32_t> support;   // word ids with counts > 0
  long long total = 0;            // sum of counts
  double epsilon = 0.01;          // the off-support delta0 value
};

struct KnowledgeSource {
  std::vector<SourceTopic> topics;
  double epsilon = 0.01;

  int size() const { return static_cast<int>(topics.size()); }
  // -1 when absent.
  int find(const std::string& label) const;
};

SourceTopic make_source_topic(const std::string& label,
                              std::vector<long long> counts, double epsilon);

// Reads every *.txt file in dir (sorted by filename; label = stem), counting
// tokens that appear in vocab. Errors: no articles, duplicate labels, or an
// article sharing no vocabulary with the corpus.
KnowledgeSource load_knowledge_source(const std::filesystem::path& dir,
                                      const Vocabulary& vocab, double epsilon);

// counts / total over the full vocabulary (zero off support).
std::vector<double> source_distribution(const SourceTopic& topic);

// delta0 raised elementwise to `exponent`.
std::vector<double> raise_delta(const SourceTopic& topic, double exponent);

// Piecewise-linear map from [0,1] to Dirichlet exponents, calibrated so the
// expected JS divergence of Dir(delta0^g(x)) draws from the source
// distribution falls linearly in x.
struct SmoothingFunction {
  std::vector<double> grid;      // inputs, increasing, grid.front()=0, back()=1
  std::vector<double> g_values;  // exponents, nondecreasing, 0 at 0 and 1 at 1
  bool identity = false;         // calibration was degenerate (flat JSD curve)

  double operator()(double x) const;
  static SmoothingFunction make_identity();
};

struct CalibrationConfig {
  int grid_size = 21;  // lambda grid points, inclusive of both endpoints
  int samples = 100;   // Dirichlet draws per grid point
};

// Mean JS divergence between Dir(delta0^exponent) draws and the source
// distribution. Off-support words are lumped into one Gamma variate with the
// summed shape, which leaves the JSD distribution unchanged (their individual
// masses only enter through the total).
double mean_jsd_at_exponent(const SourceTopic& topic, double exponent,
                            int samples, RandomStream& rng);

SmoothingFunction calibrate_g(const SourceTopic& topic,
                              const CalibrationConfig& cfg, RandomStream rng);

// Calibrated smoothing functions keyed by topic label, persisted as JSON.
// The key fields must match exactly for a cached entry to be reused.
struct GCacheKey {
  double epsilon = 0.01;
  int grid_size = 21;
  int samples = 100;
  uint64_t seed = 0;
};

void save_g_cache(const std::filesystem::path& path, const GCacheKey& key,
                  const std::vector<std::string>& labels,
                  const std::vector<SmoothingFunction>& funcs);

// Returns per-label functions for every label found under a matching key;
// missing labels are left empty. Returns false if the file does not exist or
// the key does not match.
bool load_g_cache(const std::filesystem::path& path, const GCacheKey& key,
                  const std::vector<std::string>& labels,
                  std::vector<SmoothingFunction>* out);

}  // namespace srclda
