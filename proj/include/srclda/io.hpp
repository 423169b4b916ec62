#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "srclda/corpus.hpp"
#include "srclda/model.hpp"
#include "srclda/reduction.hpp"
#include "srclda/synth.hpp"

namespace srclda {

struct RunMeta {
  ModelConfig config;
  std::string corpus_path;
  std::string sources_path;
  int docs = 0;
  int vocab = 0;
  int topics = 0;
  int unlabeled = 0;
  double runtime_seconds = 0.0;
  std::vector<long long> swap_counts;
  long long boundary_events = 0;
};

// Writes phi.csv (header = vocabulary), theta.csv (header = labels),
// labels.json, z.txt (one document per line), counts.csv (nonzero word-topic
// counts) and run_meta.json into dir.
void save_run(const std::filesystem::path& dir, const TopicModelResult& result,
              const Vocabulary& vocab, const SamplerState& state,
              const RunMeta& meta);

struct LoadedRun {
  TopicModelResult result;
  Vocabulary vocab;
  std::vector<std::vector<int32_t>> z;
  std::vector<int32_t> n_w;  // V x T
  std::vector<int32_t> n_t;  // T
  RunMeta meta;
};

LoadedRun load_run(const std::filesystem::path& dir);

void save_ground_truth(const std::filesystem::path& path,
                       const GroundTruth& truth, const Vocabulary& vocab);
GroundTruth load_ground_truth(const std::filesystem::path& path,
                              Vocabulary* vocab);

void save_reduction_report(const std::filesystem::path& path,
                           const ReductionReport& report);

// Single-column CSV with a header, for sorted metric curves.
void write_curve_csv(const std::filesystem::path& path, const std::string& name,
                     const std::vector<double>& values);

// Shortest decimal string that round-trips the exact double.
std::string format_double(double value);

}  // namespace srclda
