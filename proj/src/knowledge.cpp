#include "srclda/knowledge.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "srclda/stats.hpp"

namespace srclda {

int KnowledgeSource::find(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (topics[i].label == label) return i;
  return -1;
}

SourceTopic make_source_topic(const std::string& label,
                              std::vector<long long> counts, double epsilon) {
  SourceTopic t;
  t.label = label;
  t.counts = std::move(counts);
  t.epsilon = epsilon;
  t.delta0.resize(t.counts.size());
  for (size_t w = 0; w < t.counts.size(); ++w) {
    if (t.counts[w] < 0)
      throw std::invalid_argument("source topic counts must be nonnegative");
    t.delta0[w] = static_cast<double>(t.counts[w]) + epsilon;
    if (t.counts[w] > 0) {
      t.support.push_back(static_cast<int32_t>(w));
      t.total += t.counts[w];
    }
  }
  return t;
}

KnowledgeSource load_knowledge_source(const std::filesystem::path& dir,
                                      const Vocabulary& vocab, double epsilon) {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("knowledge epsilon must be positive");
  if (!std::filesystem::is_directory(dir))
    throw std::runtime_error("knowledge source is not a directory: " + dir.string());

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".txt")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw std::runtime_error("no .txt articles in knowledge directory: " + dir.string());

  KnowledgeSource ks;
  ks.epsilon = epsilon;
  std::set<std::string> seen;
  for (const auto& file : files) {
    std::string label = file.stem().string();
    if (!seen.insert(label).second)
      throw std::runtime_error("duplicate knowledge label: " + label);
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open article: " + file.string());
    std::vector<long long> counts(vocab.size(), 0);
    std::string tok;
    while (in >> tok) {
      int32_t w = vocab.find(tok);
      if (w >= 0) ++counts[w];
    }
    SourceTopic topic = make_source_topic(label, std::move(counts), epsilon);
    if (topic.total == 0)
      throw std::runtime_error("article '" + label +
                               "' shares no vocabulary with the corpus");
    ks.topics.push_back(std::move(topic));
  }
  return ks;
}

std::vector<double> source_distribution(const SourceTopic& topic) {
  if (topic.total <= 0)
    throw std::invalid_argument("source topic has no counted words");
  std::vector<double> dist(topic.counts.size(), 0.0);
  for (int32_t w : topic.support)
    dist[w] = static_cast<double>(topic.counts[w]) / topic.total;
  return dist;
}

std::vector<double> raise_delta(const SourceTopic& topic, double exponent) {
  std::vector<double> out(topic.delta0.size());
  for (size_t w = 0; w < out.size(); ++w) out[w] = std::pow(topic.delta0[w], exponent);
  return out;
}

double SmoothingFunction::operator()(double x) const {
  if (grid.size() < 2 || grid.size() != g_values.size())
    throw std::logic_error("smoothing function not calibrated");
  if (x <= grid.front()) return g_values.front();
  if (x >= grid.back()) return g_values.back();
  auto it = std::upper_bound(grid.begin(), grid.end(), x);
  size_t hi = static_cast<size_t>(it - grid.begin());
  size_t lo = hi - 1;
  double span = grid[hi] - grid[lo];
  double frac = span > 0.0 ? (x - grid[lo]) / span : 0.0;
  return g_values[lo] + frac * (g_values[hi] - g_values[lo]);
}

SmoothingFunction SmoothingFunction::make_identity() {
  SmoothingFunction f;
  f.grid = {0.0, 1.0};
  f.g_values = {0.0, 1.0};
  f.identity = true;
  return f;
}

double mean_jsd_at_exponent(const SourceTopic& topic, double exponent,
                            int samples, RandomStream& rng) {
  if (samples < 1) throw std::invalid_argument("samples must be positive");
  size_t V = topic.delta0.size();
  size_t S = topic.support.size();
  if (S == 0) throw std::invalid_argument("source topic has empty support");

  std::vector<double> shape(S), q(S);
  for (size_t i = 0; i < S; ++i) {
    int32_t w = topic.support[i];
    shape[i] = std::pow(topic.delta0[w], exponent);
    q[i] = static_cast<double>(topic.counts[w]) / topic.total;
  }
  double eps_pow = std::pow(topic.epsilon, exponent);
  double rest_shape = static_cast<double>(V - S) * eps_pow;

  double acc = 0.0;
  std::vector<double> draw(S);
  for (int s = 0; s < samples; ++s) {
    double total = 0.0;
    for (size_t i = 0; i < S; ++i) {
      draw[i] = rng.gamma(shape[i]);
      total += draw[i];
    }
    double rest = rest_shape > 0.0 ? rng.gamma(rest_shape) : 0.0;
    total += rest;
    double jsd;
    if (total <= 0.0) {
      jsd = 1.0;  // fully degenerate draw; treat as maximally distant
    } else {
      jsd = 0.5 * (rest / total);  // off-support mass: q is 0 there
      for (size_t i = 0; i < S; ++i) {
        double p = draw[i] / total;
        double m = 0.5 * (p + q[i]);
        if (p > 0.0) jsd += 0.5 * p * std::log2(p / m);
        jsd += 0.5 * q[i] * std::log2(q[i] / m);
      }
      jsd = std::clamp(jsd, 0.0, 1.0);
    }
    acc += jsd;
  }
  return acc / samples;
}

SmoothingFunction calibrate_g(const SourceTopic& topic,
                              const CalibrationConfig& cfg, RandomStream rng) {
  int M = cfg.grid_size;
  if (M < 2) throw std::invalid_argument("calibration grid needs >= 2 points");

  std::vector<double> lam(M), d(M);
  for (int m = 0; m < M; ++m) {
    lam[m] = static_cast<double>(m) / (M - 1);
    d[m] = mean_jsd_at_exponent(topic, lam[m], cfg.samples, rng);
  }
  // The curve is decreasing in expectation; clamp out sampling noise.
  for (int m = 1; m < M; ++m) d[m] = std::min(d[m], d[m - 1]);

  double range = d[0] - d[M - 1];
  if (!(range > 1e-9)) {
    std::cerr << "[srclda] warning: flat calibration curve for '" << topic.label
              << "', using identity smoothing\n";
    return SmoothingFunction::make_identity();
  }

  std::vector<double> D(M);
  for (int m = 0; m < M; ++m) D[m] = (d[0] - d[m]) / range;
  D[0] = 0.0;
  D[M - 1] = 1.0;

  SmoothingFunction f;
  f.grid.resize(M);
  f.g_values.resize(M);
  int seg = 0;
  for (int j = 0; j < M; ++j) {
    double x = static_cast<double>(j) / (M - 1);
    f.grid[j] = x;
    if (j == 0) {
      f.g_values[j] = 0.0;
      continue;
    }
    if (j == M - 1) {
      f.g_values[j] = 1.0;
      continue;
    }
    while (seg < M - 2 && (D[seg + 1] < x || D[seg + 1] <= D[seg])) ++seg;
    double width = D[seg + 1] - D[seg];
    double frac = width > 0.0 ? (x - D[seg]) / width : 1.0;
    frac = std::clamp(frac, 0.0, 1.0);
    f.g_values[j] = lam[seg] + frac * (lam[seg + 1] - lam[seg]);
  }
  for (int j = 1; j < M; ++j)
    f.g_values[j] = std::max(f.g_values[j], f.g_values[j - 1]);
  return f;
}

void save_g_cache(const std::filesystem::path& path, const GCacheKey& key,
                  const std::vector<std::string>& labels,
                  const std::vector<SmoothingFunction>& funcs) {
  if (labels.size() != funcs.size())
    throw std::invalid_argument("g cache: labels/functions size mismatch");
  nlohmann::json j;
  j["epsilon"] = key.epsilon;
  j["grid_size"] = key.grid_size;
  j["samples"] = key.samples;
  j["seed"] = key.seed;
  nlohmann::json topics = nlohmann::json::object();
  for (size_t i = 0; i < labels.size(); ++i) {
    topics[labels[i]] = {{"grid", funcs[i].grid},
                         {"g", funcs[i].g_values},
                         {"identity", funcs[i].identity}};
  }
  j["topics"] = std::move(topics);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write g cache: " + path.string());
  out << j.dump(2) << '\n';
}

bool load_g_cache(const std::filesystem::path& path, const GCacheKey& key,
                  const std::vector<std::string>& labels,
                  std::vector<SmoothingFunction>* out) {
  std::ifstream in(path);
  if (!in) return false;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception&) {
    return false;
  }
  if (j.value("epsilon", -1.0) != key.epsilon) return false;
  if (j.value("grid_size", -1) != key.grid_size) return false;
  if (j.value("samples", -1) != key.samples) return false;
  if (j.value("seed", uint64_t(0)) != key.seed) return false;
  if (!j.contains("topics")) return false;

  out->assign(labels.size(), SmoothingFunction{});
  bool any = false;
  for (size_t i = 0; i < labels.size(); ++i) {
    auto it = j["topics"].find(labels[i]);
    if (it == j["topics"].end()) continue;
    SmoothingFunction f;
    f.grid = it->at("grid").get<std::vector<double>>();
    f.g_values = it->at("g").get<std::vector<double>>();
    f.identity = it->value("identity", false);
    if (f.grid.size() != f.g_values.size() || f.grid.size() < 2) continue;
    (*out)[i] = std::move(f);
    any = true;
  }
  return any;
}

}  // namespace srclda
