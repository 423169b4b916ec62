#include "srclda/synth.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include "srclda/stats.hpp"

namespace srclda {

namespace {

std::vector<double> cumsum(const std::vector<double>& v) {
  std::vector<double> c(v.size());
  double run = 0.0;
  for (size_t i = 0; i < v.size(); ++i) {
    run += v[i];
    c[i] = run;
  }
  return c;
}

size_t draw(const std::vector<double>& cum, RandomStream& rng) {
  return cumulative_draw(cum, rng.uniform01() * cum.back());
}

void generate_documents(const std::vector<std::vector<double>>& phi,
                        double alpha, double xi, int fixed_doc_len, int docs,
                        RandomStream& master, Corpus* corpus,
                        GroundTruth* truth) {
  int T = static_cast<int>(phi.size());
  std::vector<std::vector<double>> phi_cum;
  phi_cum.reserve(T);
  for (const auto& row : phi) phi_cum.push_back(cumsum(row));
  std::vector<double> prior(T, alpha);

  for (int d = 0; d < docs; ++d) {
    RandomStream rng = master.child(kRoleSynthDoc, d);
    int len = fixed_doc_len;
    if (len <= 0)
      do {
        len = rng.poisson(xi);
      } while (len == 0);
    std::vector<double> theta = dirichlet_sample(rng, prior);
    std::vector<double> theta_cum = cumsum(theta);

    Document doc;
    std::vector<int32_t> z_row;
    doc.tokens.reserve(len);
    z_row.reserve(len);
    for (int j = 0; j < len; ++j) {
      int t = static_cast<int>(draw(theta_cum, rng));
      int32_t w = static_cast<int32_t>(draw(phi_cum[t], rng));
      z_row.push_back(t);
      doc.tokens.push_back(w);
    }
    corpus->docs.push_back(std::move(doc));
    truth->theta.push_back(std::move(theta));
    truth->z.push_back(std::move(z_row));
  }
}

}  // namespace

SynthResult generate_corpus(const GenerativeSpec& spec,
                            const Vocabulary& vocab) {
  if (spec.docs < 1) throw std::invalid_argument("docs must be positive");
  if (spec.fixed_doc_len <= 0 && spec.xi <= 0.0)
    throw std::invalid_argument("xi must be positive");
  if (spec.alpha <= 0.0 || spec.beta <= 0.0)
    throw std::invalid_argument("alpha and beta must be positive");
  int V = vocab.size();
  if (V < 1) throw std::invalid_argument("empty vocabulary");

  std::vector<int> used = spec.use_topics;
  if (used.empty())
    for (int b = 0; b < spec.knowledge.size(); ++b) used.push_back(b);
  for (int b : used)
    if (b < 0 || b >= spec.knowledge.size())
      throw std::invalid_argument("use_topics index out of range");
  int K = spec.unlabeled_topics;
  int T = K + static_cast<int>(used.size());
  if (T < 1) throw std::invalid_argument("need at least one topic");

  SynthResult out;
  out.corpus.vocab = vocab;
  out.truth.used_topics = used;
  RandomStream master(spec.seed);

  std::vector<std::vector<double>> phi;
  phi.reserve(T);
  for (int t = 0; t < K; ++t) {
    RandomStream rng = master.child(kRoleSynthTopic, t);
    phi.push_back(dirichlet_sample(rng, std::vector<double>(V, spec.beta)));
    out.truth.labels.push_back("topic_" + std::to_string(t));
  }
  for (size_t j = 0; j < used.size(); ++j) {
    const SourceTopic& src = spec.knowledge.topics[used[j]];
    RandomStream rng = master.child(kRoleSynthTopic, K + static_cast<int>(j));
    double lam = std::clamp(rng.normal(spec.mu, spec.sigma), 0.0, 1.0);
    RandomStream cal = master.child(kRoleCalibration, used[j]);
    SmoothingFunction g = calibrate_g(src, spec.calibration, cal);
    std::vector<double> delta = raise_delta(src, g(lam));
    phi.push_back(dirichlet_sample(rng, delta));
    out.truth.labels.push_back(src.label);
    out.truth.lambda.push_back(lam);
  }
  out.truth.phi = phi;

  generate_documents(phi, spec.alpha, spec.xi, spec.fixed_doc_len, spec.docs,
                     master, &out.corpus, &out.truth);
  return out;
}

SynthResult generate_from_phi(const std::vector<std::vector<double>>& phi,
                              const std::vector<std::string>& labels,
                              const Vocabulary& vocab, double alpha, double xi,
                              int fixed_doc_len, int docs, uint64_t seed) {
  if (docs < 1) throw std::invalid_argument("docs must be positive");
  if (phi.empty()) throw std::invalid_argument("no topics");
  if (labels.size() != phi.size())
    throw std::invalid_argument("one label per topic required");

  SynthResult out;
  out.corpus.vocab = vocab;
  out.truth.labels = labels;
  out.truth.phi = phi;
  RandomStream master(seed);
  generate_documents(phi, alpha, xi, fixed_doc_len, docs, master, &out.corpus,
                     &out.truth);
  return out;
}

PixelTopicSet pixel_topics() {
  PixelTopicSet set;
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y)
      set.vocab.add(std::string{char('0' + x), char('0' + y)});
  for (int i = 0; i < 10; ++i) {
    std::vector<int32_t> sup;
    for (int k = 0; k < 5; ++k) {
      std::string w = i < 5 ? std::string{char('0' + k), char('0' + i)}
                            : std::string{char('0' + (i - 5)), char('0' + k)};
      sup.push_back(set.vocab.find(w));
    }
    set.support.push_back(std::move(sup));
    set.labels.push_back((i < 5 ? "row_" : "col_") +
                         std::to_string(i < 5 ? i : i - 5));
  }
  return set;
}

std::vector<std::vector<double>> PixelTopicSet::phi() const {
  std::vector<std::vector<double>> rows;
  rows.reserve(support.size());
  for (const auto& sup : support) {
    std::vector<double> row(vocab.size(), 0.0);
    for (int32_t w : sup) row[w] = 1.0 / static_cast<double>(sup.size());
    rows.push_back(std::move(row));
  }
  return rows;
}

PixelTopicSet augment_topics(const PixelTopicSet& base, RandomStream& rng) {
  int n = static_cast<int>(base.support.size());
  if (n % 2 != 0) throw std::invalid_argument("topic count must be even");
  auto in = [](const std::vector<int32_t>& sup, int32_t w) {
    return std::find(sup.begin(), sup.end(), w) != sup.end();
  };

  for (;;) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) {
      int j = static_cast<int>(rng.uniform_int(uint32_t(i + 1)));
      std::swap(perm[i], perm[j]);
    }

    PixelTopicSet out = base;
    bool ok = true;
    for (int pair = 0; pair < n / 2 && ok; ++pair) {
      int ai = perm[2 * pair], bi = perm[2 * pair + 1];
      const auto& orig_a = base.support[ai];
      const auto& orig_b = base.support[bi];
      bool swapped = false;
      for (int attempt = 0; attempt < 100 && !swapped; ++attempt) {
        int32_t a = orig_a[rng.uniform_int(uint32_t(orig_a.size()))];
        int32_t b = orig_b[rng.uniform_int(uint32_t(orig_b.size()))];
        if (in(orig_a, b) || in(orig_b, a)) continue;
        std::replace(out.support[ai].begin(), out.support[ai].end(), a, b);
        std::replace(out.support[bi].begin(), out.support[bi].end(), b, a);
        swapped = true;
      }
      ok = swapped;
    }
    if (ok) return out;
  }
}

double intensity(double p_w_given_t) { return std::max(5.0 * p_w_given_t, 1.0); }

KnowledgeSource pixel_knowledge(const PixelTopicSet& set, long long count,
                                double epsilon) {
  KnowledgeSource ks;
  ks.epsilon = epsilon;
  for (size_t i = 0; i < set.support.size(); ++i) {
    std::vector<long long> counts(set.vocab.size(), 0);
    for (int32_t w : set.support[i]) counts[w] = count;
    ks.topics.push_back(make_source_topic(set.labels[i], counts, epsilon));
  }
  return ks;
}

Vocabulary synthetic_vocabulary(int size) {
  Vocabulary v;
  for (int i = 0; i < size; ++i) {
    std::string name = std::to_string(i);
    v.add("w" + std::string(4 - std::min<size_t>(4, name.size()), '0') + name);
  }
  return v;
}

KnowledgeSource random_knowledge_source(int topics, const Vocabulary& vocab,
                                        int words_per_topic,
                                        long long max_count, double epsilon,
                                        RandomStream& rng) {
  int V = vocab.size();
  if (topics < 1 || words_per_topic < 1 || words_per_topic > V)
    throw std::invalid_argument("bad knowledge-source shape");
  KnowledgeSource ks;
  ks.epsilon = epsilon;
  for (int b = 0; b < topics; ++b) {
    std::unordered_set<int32_t> chosen;
    while (static_cast<int>(chosen.size()) < words_per_topic)
      chosen.insert(static_cast<int32_t>(rng.uniform_int(uint32_t(V))));
    std::vector<long long> counts(V, 0);
    for (int32_t w : chosen)
      counts[w] = 1 + static_cast<long long>(rng.uniform_int(uint32_t(max_count)));
    std::string name = std::to_string(b);
    std::string label =
        "src_" + std::string(4 - std::min<size_t>(4, name.size()), '0') + name;
    ks.topics.push_back(make_source_topic(label, counts, epsilon));
  }
  return ks;
}

Vocabulary vocab_from_sources(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw std::runtime_error("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".txt")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  Vocabulary vocab;
  for (const auto& file : files) {
    std::ifstream in(file);
    std::string word;
    while (in >> word) vocab.add(word);
  }
  if (vocab.size() == 0)
    throw std::runtime_error("no vocabulary under " + dir.string());
  return vocab;
}

void write_sources(const std::filesystem::path& dir,
                   const KnowledgeSource& knowledge, const Vocabulary& vocab) {
  std::filesystem::create_directories(dir);
  for (const auto& topic : knowledge.topics) {
    std::ofstream out(dir / (topic.label + ".txt"));
    if (!out)
      throw std::runtime_error("cannot write source article for " + topic.label);
    int on_line = 0;
    for (int32_t w : topic.support)
      for (long long k = 0; k < topic.counts[w]; ++k) {
        out << vocab.words[w] << (++on_line % 20 == 0 ? '\n' : ' ');
      }
    out << '\n';
  }
}

namespace {

std::pair<int, int> cell_of(const std::string& word) {
  if (word.size() != 2 || !isdigit(word[0]) || !isdigit(word[1]))
    throw std::invalid_argument("not a pixel cell name: " + word);
  return {word[0] - '0', word[1] - '0'};
}

}  // namespace

void write_intensity_csv(const std::vector<std::vector<double>>& phi,
                         const std::vector<std::string>& labels,
                         const Vocabulary& vocab,
                         const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "topic,label,x,y,p,intensity\n";
  for (size_t t = 0; t < phi.size(); ++t)
    for (int32_t w = 0; w < vocab.size(); ++w) {
      auto [x, y] = cell_of(vocab.words[w]);
      out << t << ',' << labels[t] << ',' << x << ',' << y << ','
          << phi[t][w] << ',' << intensity(phi[t][w]) << '\n';
    }
}

void write_intensity_pgm(const std::vector<std::vector<double>>& phi,
                         const Vocabulary& vocab,
                         const std::filesystem::path& path) {
  int n = static_cast<int>(phi.size());
  int cols = (n + 1) / 2;
  int width = cols * 5 + (cols - 1), height = n > 1 ? 11 : 5;
  std::vector<std::vector<int>> img(height, std::vector<int>(width, 0));
  double peak = 1.0;
  for (const auto& row : phi)
    for (int32_t w = 0; w < vocab.size(); ++w)
      peak = std::max(peak, intensity(row[w]));
  for (int t = 0; t < n; ++t) {
    int ox = (t % cols) * 6, oy = (t / cols) * 6;
    for (int32_t w = 0; w < vocab.size(); ++w) {
      auto [x, y] = cell_of(vocab.words[w]);
      img[oy + y][ox + x] =
          static_cast<int>(std::lround(255.0 * intensity(phi[t][w]) / peak));
    }
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "P2\n" << width << ' ' << height << "\n255\n";
  for (const auto& row : img) {
    for (size_t i = 0; i < row.size(); ++i)
      out << row[i] << (i + 1 == row.size() ? '\n' : ' ');
  }
}

}  // namespace srclda
