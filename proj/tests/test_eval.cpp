#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "doctest.h"
#include "srclda/eval.hpp"
#include "srclda/sampler.hpp"
#include "srclda/stats.hpp"

using namespace srclda;
namespace fs = std::filesystem;

namespace {

Corpus tiny_corpus() {
  Corpus c;
  c.vocab.add("red");
  c.vocab.add("green");
  c.vocab.add("blue");
  c.vocab.add("cyan");
  c.docs.resize(3);
  c.docs[0].tokens = {0, 1, 0, 2};
  c.docs[1].tokens = {2, 3, 3, 1};
  c.docs[2].tokens = {0, 0, 1, 3};
  return c;
}

TopicModelResult two_topic_result() {
  TopicModelResult r;
  r.labels = {"t0", "t1"};
  r.phi = {{0.7, 0.2, 0.1}, {0.1, 0.3, 0.6}};
  return r;
}

// Simpson quadrature of p(w_d) for T=2 and symmetric Dir(2,2): the marginal
// over theta has density 6 t (1 - t).
double quadrature_doc_likelihood(const TopicModelResult& r,
                                 const std::vector<int32_t>& tokens) {
  const int steps = 20000;
  auto f = [&](double t) {
    double acc = 6.0 * t * (1.0 - t);
    for (int32_t w : tokens) acc *= t * r.phi[0][w] + (1.0 - t) * r.phi[1][w];
    return acc;
  };
  double h = 1.0 / steps, acc = f(0.0) + f(1.0);
  for (int i = 1; i < steps; ++i) acc += f(i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("held-out loading drops out-of-vocabulary tokens and counts them") {
  Corpus train = tiny_corpus();
  Corpus held;
  held.vocab.add("red");
  held.vocab.add("plum");  // unseen in training
  held.docs.resize(2);
  held.docs[0].tokens = {0, 1, 0};
  held.docs[1].tokens = {1, 1};
  HeldOutSet set = heldout_from(held, train.vocab);
  CHECK(set.dropped_tokens == 3);
  CHECK(set.token_count() == 2);
  CHECK(set.documents[0].tokens == std::vector<int32_t>{0, 0});
  CHECK(set.documents[1].tokens.empty());

  Corpus disjoint;
  disjoint.vocab.add("plum");
  disjoint.docs.resize(1);
  disjoint.docs[0].tokens = {0};
  CHECK_THROWS_AS(heldout_from(disjoint, train.vocab), std::runtime_error);
}

TEST_CASE("load_heldout parses files over the training vocabulary") {
  fs::path dir = fs::temp_directory_path() /
                 ("srclda_eval_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "held.txt");
    out << "red plum green\nblue blue\n";
  }
  Corpus train = tiny_corpus();
  HeldOutSet set = load_heldout(dir / "held.txt", train.vocab);
  CHECK(set.documents.size() == 2);
  CHECK(set.dropped_tokens == 1);
  CHECK(set.documents[0].tokens == std::vector<int32_t>{0, 1});
  CHECK_THROWS_AS(load_heldout(dir / "absent.txt", train.vocab),
                  std::runtime_error);
  fs::remove_all(dir);
}

TEST_CASE("single-topic importance perplexity has a closed form") {
  TopicModelResult r;
  r.labels = {"only"};
  r.phi = {{0.5, 0.25, 0.25}};
  HeldOutSet held;
  held.documents.resize(2);
  held.documents[0].tokens = {0, 1};
  held.documents[1].tokens = {2};
  double expect =
      std::exp(-(std::log(0.5) + std::log(0.25) + std::log(0.25)) / 3.0);
  double got = perplexity_importance(r, held, 1.0, 50, RandomStream(9));
  CHECK(got == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("a delta topic scores held-out copies of its word perfectly") {
  TopicModelResult r;
  r.labels = {"a", "b"};
  r.phi = {{1.0, 0.0}, {1.0, 0.0}};
  HeldOutSet held;
  held.documents.resize(1);
  held.documents[0].tokens = {0, 0, 0};
  double got = perplexity_importance(r, held, 1.0, 20, RandomStream(3));
  CHECK(got == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("importance estimate matches two-topic quadrature within 2 percent") {
  TopicModelResult r = two_topic_result();
  HeldOutSet held;
  held.documents.resize(3);
  held.documents[0].tokens = {0, 2, 1, 0};
  held.documents[1].tokens = {2, 2, 1};
  held.documents[2].tokens = {0, 1};

  double loglik = 0.0;
  size_t n = 0;
  for (const auto& d : held.documents) {
    loglik += std::log(quadrature_doc_likelihood(r, d.tokens));
    n += d.tokens.size();
  }
  double oracle = std::exp(-loglik / double(n));
  double est = perplexity_importance(r, held, 2.0, 10000, RandomStream(11));
  CHECK(est == doctest::Approx(oracle).epsilon(0.02));
}

TEST_CASE("both perplexity estimators ignore document order") {
  TopicModelResult r = two_topic_result();
  HeldOutSet a, b;
  a.documents.resize(3);
  a.documents[0].tokens = {0, 2, 1};
  a.documents[1].tokens = {2, 2};
  a.documents[2].tokens = {1, 0, 0, 1};
  b.documents = {a.documents[2], a.documents[0], a.documents[1]};
  CHECK(perplexity_importance(r, a, 2.0, 200, RandomStream(4)) ==
        perplexity_importance(r, b, 2.0, 200, RandomStream(4)));

  Corpus c = tiny_corpus();
  ModelConfig cfg;
  cfg.mode = ModelMode::lda;
  cfg.unlabeled_topics = 2;
  cfg.iterations = 10;
  cfg.seed = 21;
  GibbsSampler s(c, nullptr, cfg);
  s.run();
  CHECK(s.heldout_perplexity(a.documents, 5, 10, 77) ==
        s.heldout_perplexity(b.documents, 5, 10, 77));
}

TEST_CASE("held-out Gibbs matches the single-topic closed form") {
  Corpus c = tiny_corpus();
  ModelConfig cfg;
  cfg.mode = ModelMode::lda;
  cfg.unlabeled_topics = 1;
  cfg.iterations = 3;
  cfg.seed = 2;
  GibbsSampler s(c, nullptr, cfg);
  TopicModelResult r = s.run();

  HeldOutSet held;
  held.documents.resize(1);
  held.documents[0].tokens = {0, 1, 2, 3};
  double expect = 0.0;
  for (int32_t w : held.documents[0].tokens) expect += std::log(r.phi[0][w]);
  expect = std::exp(-expect / 4.0);
  CHECK(s.heldout_perplexity(held.documents, 2, 5, 5) ==
        doctest::Approx(expect).epsilon(1e-9));
  CHECK(perplexity_importance(r, held, 1.0, 10, RandomStream(6)) ==
        doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("classification accuracy endpoints and expectation") {
  std::vector<std::vector<int32_t>> z = {{0, 1}, {1, 0, 1}};
  std::vector<std::string> labels = {"a", "b"};
  CHECK(classification_accuracy(z, labels, z, labels) == 1.0);

  std::vector<std::vector<int32_t>> flipped = {{1, 0}, {0, 1, 0}};
  CHECK(classification_accuracy(z, labels, flipped, labels) == 0.0);

  std::vector<std::vector<int32_t>> bad = {{0}};
  CHECK_THROWS_AS(classification_accuracy(z, labels, bad, labels),
                  std::invalid_argument);

  RandomStream rng(8);
  std::vector<std::string> hundred;
  for (int i = 0; i < 100; ++i) hundred.push_back("l" + std::to_string(i));
  std::vector<std::vector<int32_t>> zp(1), zt(1);
  for (int i = 0; i < 100000; ++i) {
    zp[0].push_back(rng.uniform_int(100));
    zt[0].push_back(rng.uniform_int(100));
  }
  double acc = classification_accuracy(zp, hundred, zt, hundred);
  CHECK(acc == doctest::Approx(0.01).epsilon(0.2));
}

TEST_CASE("classification accuracy survives a consistent relabeling") {
  std::vector<std::vector<int32_t>> zp = {{0, 1, 2, 0}}, zt = {{0, 2, 2, 1}};
  std::vector<std::string> labels = {"a", "b", "c"};
  std::vector<std::string> renamed = {"x", "y", "z"};
  CHECK(classification_accuracy(zp, labels, zt, labels) ==
        classification_accuracy(zp, renamed, zt, renamed));
}

TEST_CASE("topics map to the nearest source by JSD") {
  KnowledgeSource ks;
  ks.topics.push_back(make_source_topic("left", {8, 2, 0, 0}, 0.01));
  ks.topics.push_back(make_source_topic("flat", {5, 5, 5, 5}, 0.01));
  ks.topics.push_back(make_source_topic("right", {0, 0, 3, 7}, 0.01));

  std::vector<std::vector<double>> phi = {
      source_distribution(ks.topics[0]),
      {0.25, 0.25, 0.25, 0.25},
      {0.05, 0.05, 0.4, 0.5},
  };
  auto labels = map_topics_to_labels(phi, ks);
  CHECK(labels == std::vector<std::string>{"left", "flat", "right"});

  // Row scaling must not change the outcome.
  for (auto& row : phi)
    for (auto& v : row) v *= 7.5;
  CHECK(map_topics_to_labels(phi, ks) == labels);

  // Verify the argmin against directly computed divergences.
  std::vector<double> row = {0.05, 0.05, 0.4, 0.5};
  double best = 2.0;
  std::string best_label;
  for (const auto& t : ks.topics) {
    double d = js_divergence(row, source_distribution(t));
    if (d < best) {
      best = d;
      best_label = t.label;
    }
  }
  CHECK(best_label == "right");
}

TEST_CASE("always co-occurring exclusive words have PMI exactly one") {
  Corpus c;
  c.vocab.add("a");
  c.vocab.add("b");
  c.vocab.add("c");
  c.vocab.add("d");
  c.docs.resize(2);
  c.docs[0].tokens = {0, 1};
  c.docs[1].tokens = {2, 3};

  TopicModelResult r;
  r.labels = {"t"};
  r.phi = {{0.5, 0.5, 0.0, 0.0}};
  auto scores = pmi_coherence(r, c, 2, 10);
  CHECK(scores[0] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("independent words score near-zero PMI") {
  RandomStream rng(15);
  Corpus c;
  for (int v = 0; v < 4; ++v) c.vocab.add("w" + std::to_string(v));
  c.docs.resize(400);
  for (auto& d : c.docs)
    for (int j = 0; j < 40; ++j) d.tokens.push_back(rng.uniform_int(4));

  TopicModelResult r;
  r.labels = {"t"};
  r.phi = {{0.4, 0.3, 0.2, 0.1}};
  auto scores = pmi_coherence(r, c, 4, 10);
  CHECK(std::abs(scores[0]) < 0.05);
}

TEST_CASE("PMI matches a brute-force window enumeration") {
  RandomStream rng(33);
  Corpus c;
  for (int v = 0; v < 8; ++v) c.vocab.add("w" + std::to_string(v));
  c.docs.resize(4);
  for (auto& d : c.docs) {
    int len = 5 + static_cast<int>(rng.uniform_int(26));
    for (int j = 0; j < len; ++j)
      d.tokens.push_back(rng.uniform_int(8));
  }

  TopicModelResult r;
  r.labels = {"p", "q"};
  r.phi = {{0.4, 0.3, 0.2, 0.05, 0.02, 0.02, 0.005, 0.005},
           {0.005, 0.005, 0.02, 0.02, 0.05, 0.2, 0.3, 0.4}};
  const int top_n = 3, window = 10;
  auto scores = pmi_coherence(r, c, top_n, window);

  std::vector<std::vector<int32_t>> top = {{0, 1, 2}, {7, 6, 5}};
  for (int t = 0; t < 2; ++t) {
    long long windows = 0;
    std::map<int32_t, long long> single;
    std::map<std::pair<int32_t, int32_t>, long long> both;
    for (const auto& d : c.docs) {
      size_t width = std::min<size_t>(window, d.tokens.size());
      for (size_t s = 0; s + width <= d.tokens.size(); ++s) {
        ++windows;
        std::set<int32_t> seen(d.tokens.begin() + s,
                               d.tokens.begin() + s + width);
        for (int a = 0; a < top_n; ++a) {
          if (seen.count(top[t][a])) ++single[top[t][a]];
          for (int b = a + 1; b < top_n; ++b)
            if (seen.count(top[t][a]) && seen.count(top[t][b]))
              ++both[{std::min(top[t][a], top[t][b]),
                      std::max(top[t][a], top[t][b])}];
        }
      }
    }
    double acc = 0.0;
    int pairs = 0;
    for (int a = 0; a < top_n; ++a)
      for (int b = a + 1; b < top_n; ++b) {
        double pi = double(single[top[t][a]]) / windows;
        double pj = double(single[top[t][b]]) / windows;
        double pij = double(both[{std::min(top[t][a], top[t][b]),
                                  std::max(top[t][a], top[t][b])}]) /
                     windows;
        acc += std::log2((pij + 1e-12) / (pi * pj + 1e-12));
        ++pairs;
      }
    CHECK(scores[t] == doctest::Approx(acc / pairs).epsilon(1e-12));
  }
}

TEST_CASE("PMI ignores document order and rejects tiny top_n") {
  Corpus c = tiny_corpus();
  TopicModelResult r;
  r.labels = {"t"};
  r.phi = {{0.4, 0.3, 0.2, 0.1}};
  auto base = pmi_coherence(r, c, 3, 4);
  std::swap(c.docs[0], c.docs[2]);
  CHECK(pmi_coherence(r, c, 3, 4) == base);
  CHECK_THROWS_AS(pmi_coherence(r, c, 1, 4), std::invalid_argument);
}

TEST_CASE("theta JSD series is sorted and totals correctly") {
  std::vector<std::vector<double>> same = {{0.5, 0.5}, {0.1, 0.9}};
  auto zero = theta_js_total(same, same);
  CHECK(zero.total == 0.0);
  CHECK(zero.sorted == std::vector<double>{0.0, 0.0});

  std::vector<std::vector<double>> one_hot_a = {{1.0, 0.0}, {0.0, 1.0}};
  std::vector<std::vector<double>> one_hot_b = {{0.0, 1.0}, {1.0, 0.0}};
  auto ones = theta_js_total(one_hot_a, one_hot_b);
  CHECK(ones.total == doctest::Approx(2.0));
  CHECK(ones.sorted[0] == doctest::Approx(1.0));

  RandomStream rng(44);
  std::vector<std::vector<double>> p(5), q(5);
  for (int d = 0; d < 5; ++d) {
    p[d] = dirichlet_sample(rng, {1.0, 1.0, 1.0});
    q[d] = dirichlet_sample(rng, {1.0, 1.0, 1.0});
  }
  auto rep = theta_js_total(p, q);
  double direct = 0.0;
  for (int d = 0; d < 5; ++d) direct += js_divergence(p[d], q[d]);
  CHECK(rep.total == doctest::Approx(direct).epsilon(1e-12));
  CHECK(std::is_sorted(rep.sorted.begin(), rep.sorted.end()));

  std::vector<std::vector<double>> shape = {{0.5, 0.5}};
  CHECK_THROWS_AS(theta_js_total(shape, same), std::invalid_argument);
}
