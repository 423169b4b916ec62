#include "srclda/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <unordered_map>

#include "CLI11.hpp"
#include "json.hpp"
#include "srclda/corpus.hpp"
#include "srclda/eval.hpp"
#include "srclda/io.hpp"
#include "srclda/knowledge.hpp"
#include "srclda/reduction.hpp"
#include "srclda/sampler.hpp"
#include "srclda/stats.hpp"
#include "srclda/synth.hpp"

namespace srclda {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

// Usage problems exit with 2; anything else that throws exits with 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

uint64_t z_hash(const std::vector<std::vector<int32_t>>& z) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& doc : z)
    for (int32_t t : doc) {
      h ^= static_cast<uint64_t>(static_cast<uint32_t>(t));
      h *= 0x100000001b3ULL;
    }
  return h;
}

void write_json(const fs::path& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

struct TrainOpts {
  std::string corpus, sources, out = "run";
  std::string mode = "source", strategy = "none", g_cache;
  int k = 0, steps = 20, iters = 500, workers = 1, grid = 21, samples = 100;
  double epsilon = 0.01, mu = 0.7, sigma = 0.3;
  std::optional<double> alpha, beta, lambda_fixed;
  std::optional<int> min_doc_freq, target_k;
  bool shared_g = false;
  uint64_t seed = 1;
};

int cmd_train(const TrainOpts& o) {
  Corpus corpus = load_corpus(o.corpus);

  ModelConfig cfg;
  cfg.mode = parse_mode(o.mode);
  cfg.unlabeled_topics = o.k;
  cfg.alpha = o.alpha;
  cfg.beta = o.beta;
  cfg.epsilon = o.epsilon;
  cfg.mu = o.mu;
  cfg.sigma = o.sigma;
  cfg.integration_steps = o.steps;
  cfg.lambda_fixed = o.lambda_fixed;
  cfg.iterations = o.iters;
  cfg.strategy = parse_strategy(o.strategy);
  cfg.workers = o.workers;
  cfg.seed = o.seed;
  cfg.calibration.grid_size = o.grid;
  cfg.calibration.samples = o.samples;
  cfg.shared_g = o.shared_g;
  cfg.g_cache = o.g_cache;

  KnowledgeSource ks;
  bool with_sources = cfg.mode != ModelMode::lda;
  if (with_sources) {
    if (o.sources.empty())
      throw UsageError("--sources is required for mode " + o.mode);
    ks = load_knowledge_source(o.sources, corpus.vocab, o.epsilon);
  } else if (!o.sources.empty()) {
    throw UsageError("--sources does not apply to lda mode");
  }

  auto start = std::chrono::steady_clock::now();
  GibbsSampler sampler(corpus, with_sources ? &ks : nullptr, cfg);
  TopicModelResult result = sampler.run();

  RunMeta meta;
  meta.config = cfg;
  meta.corpus_path = o.corpus;
  meta.sources_path = o.sources;
  meta.docs = static_cast<int>(corpus.docs.size());
  meta.vocab = corpus.vocab.size();
  meta.topics = sampler.topics();
  meta.unlabeled = sampler.unlabeled();
  meta.runtime_seconds = seconds_since(start);
  meta.swap_counts = result.swap_counts;
  meta.boundary_events = result.boundary_events;
  save_run(o.out, result, corpus.vocab, sampler.state(), meta);

  if (o.min_doc_freq || o.target_k) {
    ReductionPolicy policy;
    policy.min_doc_frequency = o.min_doc_freq.value_or(1);
    policy.target_k = o.target_k.value_or(-1);
    ReductionReport report;
    TopicModelResult reduced = reduce_topics(result, policy, &report);
    save_reduction_report(fs::path(o.out) / "reduction_report.json", report);
    std::ofstream labels(fs::path(o.out) / "reduced_labels.json");
    labels << nlohmann::json(reduced.labels).dump(2) << '\n';
  }
  std::cout << "trained " << sampler.topics() << " topics over "
            << corpus.token_count() << " tokens in "
            << format_double(meta.runtime_seconds) << "s\n";
  return 0;
}

struct SynthOpts {
  std::string out, fixture, sources;
  int make_sources = 0, vocab = 2000, words_per_topic = 50;
  long long max_count = 50;
  int k = 0, docs = 0, doc_len = 0, heldout = 0, use_topics = 0, grid = 21,
      samples = 100;
  double alpha = 1.0, beta = 0.01, xi = 25.0, mu = 0.7, sigma = 0.3,
         epsilon = 0.01;
  uint64_t seed = 1;
};

int cmd_synth(const SynthOpts& o) {
  if (o.docs < 1) throw UsageError("--docs must be positive");
  fs::create_directories(o.out);
  fs::path out(o.out);

  ordered_json meta;
  meta["subcommand"] = "synth";
  meta["docs"] = o.docs;
  meta["doc_len"] = o.doc_len;
  if (o.heldout > 0) meta["heldout"] = o.heldout;
  meta["xi"] = o.xi;
  meta["alpha"] = o.alpha;
  meta["beta"] = o.beta;
  meta["mu"] = o.mu;
  meta["sigma"] = o.sigma;
  meta["epsilon"] = o.epsilon;
  meta["seed"] = o.seed;

  if (o.fixture == "pixel") {
    PixelTopicSet base = pixel_topics();
    RandomStream master(o.seed);
    RandomStream aug_rng = master.child(kRoleSynthTopic, 1u << 20);
    PixelTopicSet aug = augment_topics(base, aug_rng);
    SynthResult gen =
        generate_from_phi(aug.phi(), aug.labels, aug.vocab, o.alpha, o.xi,
                          o.doc_len, o.docs, o.seed);
    save_corpus(gen.corpus, out / "corpus.txt");
    save_ground_truth(out / "truth.json", gen.truth, aug.vocab);
    if (o.heldout > 0) {
      uint64_t hseed = RandomStream(o.seed).child(kRoleSynthTopic, 1u << 23).seed();
      SynthResult held = generate_from_phi(aug.phi(), aug.labels, aug.vocab,
                                           o.alpha, o.xi, o.doc_len, o.heldout,
                                           hseed);
      save_corpus(held.corpus, out / "heldout.txt");
    }
    // Count 15 per supported cell anchors topic identity without letting the
    // prior outweigh a realistically sized corpus.
    write_sources(out / "sources", pixel_knowledge(base, 15, o.epsilon),
                  base.vocab);
    write_intensity_csv(aug.phi(), aug.labels, aug.vocab,
                        out / "intensity_truth.csv");
    write_intensity_pgm(aug.phi(), aug.vocab, out / "intensity_truth.pgm");
    meta["fixture"] = "pixel";
  } else if (o.make_sources > 0 || !o.sources.empty()) {
    GenerativeSpec spec;
    Vocabulary vocab;
    if (o.make_sources > 0) {
      vocab = synthetic_vocabulary(o.vocab);
      RandomStream src_rng = RandomStream(o.seed).child(kRoleSynthTopic, 1u << 21);
      spec.knowledge = random_knowledge_source(
          o.make_sources, vocab, o.words_per_topic, o.max_count, o.epsilon,
          src_rng);
      write_sources(out / "sources", spec.knowledge, vocab);
      meta["make_sources"] = o.make_sources;
    } else {
      vocab = vocab_from_sources(o.sources);
      spec.knowledge = load_knowledge_source(o.sources, vocab, o.epsilon);
      meta["sources"] = o.sources;
    }
    if (o.use_topics > 0) {
      if (o.use_topics > spec.knowledge.size())
        throw UsageError("--use-topics exceeds the offered topic count");
      RandomStream pick = RandomStream(o.seed).child(kRoleSynthTopic, 1u << 22);
      std::vector<int> all(spec.knowledge.size());
      for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
      for (int i = static_cast<int>(all.size()) - 1; i > 0; --i)
        std::swap(all[i], all[pick.uniform_int(uint32_t(i + 1))]);
      spec.use_topics.assign(all.begin(), all.begin() + o.use_topics);
      std::sort(spec.use_topics.begin(), spec.use_topics.end());
      meta["use_topics"] = spec.use_topics;
    }
    spec.unlabeled_topics = o.k;
    spec.alpha = o.alpha;
    spec.beta = o.beta;
    spec.xi = o.xi;
    spec.fixed_doc_len = o.doc_len;
    spec.docs = o.docs;
    spec.mu = o.mu;
    spec.sigma = o.sigma;
    spec.calibration.grid_size = o.grid;
    spec.calibration.samples = o.samples;
    spec.seed = o.seed;
    SynthResult gen = generate_corpus(spec, vocab);
    save_corpus(gen.corpus, out / "corpus.txt");
    save_ground_truth(out / "truth.json", gen.truth, vocab);
    if (o.heldout > 0) {
      uint64_t hseed = RandomStream(o.seed).child(kRoleSynthTopic, 1u << 23).seed();
      SynthResult held =
          generate_from_phi(gen.truth.phi, gen.truth.labels, vocab, spec.alpha,
                            spec.xi, o.doc_len, o.heldout, hseed);
      save_corpus(held.corpus, out / "heldout.txt");
    }
  } else {
    throw UsageError("one of --fixture, --make-sources, or --sources is required");
  }
  write_json(out / "run_meta.json", meta);
  std::cout << "synthesized " << o.docs << " documents under " << o.out << "\n";
  return 0;
}

struct EvalOpts {
  std::string run, out, corpus, heldout, truth, sources;
  int window = 20, top_n = 10, is_samples = 1000, burn_in = 20,
      eval_samples = 30;
  uint64_t seed = 17;
};

Corpus remap_corpus(const Corpus& corpus, const Vocabulary& vocab) {
  Corpus out;
  out.vocab = vocab;
  for (const auto& doc : corpus.docs) {
    Document mapped;
    for (int32_t w : doc.tokens) {
      int32_t id = vocab.find(corpus.vocab.words[w]);
      if (id >= 0) mapped.tokens.push_back(id);
    }
    out.docs.push_back(std::move(mapped));
  }
  return out;
}

int cmd_eval(const EvalOpts& o) {
  LoadedRun run = load_run(o.run);
  fs::path out(o.out.empty() ? o.run : o.out);
  fs::create_directories(out);
  int T = run.result.topics();
  double alpha = run.meta.config.alpha ? *run.meta.config.alpha : 50.0 / T;

  ordered_json report;
  report["run"] = o.run;
  report["topics"] = T;
  report["docs"] = run.meta.docs;

  std::string sources_dir =
      !o.sources.empty() ? o.sources : run.meta.sources_path;
  bool needs_sources = run.meta.config.mode != ModelMode::lda;

  if (!o.corpus.empty()) {
    Corpus corpus = remap_corpus(load_corpus(o.corpus), run.vocab);
    std::vector<double> pmi =
        pmi_coherence(run.result, corpus, o.top_n, o.window);
    std::vector<double> sorted = pmi;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    report["pmi"] = {{"per_topic", pmi},
                     {"top_n", o.top_n},
                     {"window", o.window}};
    write_curve_csv(out / "pmi_sorted.csv", "pmi", sorted);
  }

  if (!o.heldout.empty()) {
    HeldOutSet heldout = load_heldout(o.heldout, run.vocab);
    double pp_is = perplexity_importance(
        run.result, heldout, alpha, o.is_samples,
        RandomStream(o.seed).child(kRoleEval, 1));
    report["perplexity_importance"] = pp_is;
    report["heldout_dropped_tokens"] = heldout.dropped_tokens;

    KnowledgeSource ks;
    if (needs_sources) {
      if (sources_dir.empty())
        throw UsageError("--sources is required to restore this run");
      ks = load_knowledge_source(sources_dir, run.vocab,
                                 run.meta.config.epsilon);
    }
    GibbsSampler restored(run.vocab.size(), needs_sources ? &ks : nullptr,
                          run.meta.config);
    restored.load_counts(run.n_w, run.n_t);
    double pp_gibbs = restored.heldout_perplexity(
        heldout.documents, o.burn_in, o.eval_samples, o.seed);
    report["perplexity_gibbs"] = pp_gibbs;
  }

  if (!o.truth.empty()) {
    Vocabulary tvocab;
    GroundTruth truth = load_ground_truth(o.truth, &tvocab);

    // Inferred rows mapped into truth vocabulary space; training words are
    // always a subset of the generator's vocabulary.
    auto to_truth = [&](const std::vector<double>& row) {
      std::vector<double> mapped(tvocab.size(), 0.0);
      for (int32_t v = 0; v < run.vocab.size(); ++v) {
        int32_t tid = tvocab.find(run.vocab.words[v]);
        if (tid < 0)
          throw std::runtime_error("run vocabulary word missing from truth: " +
                                   run.vocab.words[v]);
        mapped[tid] = row[v];
      }
      return mapped;
    };

    std::vector<std::string> pred_labels = run.result.labels;
    if (run.meta.config.mode == ModelMode::lda && !sources_dir.empty()) {
      KnowledgeSource ks =
          load_knowledge_source(sources_dir, run.vocab, run.meta.config.epsilon);
      pred_labels = map_topics_to_labels(run.result.phi, ks);
      report["mapped_labels"] = pred_labels;
    }

    std::unordered_map<std::string, int> truth_index;
    for (size_t i = 0; i < truth.labels.size(); ++i)
      truth_index[truth.labels[i]] = static_cast<int>(i);

    std::vector<double> topic_jsd;
    for (int t = 0; t < T; ++t) {
      auto it = truth_index.find(pred_labels[t]);
      if (it == truth_index.end()) continue;
      topic_jsd.push_back(
          js_divergence(to_truth(run.result.phi[t]), truth.phi[it->second]));
    }
    if (!topic_jsd.empty()) {
      double mean = 0.0;
      for (double v : topic_jsd) mean += v;
      mean /= static_cast<double>(topic_jsd.size());
      report["phi_jsd"] = {{"per_matched_topic", topic_jsd}, {"mean", mean}};
    }

    if (run.z.size() == truth.z.size()) {
      report["classification_accuracy"] =
          classification_accuracy(run.z, pred_labels, truth.z, truth.labels);

      bool aligned = true;
      std::vector<int> col(T, -1);
      for (int t = 0; t < T && aligned; ++t) {
        auto it = truth_index.find(pred_labels[t]);
        if (it == truth_index.end())
          aligned = false;
        else
          col[t] = it->second;
      }
      if (aligned && truth.labels.size() == size_t(T)) {
        std::vector<std::vector<double>> theta_true_aligned(
            run.result.theta.size(), std::vector<double>(T));
        for (size_t d = 0; d < run.result.theta.size(); ++d)
          for (int t = 0; t < T; ++t)
            theta_true_aligned[d][t] = truth.theta[d][col[t]];
        ThetaJsReport tj =
            theta_js_total(run.result.theta, theta_true_aligned);
        report["theta_jsd"] = {{"total", tj.total}};
        write_curve_csv(out / "theta_jsd_sorted.csv", "jsd", tj.sorted);
      }
    }
  }

  write_json(out / "eval_report.json", report);
  std::cout << "evaluation written to "
            << (out / "eval_report.json").string() << "\n";
  return 0;
}

struct BenchOpts {
  std::string out;
  std::vector<int> b{100, 1000};
  std::vector<int> workers{1, 2, 4};
  std::vector<std::string> strategies{"none", "prefix", "simple"};
  int docs = 100, doc_len = 50, vocab = 2000, words_per_topic = 50, iters = 3;
  uint64_t seed = 5;
};

int cmd_bench(const BenchOpts& o) {
  std::ofstream csv(o.out);
  if (!csv) throw std::runtime_error("cannot write " + o.out);
  csv << "b,strategy,workers,seconds,tokens_per_second,z_hash\n";

  Vocabulary vocab = synthetic_vocabulary(o.vocab);
  for (int b : o.b) {
    RandomStream rng = RandomStream(o.seed).child(kRoleSynthTopic, uint64_t(b));
    KnowledgeSource ks = random_knowledge_source(b, vocab, o.words_per_topic,
                                                 50, 0.01, rng);
    std::vector<std::vector<double>> phi;
    std::vector<std::string> labels;
    for (const auto& topic : ks.topics) {
      phi.push_back(source_distribution(topic));
      labels.push_back(topic.label);
    }
    Corpus corpus = generate_from_phi(phi, labels, vocab, 50.0 / b, 0.0,
                                      o.doc_len, o.docs, o.seed ^ b)
                        .corpus;
    double tokens = static_cast<double>(corpus.token_count());

    for (const auto& strategy : o.strategies)
      for (int workers : o.workers) {
        ParallelStrategy ps = parse_strategy(strategy);
        if (ps == ParallelStrategy::none && workers != 1) continue;
        ModelConfig cfg;
        cfg.mode = ModelMode::bijective;
        cfg.iterations = o.iters;
        cfg.strategy = ps;
        cfg.workers = workers;
        cfg.seed = o.seed;
        auto start = std::chrono::steady_clock::now();
        GibbsSampler sampler(corpus, &ks, cfg);
        TopicModelResult result = sampler.run();
        double secs = seconds_since(start);
        csv << b << ',' << strategy << ',' << workers << ','
            << format_double(secs) << ','
            << format_double(o.iters * tokens / secs) << ','
            << z_hash(sampler.state().z) << '\n';
        csv.flush();
        (void)result;
      }
  }

  ordered_json meta;
  meta["subcommand"] = "bench";
  meta["b"] = o.b;
  meta["workers"] = o.workers;
  meta["strategies"] = o.strategies;
  meta["docs"] = o.docs;
  meta["doc_len"] = o.doc_len;
  meta["vocab"] = o.vocab;
  meta["words_per_topic"] = o.words_per_topic;
  meta["iters"] = o.iters;
  meta["seed"] = o.seed;
  write_json(fs::path(o.out).parent_path().empty()
                 ? fs::path("run_meta.json")
                 : fs::path(o.out).parent_path() / "run_meta.json",
             meta);
  std::cout << "benchmark written to " << o.out << "\n";
  return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args) {
  CLI::App app{"Topic modeling with knowledge-source Dirichlet priors"};
  app.require_subcommand(1);
  app.set_config("--config");

  TrainOpts train;
  CLI::App* t = app.add_subcommand("train", "Run the collapsed Gibbs sampler");
  t->add_option("--corpus", train.corpus, "corpus file, one document per line")
      ->required()
      ->check(CLI::ExistingFile);
  t->add_option("--sources", train.sources, "directory of source articles");
  t->add_option("--out", train.out, "output directory");
  t->add_option("--mode", train.mode, "lda | eda | bijective | source");
  t->add_option("--k", train.k, "unlabeled topic count");
  t->add_option("--alpha", train.alpha, "document prior (default 50/T)");
  t->add_option("--beta", train.beta, "word prior (default 200/V)");
  t->add_option("--epsilon", train.epsilon, "off-support prior mass");
  t->add_option("--mu", train.mu, "lambda prior mean");
  t->add_option("--sigma", train.sigma, "lambda prior standard deviation");
  t->add_option("--lambda", train.lambda_fixed, "fixed lambda (skips the integral)");
  t->add_option("--steps", train.steps, "lambda integration points");
  t->add_option("--iters", train.iters, "Gibbs sweeps");
  t->add_option("--strategy", train.strategy, "none | prefix | simple");
  t->add_option("--workers", train.workers, "parallel workers per token");
  t->add_option("--seed", train.seed, "RNG seed");
  t->add_option("--grid", train.grid, "calibration grid points");
  t->add_option("--samples", train.samples, "calibration draws per point");
  t->add_flag("--shared-g", train.shared_g, "calibrate one g from pooled counts");
  t->add_option("--g-cache", train.g_cache, "calibration cache file");
  t->add_option("--min-doc-freq", train.min_doc_freq,
                "prune topics below this document frequency");
  t->add_option("--target-k", train.target_k, "cluster surviving topics to k");

  SynthOpts synth;
  CLI::App* s = app.add_subcommand("synth", "Generate a synthetic corpus");
  s->add_option("--out", synth.out, "output directory")->required();
  s->add_option("--fixture", synth.fixture, "named fixture (pixel)");
  s->add_option("--sources", synth.sources, "generate from these articles");
  s->add_option("--make-sources", synth.make_sources,
                "generate this many random source articles");
  s->add_option("--vocab", synth.vocab, "vocabulary size for --make-sources");
  s->add_option("--words-per-topic", synth.words_per_topic,
                "support size for --make-sources");
  s->add_option("--max-count", synth.max_count,
                "per-word count cap for --make-sources");
  s->add_option("--k", synth.k, "unlabeled topics in the generator");
  s->add_option("--docs", synth.docs, "documents to generate")->required();
  s->add_option("--heldout", synth.heldout,
                "also write this many held-out documents");
  s->add_option("--doc-len", synth.doc_len, "fixed document length");
  s->add_option("--xi", synth.xi, "Poisson mean document length");
  s->add_option("--alpha", synth.alpha, "document prior");
  s->add_option("--beta", synth.beta, "unlabeled topic prior");
  s->add_option("--mu", synth.mu, "lambda prior mean");
  s->add_option("--sigma", synth.sigma, "lambda prior standard deviation");
  s->add_option("--epsilon", synth.epsilon, "off-support prior mass");
  s->add_option("--use-topics", synth.use_topics,
                "generate from a random subset of this size");
  s->add_option("--grid", synth.grid, "calibration grid points");
  s->add_option("--samples", synth.samples, "calibration draws per point");
  s->add_option("--seed", synth.seed, "RNG seed");

  EvalOpts ev;
  CLI::App* e = app.add_subcommand("eval", "Evaluate a finished run");
  e->add_option("--run", ev.run, "run directory from train")
      ->required()
      ->check(CLI::ExistingDirectory);
  e->add_option("--out", ev.out, "report directory (default: the run)");
  e->add_option("--corpus", ev.corpus, "corpus for PMI coherence")
      ->check(CLI::ExistingFile);
  e->add_option("--heldout", ev.heldout, "held-out documents")
      ->check(CLI::ExistingFile);
  e->add_option("--truth", ev.truth, "ground-truth JSON from synth")
      ->check(CLI::ExistingFile);
  e->add_option("--sources", ev.sources, "source articles (overrides run meta)");
  e->add_option("--window", ev.window, "PMI window width");
  e->add_option("--top-n", ev.top_n, "PMI top words per topic");
  e->add_option("--is-samples", ev.is_samples, "importance samples");
  e->add_option("--burn-in", ev.burn_in, "held-out Gibbs burn-in sweeps");
  e->add_option("--eval-samples", ev.eval_samples, "held-out Gibbs samples");
  e->add_option("--seed", ev.seed, "RNG seed");

  BenchOpts bench;
  CLI::App* bsub = app.add_subcommand("bench", "Time the sampling strategies");
  bsub->add_option("--out", bench.out, "timing CSV path")->required();
  bsub->add_option("--b", bench.b, "source topic counts to sweep");
  bsub->add_option("--workers", bench.workers, "worker counts to sweep");
  bsub->add_option("--strategies", bench.strategies, "strategies to sweep");
  bsub->add_option("--docs", bench.docs, "documents per generated corpus");
  bsub->add_option("--doc-len", bench.doc_len, "tokens per document");
  bsub->add_option("--vocab", bench.vocab, "vocabulary size");
  bsub->add_option("--words-per-topic", bench.words_per_topic, "support size");
  bsub->add_option("--iters", bench.iters, "sweeps per timed run");
  bsub->add_option("--seed", bench.seed, "RNG seed");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
    if (app.got_subcommand(t)) return cmd_train(train);
    if (app.got_subcommand(s)) return cmd_synth(synth);
    if (app.got_subcommand(e)) return cmd_eval(ev);
    if (app.got_subcommand(bsub)) return cmd_bench(bench);
    return 2;
  } catch (const CLI::ParseError& err) {
    int code = app.exit(err);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
}

}  // namespace srclda
