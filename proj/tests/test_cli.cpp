#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "srclda/cli.hpp"
#include "srclda/corpus.hpp"
#include "srclda/io.hpp"
#include "srclda/sampler.hpp"
#include "srclda/synth.hpp"

using namespace srclda;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path temp_dir() {
  static int counter = 0;
  fs::path p = fs::temp_directory_path() /
               ("srclda_cli_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// One pixel-fixture workspace shared by the dependent CLI cases below.
struct PixelWorkspace {
  fs::path root;
  fs::path corpus, heldout, truth, sources;

  PixelWorkspace() {
    root = temp_dir();
    int rc = run_cli({"synth", "--out", root.string(), "--fixture", "pixel",
                      "--docs", "60", "--heldout", "15", "--xi", "12",
                      "--seed", "5"});
    REQUIRE(rc == 0);
    corpus = root / "corpus.txt";
    heldout = root / "heldout.txt";
    truth = root / "truth.json";
    sources = root / "sources";
  }
};

}  // namespace

TEST_CASE("synth writes the full pixel bundle") {
  PixelWorkspace ws;
  for (const char* name :
       {"corpus.txt", "heldout.txt", "truth.json", "run_meta.json",
        "intensity_truth.csv", "intensity_truth.pgm"})
    CHECK(fs::exists(ws.root / name));
  REQUIRE(fs::is_directory(ws.sources));
  int articles = 0;
  for (const auto& e : fs::directory_iterator(ws.sources)) {
    CHECK(e.path().extension() == ".txt");
    ++articles;
  }
  CHECK(articles == 10);

  Corpus corpus = load_corpus(ws.corpus);
  CHECK(corpus.docs.size() == 60);

  // The held-out split comes from the same generative truth but a distinct
  // stream: same vocabulary, disjoint draw sequence.
  Corpus held = load_corpus(ws.heldout);
  CHECK(held.docs.size() == 15);
  CHECK(held.vocab.size() <= 25);
  CHECK(slurp(ws.heldout) != slurp(ws.corpus));

  Vocabulary tv;
  GroundTruth truth = load_ground_truth(ws.truth, &tv);
  CHECK(tv.size() == 25);
  CHECK(truth.labels.size() == 10);
  CHECK(truth.z.size() == 60);
}

TEST_CASE("train is deterministic for a fixed seed") {
  PixelWorkspace ws;
  fs::path r1 = ws.root / "r1", r2 = ws.root / "r2";
  for (const fs::path& r : {r1, r2}) {
    int rc = run_cli({"train", "--corpus", ws.corpus.string(), "--mode", "lda",
                      "--k", "6", "--iters", "15", "--seed", "9", "--out",
                      r.string()});
    REQUIRE(rc == 0);
  }
  for (const char* name :
       {"phi.csv", "theta.csv", "labels.json", "z.txt", "counts.csv"})
    CHECK(slurp(r1 / name) == slurp(r2 / name));
}

TEST_CASE("train in source mode consumes the offered articles") {
  PixelWorkspace ws;
  fs::path run = ws.root / "src_run";
  int rc = run_cli({"train", "--corpus", ws.corpus.string(), "--sources",
                    ws.sources.string(), "--mode", "source", "--k", "0",
                    "--iters", "8", "--lambda", "1.0", "--grid", "5",
                    "--samples", "10", "--seed", "4", "--out", run.string()});
  REQUIRE(rc == 0);

  LoadedRun loaded = load_run(run);
  REQUIRE(loaded.result.topics() == 10);
  // Articles are read in filename order, so the column topics come first.
  CHECK(loaded.result.labels[0] == "col_0");
  CHECK(loaded.result.labels[9] == "row_4");
  CHECK(loaded.meta.config.mode == ModelMode::source);
  CHECK(loaded.z.size() == 60);
}

TEST_CASE("usage errors exit with 2") {
  PixelWorkspace ws;
  // source mode without articles
  CHECK(run_cli({"train", "--corpus", ws.corpus.string(), "--mode", "source",
                 "--out", (ws.root / "bad").string()}) == 2);
  // unknown flag
  CHECK(run_cli({"train", "--corpus", ws.corpus.string(), "--mode", "lda",
                 "--k", "3", "--frobnicate"}) == 2);
  // no subcommand
  CHECK(run_cli({}) == 2);
  // nonpositive document count
  CHECK(run_cli({"synth", "--out", (ws.root / "bad2").string(), "--fixture",
                 "pixel", "--docs", "0"}) == 2);
  // lda must not take sources
  CHECK(run_cli({"train", "--corpus", ws.corpus.string(), "--mode", "lda",
                 "--k", "3", "--sources", ws.sources.string(), "--out",
                 (ws.root / "bad3").string()}) == 2);
}

TEST_CASE("runtime errors exit with 1") {
  // A missing file is caught at flag validation (exit 2); an empty one
  // passes validation and fails at load time.
  fs::path dir = temp_dir();
  { std::ofstream empty(dir / "empty.txt"); }
  CHECK(run_cli({"train", "--corpus", (dir / "empty.txt").string(), "--mode",
                 "lda", "--k", "3", "--out", (dir / "r").string()}) == 1);
  CHECK(run_cli({"train", "--corpus", "/nonexistent/corpus.txt", "--mode",
                 "lda", "--k", "3", "--out", (dir / "r").string()}) == 2);
  fs::remove_all(dir);
}

TEST_CASE("eval produces a full report against the truth") {
  PixelWorkspace ws;
  fs::path run = ws.root / "eval_run";
  REQUIRE(run_cli({"train", "--corpus", ws.corpus.string(), "--sources",
                   ws.sources.string(), "--mode", "source", "--k", "0",
                   "--iters", "10", "--lambda", "1.0", "--grid", "5",
                   "--samples", "10", "--seed", "4", "--out",
                   run.string()}) == 0);

  int rc = run_cli({"eval", "--run", run.string(), "--corpus",
                    ws.corpus.string(), "--heldout", ws.heldout.string(),
                    "--truth", ws.truth.string(), "--window", "5", "--top-n",
                    "3", "--is-samples", "60", "--burn-in", "4",
                    "--eval-samples", "4", "--seed", "3"});
  REQUIRE(rc == 0);

  json report = json::parse(slurp(run / "eval_report.json"));
  CHECK(report.contains("pmi"));
  CHECK(report.contains("perplexity_importance"));
  CHECK(report.contains("perplexity_gibbs"));
  CHECK(report.contains("phi_jsd"));
  CHECK(report.contains("classification_accuracy"));
  CHECK(report.contains("theta_jsd"));
  CHECK(report["pmi"]["per_topic"].size() == 10);
  CHECK(report["perplexity_importance"].get<double>() > 1.0);
  CHECK(report["perplexity_gibbs"].get<double>() > 1.0);
  CHECK(report["phi_jsd"]["mean"].get<double>() >= 0.0);
  double acc = report["classification_accuracy"].get<double>();
  CHECK(acc >= 0.0);
  CHECK(acc <= 1.0);
  CHECK(fs::exists(run / "pmi_sorted.csv"));
  CHECK(fs::exists(run / "theta_jsd_sorted.csv"));
}

TEST_CASE("saved runs reload exactly") {
  fs::path dir = temp_dir();
  {
    std::ofstream c(dir / "corpus.txt");
    c << "red red green blue\n"
      << "green green blue blue cyan\n"
      << "red cyan cyan\n";
  }
  Corpus corpus = load_corpus(dir / "corpus.txt");

  ModelConfig cfg;
  cfg.mode = ModelMode::lda;
  cfg.unlabeled_topics = 3;
  cfg.iterations = 12;
  cfg.seed = 8;
  GibbsSampler sampler(corpus, nullptr, cfg);
  TopicModelResult result = sampler.run();

  RunMeta meta;
  meta.config = cfg;
  meta.corpus_path = (dir / "corpus.txt").string();
  meta.docs = int(corpus.docs.size());
  meta.vocab = corpus.vocab.size();
  meta.topics = 3;
  meta.unlabeled = 3;
  meta.runtime_seconds = 0.25;
  save_run(dir / "run", result, corpus.vocab, sampler.state(), meta);

  LoadedRun back = load_run(dir / "run");
  CHECK(back.vocab.words == corpus.vocab.words);
  CHECK(back.result.labels == result.labels);
  CHECK(back.result.phi == result.phi);      // format_double round-trips
  CHECK(back.result.theta == result.theta);
  CHECK(back.result.topic_tokens == result.topic_tokens);
  CHECK(back.result.doc_frequency == result.doc_frequency);
  CHECK(back.z == sampler.state().z);
  CHECK(back.n_w == sampler.state().n_w);
  CHECK(back.n_t == sampler.state().n_t);
  CHECK(back.meta.config.mode == ModelMode::lda);
  CHECK(back.meta.config.iterations == 12);
  CHECK(back.meta.docs == 3);
  CHECK(back.meta.runtime_seconds == 0.25);
  fs::remove_all(dir);
}

TEST_CASE("ground truth survives a save/load cycle") {
  PixelTopicSet set = pixel_topics();
  auto gen =
      generate_from_phi(set.phi(), set.labels, set.vocab, 1.0, 8.0, 0, 12, 3);
  fs::path dir = temp_dir();
  save_ground_truth(dir / "t.json", gen.truth, set.vocab);

  Vocabulary vocab;
  GroundTruth back = load_ground_truth(dir / "t.json", &vocab);
  CHECK(vocab.words == set.vocab.words);
  CHECK(back.labels == gen.truth.labels);
  CHECK(back.phi == gen.truth.phi);
  CHECK(back.theta == gen.truth.theta);
  CHECK(back.z == gen.truth.z);
  CHECK(back.lambda == gen.truth.lambda);
  CHECK(back.used_topics == gen.truth.used_topics);
  fs::remove_all(dir);
}

TEST_CASE("format_double round-trips exactly") {
  for (double v : {1.0 / 3.0, 0.1, 1e-300, 123456.789, 0.0, 2.2250738585072014e-308}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
}

TEST_CASE("bench sweeps strategies and agrees on trajectories") {
  fs::path dir = temp_dir();
  fs::path csv = dir / "bench.csv";
  int rc = run_cli({"bench", "--out", csv.string(), "--b", "3", "--workers",
                    "1", "2", "--strategies", "none", "prefix", "simple",
                    "--docs", "25", "--doc-len", "12", "--vocab", "40",
                    "--words-per-topic", "6", "--iters", "2", "--seed", "2"});
  REQUIRE(rc == 0);

  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "b,strategy,workers,seconds,tokens_per_second,z_hash");

  std::vector<std::string> hashes;
  int rows = 0;
  for (std::string line; std::getline(in, line);) {
    ++rows;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    REQUIRE(cells.size() == 6);
    CHECK(cells[0] == "3");
    hashes.push_back(cells[5]);
  }
  // serial runs once; each parallel strategy runs per worker count
  CHECK(rows == 5);
  for (const auto& h : hashes) CHECK(h == hashes.front());
  CHECK(fs::exists(dir / "run_meta.json"));
  fs::remove_all(dir);
}
