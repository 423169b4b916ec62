#include "srclda/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace srclda {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_double(const std::string& s) {
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    throw std::runtime_error("bad number in CSV: '" + s + "'");
  }
}

void write_matrix_csv(const std::filesystem::path& path,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  for (const auto& name : header)
    if (name.find(',') != std::string::npos)
      throw std::runtime_error("CSV header entry contains a comma: " + name);
  auto out = open_out(path);
  for (size_t i = 0; i < header.size(); ++i)
    out << header[i] << (i + 1 == header.size() ? '\n' : ',');
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i)
      out << format_double(row[i]) << (i + 1 == row.size() ? '\n' : ',');
  }
}

std::vector<std::vector<double>> read_matrix_csv(
    const std::filesystem::path& path, std::vector<std::string>* header) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty CSV: " + path.string());
  if (header) *header = split_csv(line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_csv(line);
    std::vector<double> row(fields.size());
    for (size_t i = 0; i < fields.size(); ++i) row[i] = parse_double(fields[i]);
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json config_to_json(const ModelConfig& cfg) {
  ordered_json j;
  j["mode"] = to_string(cfg.mode);
  j["unlabeled_topics"] = cfg.unlabeled_topics;
  j["alpha"] = cfg.alpha ? json(*cfg.alpha) : json(nullptr);
  j["beta"] = cfg.beta ? json(*cfg.beta) : json(nullptr);
  j["epsilon"] = cfg.epsilon;
  j["mu"] = cfg.mu;
  j["sigma"] = cfg.sigma;
  j["integration_steps"] = cfg.integration_steps;
  j["lambda_fixed"] = cfg.lambda_fixed ? json(*cfg.lambda_fixed) : json(nullptr);
  j["iterations"] = cfg.iterations;
  j["strategy"] = to_string(cfg.strategy);
  j["workers"] = cfg.workers;
  j["seed"] = cfg.seed;
  j["calibration_grid"] = cfg.calibration.grid_size;
  j["calibration_samples"] = cfg.calibration.samples;
  j["shared_g"] = cfg.shared_g;
  j["g_cache"] = cfg.g_cache;
  return j;
}

ModelConfig config_from_json(const json& j) {
  ModelConfig cfg;
  cfg.mode = parse_mode(j.at("mode").get<std::string>());
  cfg.unlabeled_topics = j.at("unlabeled_topics").get<int>();
  if (!j.at("alpha").is_null()) cfg.alpha = j.at("alpha").get<double>();
  if (!j.at("beta").is_null()) cfg.beta = j.at("beta").get<double>();
  cfg.epsilon = j.at("epsilon").get<double>();
  cfg.mu = j.at("mu").get<double>();
  cfg.sigma = j.at("sigma").get<double>();
  cfg.integration_steps = j.at("integration_steps").get<int>();
  if (!j.at("lambda_fixed").is_null())
    cfg.lambda_fixed = j.at("lambda_fixed").get<double>();
  cfg.iterations = j.at("iterations").get<int>();
  cfg.strategy = parse_strategy(j.at("strategy").get<std::string>());
  cfg.workers = j.at("workers").get<int>();
  cfg.seed = j.at("seed").get<uint64_t>();
  cfg.calibration.grid_size = j.at("calibration_grid").get<int>();
  cfg.calibration.samples = j.at("calibration_samples").get<int>();
  cfg.shared_g = j.at("shared_g").get<bool>();
  cfg.g_cache = j.at("g_cache").get<std::string>();
  return cfg;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void save_run(const std::filesystem::path& dir, const TopicModelResult& result,
              const Vocabulary& vocab, const SamplerState& state,
              const RunMeta& meta) {
  std::filesystem::create_directories(dir);
  write_matrix_csv(dir / "phi.csv", vocab.words, result.phi);
  write_matrix_csv(dir / "theta.csv", result.labels, result.theta);

  {
    auto out = open_out(dir / "labels.json");
    out << json(result.labels).dump(2) << '\n';
  }
  {
    auto out = open_out(dir / "z.txt");
    for (const auto& doc : state.z) {
      for (size_t j = 0; j < doc.size(); ++j)
        out << doc[j] << (j + 1 == doc.size() ? "" : " ");
      out << '\n';
    }
  }
  {
    auto out = open_out(dir / "counts.csv");
    out << "word,topic,count\n";
    for (int32_t w = 0; w < state.V; ++w)
      for (int t = 0; t < state.T; ++t)
        if (state.nw(w, t) > 0)
          out << w << ',' << t << ',' << state.nw(w, t) << '\n';
  }
  {
    ordered_json j;
    j["config"] = config_to_json(meta.config);
    j["corpus_path"] = meta.corpus_path;
    j["sources_path"] = meta.sources_path;
    j["docs"] = meta.docs;
    j["vocab"] = meta.vocab;
    j["topics"] = meta.topics;
    j["unlabeled"] = meta.unlabeled;
    j["runtime_seconds"] = meta.runtime_seconds;
    j["swap_counts"] = meta.swap_counts;
    j["boundary_events"] = meta.boundary_events;
    auto out = open_out(dir / "run_meta.json");
    out << j.dump(2) << '\n';
  }
}

LoadedRun load_run(const std::filesystem::path& dir) {
  LoadedRun run;

  std::vector<std::string> words;
  run.result.phi = read_matrix_csv(dir / "phi.csv", &words);
  for (const auto& w : words) run.vocab.add(w);

  {
    auto in = open_in(dir / "labels.json");
    json j = json::parse(in);
    run.result.labels = j.get<std::vector<std::string>>();
  }
  run.result.theta = read_matrix_csv(dir / "theta.csv", nullptr);

  {
    auto in = open_in(dir / "run_meta.json");
    json j = json::parse(in);
    run.meta.config = config_from_json(j.at("config"));
    run.meta.corpus_path = j.at("corpus_path").get<std::string>();
    run.meta.sources_path = j.at("sources_path").get<std::string>();
    run.meta.docs = j.at("docs").get<int>();
    run.meta.vocab = j.at("vocab").get<int>();
    run.meta.topics = j.at("topics").get<int>();
    run.meta.unlabeled = j.at("unlabeled").get<int>();
    run.meta.runtime_seconds = j.at("runtime_seconds").get<double>();
    run.meta.swap_counts = j.at("swap_counts").get<std::vector<long long>>();
    run.meta.boundary_events = j.at("boundary_events").get<long long>();
  }

  int V = run.vocab.size();
  int T = static_cast<int>(run.result.labels.size());
  if (run.result.phi.size() != size_t(T))
    throw std::runtime_error("phi row count does not match labels");

  {
    auto in = open_in(dir / "z.txt");
    std::string line;
    while (std::getline(in, line)) {
      std::vector<int32_t> row;
      std::istringstream fields(line);
      int t;
      while (fields >> t) row.push_back(t);
      run.z.push_back(std::move(row));
    }
  }

  run.n_w.assign(size_t(V) * T, 0);
  run.n_t.assign(T, 0);
  {
    auto in = open_in(dir / "counts.csv");
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto fields = split_csv(line);
      if (fields.size() != 3)
        throw std::runtime_error("bad counts.csv row: " + line);
      int w = std::stoi(fields[0]);
      int t = std::stoi(fields[1]);
      int c = std::stoi(fields[2]);
      if (w < 0 || w >= V || t < 0 || t >= T)
        throw std::runtime_error("counts.csv index out of range: " + line);
      run.n_w[size_t(w) * T + t] = c;
      run.n_t[t] += c;
    }
  }

  run.result.topic_tokens.assign(T, 0.0);
  for (int t = 0; t < T; ++t) run.result.topic_tokens[t] = run.n_t[t];
  run.result.doc_frequency.assign(T, 0);
  std::vector<bool> seen(T);
  for (const auto& doc : run.z) {
    std::fill(seen.begin(), seen.end(), false);
    for (int32_t t : doc)
      if (t >= 0 && t < T) seen[t] = true;
    for (int t = 0; t < T; ++t)
      if (seen[t]) ++run.result.doc_frequency[t];
  }
  run.result.swap_counts = run.meta.swap_counts;
  run.result.boundary_events = run.meta.boundary_events;
  return run;
}

void save_ground_truth(const std::filesystem::path& path,
                       const GroundTruth& truth, const Vocabulary& vocab) {
  ordered_json j;
  j["vocab"] = vocab.words;
  j["labels"] = truth.labels;
  j["used_topics"] = truth.used_topics;
  j["lambda"] = truth.lambda;
  j["phi"] = truth.phi;
  j["theta"] = truth.theta;
  j["z"] = truth.z;
  auto out = open_out(path);
  out << j.dump() << '\n';
}

GroundTruth load_ground_truth(const std::filesystem::path& path,
                              Vocabulary* vocab) {
  auto in = open_in(path);
  json j = json::parse(in);
  if (vocab)
    for (const auto& w : j.at("vocab").get<std::vector<std::string>>())
      vocab->add(w);
  GroundTruth truth;
  truth.labels = j.at("labels").get<std::vector<std::string>>();
  truth.used_topics = j.at("used_topics").get<std::vector<int>>();
  truth.lambda = j.at("lambda").get<std::vector<double>>();
  truth.phi = j.at("phi").get<std::vector<std::vector<double>>>();
  truth.theta = j.at("theta").get<std::vector<std::vector<double>>>();
  truth.z = j.at("z").get<std::vector<std::vector<int32_t>>>();
  return truth;
}

void save_reduction_report(const std::filesystem::path& path,
                           const ReductionReport& report) {
  ordered_json j;
  j["pruned"] = report.pruned;
  j["merges"] = ordered_json::array();
  for (const auto& m : report.merges)
    j["merges"].push_back(
        {{"kept", m.kept}, {"absorbed", m.absorbed}, {"jsd", m.jsd}});
  j["surviving"] = report.surviving;
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

void write_curve_csv(const std::filesystem::path& path, const std::string& name,
                     const std::vector<double>& values) {
  auto out = open_out(path);
  out << name << '\n';
  for (double v : values) out << format_double(v) << '\n';
}

}  // namespace srclda
