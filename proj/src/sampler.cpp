#include "srclda/sampler.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "srclda/scan.hpp"
#include "srclda/stats.hpp"

namespace srclda {

namespace {

constexpr double kBoundaryTol = 1e-12;

}  // namespace

const char* to_string(ModelMode mode) {
  switch (mode) {
    case ModelMode::lda: return "lda";
    case ModelMode::eda: return "eda";
    case ModelMode::bijective: return "bijective";
    case ModelMode::source: return "source";
  }
  return "?";
}

const char* to_string(ParallelStrategy strategy) {
  switch (strategy) {
    case ParallelStrategy::none: return "none";
    case ParallelStrategy::prefix: return "prefix";
    case ParallelStrategy::simple: return "simple";
  }
  return "?";
}

ModelMode parse_mode(const std::string& name) {
  if (name == "lda") return ModelMode::lda;
  if (name == "eda") return ModelMode::eda;
  if (name == "bijective") return ModelMode::bijective;
  if (name == "source") return ModelMode::source;
  throw std::invalid_argument("unknown mode: " + name);
}

ParallelStrategy parse_strategy(const std::string& name) {
  if (name == "none") return ParallelStrategy::none;
  if (name == "prefix") return ParallelStrategy::prefix;
  if (name == "simple") return ParallelStrategy::simple;
  throw std::invalid_argument("unknown strategy: " + name);
}

void ModelConfig::validate(int source_topics) const {
  int T = unlabeled_topics + source_topics;
  if (unlabeled_topics < 0) throw std::invalid_argument("k must be nonnegative");
  if (T < 1) throw std::invalid_argument("need at least one topic");
  if (mode == ModelMode::lda && source_topics > 0)
    throw std::invalid_argument("lda mode does not take source topics");
  if (mode != ModelMode::lda && source_topics == 0)
    throw std::invalid_argument(std::string(to_string(mode)) +
                                " mode requires a knowledge source");
  if (mode == ModelMode::bijective && unlabeled_topics > 0)
    throw std::invalid_argument("bijective mode has no unlabeled topics");
  if (alpha && !(*alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (beta && !(*beta > 0.0)) throw std::invalid_argument("beta must be positive");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (integration_steps < 1)
    throw std::invalid_argument("integration steps must be >= 1");
  if (lambda_fixed && (*lambda_fixed < 0.0 || *lambda_fixed > 1.0))
    throw std::invalid_argument("lambda must lie in [0,1]");
  if (iterations < 0) throw std::invalid_argument("iterations must be nonnegative");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (calibration.grid_size < 2)
    throw std::invalid_argument("g grid must have >= 2 points");
  if (calibration.samples < 1)
    throw std::invalid_argument("g samples must be >= 1");
}

GibbsSampler::GibbsSampler(const Corpus& corpus, const KnowledgeSource* knowledge,
                           const ModelConfig& cfg)
    : corpus_(&corpus), cfg_(cfg), chain_(RandomStream(cfg.seed).child(kRoleChain, 0)) {
  D_ = static_cast<int>(corpus.docs.size());
  setup(corpus.vocab.size(), knowledge);
}

GibbsSampler::GibbsSampler(int vocab_size, const KnowledgeSource* knowledge,
                           const ModelConfig& cfg)
    : cfg_(cfg), chain_(RandomStream(cfg.seed).child(kRoleChain, 0)) {
  D_ = 0;
  setup(vocab_size, knowledge);
}

void GibbsSampler::setup(int vocab_size, const KnowledgeSource* knowledge) {
  knowledge_ = knowledge;
  B_ = knowledge ? knowledge->size() : 0;
  cfg_.validate(B_);
  V_ = vocab_size;
  if (V_ < 1) throw std::invalid_argument("vocabulary is empty");
  K_ = cfg_.unlabeled_topics;
  T_ = K_ + B_;
  A_ = cfg_.integration_steps;
  alpha_ = cfg_.alpha ? *cfg_.alpha : 50.0 / T_;
  beta_ = cfg_.beta ? *cfg_.beta : 200.0 / V_;

  switch (cfg_.mode) {
    case ModelMode::lda: source_kind_ = SourceKind::none; break;
    case ModelMode::eda: source_kind_ = SourceKind::eda; break;
    case ModelMode::bijective:
    case ModelMode::source:
      source_kind_ = (cfg_.mode == ModelMode::source && !cfg_.lambda_fixed)
                         ? SourceKind::integrate
                         : SourceKind::fixed;
      break;
  }

  state_.V = V_;
  state_.T = T_;
  state_.K = K_;
  state_.n_w.assign(size_t(V_) * T_, 0);
  state_.n_t.assign(T_, 0);
  p_.resize(T_);
  cum_.resize(T_);
  recip_unlab_.assign(T_, 0.0);
}

void GibbsSampler::calibrate() {
  g_.assign(B_, SmoothingFunction{});
  bool needs_g = (cfg_.mode == ModelMode::source) ||
                 (cfg_.mode == ModelMode::bijective && cfg_.lambda_fixed.has_value());
  if (B_ == 0 || source_kind_ == SourceKind::eda) return;
  if (!needs_g) {
    // Raw-delta model: exponent 1 everywhere.
    for (auto& f : g_) f = SmoothingFunction::make_identity();
    return;
  }

  GCacheKey key{cfg_.epsilon, cfg_.calibration.grid_size, cfg_.calibration.samples,
                cfg_.seed};
  std::vector<std::string> labels(B_);
  for (int b = 0; b < B_; ++b) labels[b] = knowledge_->topics[b].label;

  std::vector<SmoothingFunction> cached;
  bool have_cache = !cfg_.g_cache.empty() &&
                    load_g_cache(cfg_.g_cache, key, labels, &cached);

  RandomStream master(cfg_.seed);
  if (cfg_.shared_g) {
    std::vector<long long> pooled(V_, 0);
    for (int b = 0; b < B_; ++b)
      for (int32_t w : knowledge_->topics[b].support)
        pooled[w] += knowledge_->topics[b].counts[w];
    SourceTopic pool = make_source_topic("(pooled)", std::move(pooled), cfg_.epsilon);
    SmoothingFunction shared =
        calibrate_g(pool, cfg_.calibration, master.child(kRoleCalibration, 0));
    for (auto& f : g_) f = shared;
  } else {
    bool threaded = omp_get_max_threads() > 1;
#pragma omp parallel for schedule(dynamic) if (threaded)
    for (int b = 0; b < B_; ++b) {
      if (have_cache && !cached[b].grid.empty()) {
        g_[b] = cached[b];
      } else {
        g_[b] = calibrate_g(knowledge_->topics[b], cfg_.calibration,
                            master.child(kRoleCalibration, 1 + b));
      }
    }
  }

  if (!cfg_.g_cache.empty()) {
    try {
      save_g_cache(cfg_.g_cache, key, labels, g_);
    } catch (const std::exception& e) {
      std::cerr << "[srclda] warning: could not write g cache: " << e.what() << "\n";
    }
  }
}

void GibbsSampler::build_caches() {
  caches_.assign(B_, SourceCache{});
  if (B_ == 0) return;

  if (source_kind_ == SourceKind::integrate) {
    // Midpoint rule on [0,1]; weights follow the Gaussian density truncated
    // to the interval, normalized in log space so tiny sigmas stay finite.
    weights_.assign(A_, 0.0);
    std::vector<double> lw(A_);
    for (int q = 0; q < A_; ++q) {
      double lam = (q + 0.5) / A_;
      double zscore = (lam - cfg_.mu) / cfg_.sigma;
      lw[q] = -0.5 * zscore * zscore;
    }
    double lse = log_sum_exp(lw);
    for (int q = 0; q < A_; ++q) weights_[q] = std::exp(lw[q] - lse);
  } else {
    weights_.clear();
  }

  int cols = source_kind_ == SourceKind::integrate ? A_ : 1;
  for (int b = 0; b < B_; ++b) {
    const SourceTopic& topic = knowledge_->topics[b];
    if (static_cast<int>(topic.delta0.size()) != V_)
      throw std::invalid_argument("knowledge vocabulary does not match corpus");
    SourceCache& sc = caches_[b];
    if (source_kind_ == SourceKind::eda) {
      sc.dist = source_distribution(topic);
      continue;
    }

    std::vector<double> expo(cols);
    if (source_kind_ == SourceKind::integrate) {
      for (int q = 0; q < A_; ++q) expo[q] = g_[b]((q + 0.5) / A_);
    } else if (cfg_.mode == ModelMode::bijective && !cfg_.lambda_fixed) {
      expo[0] = 1.0;
    } else {
      expo[0] = g_[b](*cfg_.lambda_fixed);
    }

    sc.sup_index.assign(V_, -1);
    size_t S = topic.support.size();
    sc.pow_rows.resize(S * cols);
    sc.eps_pow.resize(cols);
    sc.denom.assign(cols, 0.0);
    sc.recip.assign(cols, 0.0);
    for (int q = 0; q < cols; ++q)
      sc.eps_pow[q] = std::pow(cfg_.epsilon, expo[q]);
    for (size_t i = 0; i < S; ++i) {
      int32_t w = topic.support[i];
      sc.sup_index[w] = static_cast<int32_t>(i);
      for (int q = 0; q < cols; ++q)
        sc.pow_rows[i * cols + q] = std::pow(topic.delta0[w], expo[q]);
    }
    for (int q = 0; q < cols; ++q) {
      double sum = (static_cast<double>(V_) - static_cast<double>(S)) * sc.eps_pow[q];
      for (size_t i = 0; i < S; ++i) sum += sc.pow_rows[i * cols + q];
      sc.denom[q] = sum;
    }
  }
}

void GibbsSampler::refresh(int t) {
  double nt = state_.n_t[t];
  if (t < K_) {
    recip_unlab_[t] = 1.0 / (nt + V_ * beta_);
    return;
  }
  SourceCache& sc = caches_[t - K_];
  for (size_t q = 0; q < sc.recip.size(); ++q)
    sc.recip[q] = 1.0 / (nt + sc.denom[q]);
}

void GibbsSampler::refresh_all() {
  for (int t = 0; t < T_; ++t) refresh(t);
}

void GibbsSampler::init() {
  calibrate();
  build_caches();

  std::fill(state_.n_w.begin(), state_.n_w.end(), 0);
  std::fill(state_.n_t.begin(), state_.n_t.end(), 0);
  state_.tokens = 0;
  swap_counts_.clear();
  boundary_events_ = 0;

  if (corpus_) {
    state_.z.assign(D_, {});
    state_.n_d.assign(size_t(D_) * T_, 0);
    for (int d = 0; d < D_; ++d) {
      const auto& tokens = corpus_->docs[d].tokens;
      state_.z[d].resize(tokens.size());
      for (size_t j = 0; j < tokens.size(); ++j) {
        int t = static_cast<int>(chain_.uniform_int(static_cast<uint32_t>(T_)));
        state_.z[d][j] = t;
        ++state_.n_w[size_t(tokens[j]) * T_ + t];
        ++state_.n_d[size_t(d) * T_ + t];
        ++state_.n_t[t];
        ++state_.tokens;
      }
    }
  }
  refresh_all();
  initialized_ = true;
}

void GibbsSampler::load_counts(const std::vector<int32_t>& n_w,
                               const std::vector<int32_t>& n_t) {
  if (n_w.size() != size_t(V_) * T_ || n_t.size() != size_t(T_))
    throw std::invalid_argument("load_counts: dimension mismatch");
  calibrate();
  build_caches();
  state_.n_w = n_w;
  state_.n_t = n_t;
  state_.tokens = 0;
  for (int t = 0; t < T_; ++t) state_.tokens += n_t[t];
  refresh_all();
  initialized_ = true;
}

double GibbsSampler::topic_prob(int t, int32_t w, const int32_t* nd_row,
                                double doc_norm) const {
  double doc = (nd_row[t] + alpha_) * doc_norm;
  if (t < K_)
    return (state_.n_w[size_t(w) * T_ + t] + beta_) * recip_unlab_[t] * doc;

  const SourceCache& sc = caches_[t - K_];
  switch (source_kind_) {
    case SourceKind::eda:
      return sc.dist[w] * doc;
    case SourceKind::fixed: {
      double nw = state_.n_w[size_t(w) * T_ + t];
      double dv = sc.sup_index[w] >= 0 ? sc.pow_rows[sc.sup_index[w]] : sc.eps_pow[0];
      return (nw + dv) * sc.recip[0] * doc;
    }
    case SourceKind::integrate: {
      double nw = state_.n_w[size_t(w) * T_ + t];
      const double* pw = sc.sup_index[w] >= 0
                             ? &sc.pow_rows[size_t(sc.sup_index[w]) * A_]
                             : sc.eps_pow.data();
      double acc = 0.0;
      for (int q = 0; q < A_; ++q)
        acc += weights_[q] * (nw + pw[q]) * sc.recip[q];
      return acc * doc;
    }
    default:
      throw std::logic_error("source topic without a source kind");
  }
}

size_t GibbsSampler::draw_topic(int32_t w, const int32_t* nd_row, double doc_norm,
                                double u01) {
  bool threaded = omp_get_max_threads() > 1 && cfg_.workers > 1;
  DrawOutcome out;
  switch (cfg_.strategy) {
    case ParallelStrategy::none: {
      double run = 0.0;
      for (int t = 0; t < T_; ++t) {
        run += topic_prob(t, w, nd_row, doc_norm);
        cum_[t] = run;
      }
      if (!(run > 0.0)) break;
      out = draw_from_inclusive(cum_.data(), T_, u01, kBoundaryTol);
      boundary_events_ += out.boundary_event;
      return out.index;
    }
    case ParallelStrategy::simple: {
#pragma omp parallel for schedule(static) if (threaded)
      for (int t = 0; t < T_; ++t) p_[t] = topic_prob(t, w, nd_row, doc_norm);
      inclusive_scan_blocks(p_.data(), cum_.data(), T_, cfg_.workers);
      if (!(cum_[T_ - 1] > 0.0)) break;
      out = draw_from_inclusive(cum_.data(), T_, u01, kBoundaryTol);
      boundary_events_ += out.boundary_event;
      return out.index;
    }
    case ParallelStrategy::prefix: {
#pragma omp parallel for schedule(static) if (threaded)
      for (int t = 0; t < T_; ++t) p_[t] = topic_prob(t, w, nd_row, doc_norm);
      double total = exclusive_scan_tree(p_.data(), cum_.data(), T_, scratch_);
      if (!(total > 0.0)) break;
      out = draw_from_exclusive(cum_.data(), T_, total, u01, kBoundaryTol);
      boundary_events_ += out.boundary_event;
      return out.index;
    }
  }
  // Zero total mass. EDA documents this fallback (a word can sit outside
  // every source's support); anywhere else it means broken state.
  if (source_kind_ != SourceKind::eda)
    throw std::runtime_error("conditional distribution has zero mass");
  size_t t = static_cast<size_t>(u01 * T_);
  return t < size_t(T_) ? t : size_t(T_) - 1;
}

void GibbsSampler::sweep() {
  if (!initialized_) throw std::logic_error("sweep() before init()");
  if (!corpus_) throw std::logic_error("sweep() requires a corpus");

  long long swaps = 0;
  for (int d = 0; d < D_; ++d) {
    const auto& tokens = corpus_->docs[d].tokens;
    if (tokens.empty()) continue;
    int32_t* nd_row = &state_.n_d[size_t(d) * T_];
    double doc_norm = 1.0 / (static_cast<double>(tokens.size()) - 1.0 + T_ * alpha_);
    for (size_t j = 0; j < tokens.size(); ++j) {
      int32_t w = tokens[j];
      int old = state_.z[d][j];
      int32_t& nw = state_.n_w[size_t(w) * T_ + old];
      if (--nw < 0 || --nd_row[old] < 0 || --state_.n_t[old] < 0)
        throw std::logic_error("negative count during decrement");
      refresh(old);

      double u01 = chain_.uniform01();
      int t = static_cast<int>(draw_topic(w, nd_row, doc_norm, u01));

      ++state_.n_w[size_t(w) * T_ + t];
      ++nd_row[t];
      ++state_.n_t[t];
      refresh(t);
      state_.z[d][j] = t;
      swaps += (t != old);
    }
  }
  swap_counts_.push_back(swaps);
}

TopicModelResult GibbsSampler::run() {
  init();
  for (int it = 0; it < cfg_.iterations; ++it) sweep();
  return snapshot();
}

TopicModelResult GibbsSampler::snapshot() const {
  if (!initialized_) throw std::logic_error("snapshot() before init()");
  TopicModelResult r;
  r.labels.resize(T_);
  for (int t = 0; t < K_; ++t) r.labels[t] = "topic_" + std::to_string(t);
  for (int b = 0; b < B_; ++b) r.labels[K_ + b] = knowledge_->topics[b].label;

  r.phi.assign(T_, std::vector<double>(V_, 0.0));
  for (int t = 0; t < T_; ++t) {
    auto& row = r.phi[t];
    double nt = state_.n_t[t];
    if (t < K_) {
      double den = 1.0 / (nt + V_ * beta_);
      for (int32_t w = 0; w < V_; ++w)
        row[w] = (state_.n_w[size_t(w) * T_ + t] + beta_) * den;
      continue;
    }
    const SourceCache& sc = caches_[t - K_];
    switch (source_kind_) {
      case SourceKind::eda:
        row = sc.dist;
        break;
      case SourceKind::fixed: {
        double den = 1.0 / (nt + sc.denom[0]);
        for (int32_t w = 0; w < V_; ++w) {
          double dv =
              sc.sup_index[w] >= 0 ? sc.pow_rows[sc.sup_index[w]] : sc.eps_pow[0];
          row[w] = (state_.n_w[size_t(w) * T_ + t] + dv) * den;
        }
        break;
      }
      case SourceKind::integrate: {
        for (int32_t w = 0; w < V_; ++w) {
          double nw = state_.n_w[size_t(w) * T_ + t];
          const double* pw = sc.sup_index[w] >= 0
                                 ? &sc.pow_rows[size_t(sc.sup_index[w]) * A_]
                                 : sc.eps_pow.data();
          double acc = 0.0;
          for (int q = 0; q < A_; ++q)
            acc += weights_[q] * (nw + pw[q]) / (nt + sc.denom[q]);
          row[w] = acc;
        }
        break;
      }
      default:
        throw std::logic_error("source topic without a source kind");
    }
  }

  r.theta.assign(D_, std::vector<double>(T_, 0.0));
  for (int d = 0; d < D_; ++d) {
    double len = corpus_ ? static_cast<double>(corpus_->docs[d].tokens.size()) : 0.0;
    double den = 1.0 / (len + T_ * alpha_);
    for (int t = 0; t < T_; ++t)
      r.theta[d][t] = (state_.n_d[size_t(d) * T_ + t] + alpha_) * den;
  }

  r.topic_tokens.assign(T_, 0.0);
  for (int t = 0; t < T_; ++t) r.topic_tokens[t] = state_.n_t[t];
  r.doc_frequency.assign(T_, 0);
  for (int d = 0; d < D_; ++d)
    for (int t = 0; t < T_; ++t)
      if (state_.n_d[size_t(d) * T_ + t] > 0) ++r.doc_frequency[t];

  if (source_kind_ == SourceKind::integrate) r.lambda_posterior = lambda_posterior();
  r.swap_counts = swap_counts_;
  r.boundary_events = boundary_events_;
  return r;
}

const SmoothingFunction& GibbsSampler::g(int source_index) const {
  if (source_index < 0 || source_index >= B_)
    throw std::out_of_range("source index out of range");
  return g_[source_index];
}

double GibbsSampler::integrate_lambda(int source_index, int32_t word,
                                      double n_w_value, double n_t_value) const {
  if (source_kind_ != SourceKind::integrate)
    throw std::logic_error("integrate_lambda requires the integrating mode");
  const SourceCache& sc = caches_[source_index];
  const double* pw = sc.sup_index[word] >= 0
                         ? &sc.pow_rows[size_t(sc.sup_index[word]) * A_]
                         : sc.eps_pow.data();
  double acc = 0.0;
  for (int q = 0; q < A_; ++q)
    acc += weights_[q] * (n_w_value + pw[q]) / (n_t_value + sc.denom[q]);
  return acc;
}

std::vector<double> GibbsSampler::conditional(int doc, int pos) {
  if (!initialized_ || !corpus_) throw std::logic_error("conditional: no state");
  const auto& tokens = corpus_->docs[doc].tokens;
  int32_t w = tokens[pos];
  int old = state_.z[doc][pos];
  int32_t* nd_row = &state_.n_d[size_t(doc) * T_];
  --state_.n_w[size_t(w) * T_ + old];
  --nd_row[old];
  --state_.n_t[old];
  refresh(old);

  double doc_norm = 1.0 / (static_cast<double>(tokens.size()) - 1.0 + T_ * alpha_);
  std::vector<double> p(T_);
  for (int t = 0; t < T_; ++t) p[t] = topic_prob(t, w, nd_row, doc_norm);

  ++state_.n_w[size_t(w) * T_ + old];
  ++nd_row[old];
  ++state_.n_t[old];
  refresh(old);

  double total = 0.0;
  for (double x : p) total += x;
  if (total > 0.0)
    for (double& x : p) x /= total;
  return p;
}

std::vector<std::vector<double>> GibbsSampler::lambda_posterior() const {
  if (source_kind_ != SourceKind::integrate) return {};
  std::vector<std::vector<double>> post(B_, std::vector<double>(A_, 0.0));
  for (int b = 0; b < B_; ++b) {
    const SourceCache& sc = caches_[b];
    int t = K_ + b;
    double nt = state_.n_t[t];
    std::vector<double> lw(A_);
    for (int q = 0; q < A_; ++q)
      lw[q] = std::log(std::max(weights_[q], 1e-300)) + std::lgamma(sc.denom[q]) -
              std::lgamma(sc.denom[q] + nt);
    for (int32_t w = 0; w < V_; ++w) {
      double nw = state_.n_w[size_t(w) * T_ + t];
      if (nw <= 0) continue;
      const double* pw = sc.sup_index[w] >= 0
                             ? &sc.pow_rows[size_t(sc.sup_index[w]) * A_]
                             : sc.eps_pow.data();
      for (int q = 0; q < A_; ++q)
        lw[q] += std::lgamma(pw[q] + nw) - std::lgamma(pw[q]);
    }
    double lse = log_sum_exp(lw);
    for (int q = 0; q < A_; ++q) post[b][q] = std::exp(lw[q] - lse);
  }
  return post;
}

void GibbsSampler::check_consistency() const {
  if (!corpus_) throw std::logic_error("check_consistency: no corpus");
  std::vector<int32_t> nw(size_t(V_) * T_, 0), nd(size_t(D_) * T_, 0), nt(T_, 0);
  long long tokens = 0;
  for (int d = 0; d < D_; ++d) {
    const auto& doc = corpus_->docs[d].tokens;
    if (state_.z[d].size() != doc.size())
      throw std::logic_error("assignment length mismatch");
    for (size_t j = 0; j < doc.size(); ++j) {
      int t = state_.z[d][j];
      if (t < 0 || t >= T_) throw std::logic_error("assignment out of range");
      ++nw[size_t(doc[j]) * T_ + t];
      ++nd[size_t(d) * T_ + t];
      ++nt[t];
      ++tokens;
    }
  }
  if (nw != state_.n_w) throw std::logic_error("word-topic counts drifted");
  if (nd != state_.n_d) throw std::logic_error("doc-topic counts drifted");
  if (nt != state_.n_t) throw std::logic_error("topic totals drifted");
  if (tokens != state_.tokens) throw std::logic_error("token total drifted");
}

double GibbsSampler::topic_prob_tilde(int t, int32_t w, double extra_nw,
                                      double extra_nt, const int32_t* nd_row,
                                      double doc_norm) const {
  double doc = (nd_row[t] + alpha_) * doc_norm;
  double nw = state_.n_w[size_t(w) * T_ + t] + extra_nw;
  double nt = state_.n_t[t] + extra_nt;
  if (t < K_) return (nw + beta_) / (nt + V_ * beta_) * doc;

  const SourceCache& sc = caches_[t - K_];
  switch (source_kind_) {
    case SourceKind::eda:
      return sc.dist[w] * doc;
    case SourceKind::fixed: {
      double dv = sc.sup_index[w] >= 0 ? sc.pow_rows[sc.sup_index[w]] : sc.eps_pow[0];
      return (nw + dv) / (nt + sc.denom[0]) * doc;
    }
    case SourceKind::integrate: {
      const double* pw = sc.sup_index[w] >= 0
                             ? &sc.pow_rows[size_t(sc.sup_index[w]) * A_]
                             : sc.eps_pow.data();
      double acc = 0.0;
      for (int q = 0; q < A_; ++q)
        acc += weights_[q] * (nw + pw[q]) / (nt + sc.denom[q]);
      return acc * doc;
    }
    default:
      throw std::logic_error("source topic without a source kind");
  }
}

namespace {

// FNV-1a over the token ids, so a document keeps its evaluation stream no
// matter where it sits in the held-out set.
uint64_t document_key(const Document& doc) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (int32_t w : doc.tokens) {
    h ^= static_cast<uint64_t>(static_cast<uint32_t>(w));
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

double GibbsSampler::heldout_perplexity(const std::vector<Document>& docs,
                                        int burn_in, int samples,
                                        uint64_t seed) const {
  if (!initialized_) throw std::logic_error("heldout_perplexity before init");
  if (samples < 1) throw std::invalid_argument("need at least one sample sweep");
  size_t total_tokens = 0;
  for (const auto& d : docs) total_tokens += d.tokens.size();
  if (total_tokens == 0) throw std::invalid_argument("held-out set is empty");

  // Training-side phi once; test-side counts evolve below. Each document is
  // evaluated independently with its own content-keyed stream.
  TopicModelResult snap = snapshot();
  RandomStream base(seed);

  std::vector<int32_t> tw(size_t(V_) * T_, 0);
  std::vector<int32_t> td(T_), tt(T_);
  std::vector<double> p(T_);
  std::vector<double> doc_log;

  for (const auto& doc : docs) {
    const auto& tokens = doc.tokens;
    if (tokens.empty()) continue;
    RandomStream rng = base.child(kRoleEval, document_key(doc));

    for (int32_t w : tokens) std::fill_n(&tw[size_t(w) * T_], T_, 0);
    std::fill(td.begin(), td.end(), 0);
    std::fill(tt.begin(), tt.end(), 0);
    std::vector<int32_t> tz(tokens.size());
    for (size_t j = 0; j < tokens.size(); ++j) {
      int t = static_cast<int>(rng.uniform_int(static_cast<uint32_t>(T_)));
      tz[j] = t;
      ++tw[size_t(tokens[j]) * T_ + t];
      ++td[t];
      ++tt[t];
    }

    std::vector<double> token_acc(tokens.size(), 0.0);
    double doc_norm =
        1.0 / (static_cast<double>(tokens.size()) - 1.0 + T_ * alpha_);
    for (int s = 0; s < burn_in + samples; ++s) {
      for (size_t j = 0; j < tokens.size(); ++j) {
        int32_t w = tokens[j];
        int old = tz[j];
        --tw[size_t(w) * T_ + old];
        --td[old];
        --tt[old];
        double run = 0.0;
        for (int t = 0; t < T_; ++t) {
          run += topic_prob_tilde(t, w, tw[size_t(w) * T_ + t], tt[t],
                                  td.data(), doc_norm);
          p[t] = run;
        }
        int t_new;
        if (run > 0.0) {
          t_new = static_cast<int>(
              draw_from_inclusive(p.data(), T_, rng.uniform01(), kBoundaryTol).index);
        } else {
          t_new = static_cast<int>(rng.uniform_int(static_cast<uint32_t>(T_)));
        }
        ++tw[size_t(w) * T_ + t_new];
        ++td[t_new];
        ++tt[t_new];
        tz[j] = t_new;
      }
      if (s < burn_in) continue;
      // Score each token against the document distribution formed by the
      // *other* test tokens, mirroring the leave-one-out conditional.
      for (size_t j = 0; j < tokens.size(); ++j) {
        double like = 0.0;
        for (int t = 0; t < T_; ++t) {
          double th = (td[t] - (tz[j] == t ? 1 : 0) + alpha_) * doc_norm;
          like += th * snap.phi[t][tokens[j]];
        }
        token_acc[j] += like;
      }
    }

    double doc_loglik = 0.0;
    for (double acc : token_acc)
      doc_loglik += std::log(std::max(acc / samples, 1e-300));
    doc_log.push_back(doc_loglik);
  }
  // Sorted summation keeps the total independent of document order.
  std::sort(doc_log.begin(), doc_log.end());
  double loglik = 0.0;
  for (double v : doc_log) loglik += v;
  return std::exp(-loglik / static_cast<double>(total_tokens));
}

}  // namespace srclda
