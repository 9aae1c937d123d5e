#include "pdfgraph/embed/cbow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pdfgraph/corpus/tfidf.hpp"
#include "pdfgraph/nn/ops.hpp"
#include "pdfgraph/nn/optim.hpp"

namespace pdfgraph::embed {
namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

CbowModel::CbowModel(CbowConfig config, std::size_t vocab_size, Rng& init_rng)
    : input("cbow.input", static_cast<Eigen::Index>(vocab_size), config.dim),
      output("cbow.output", static_cast<Eigen::Index>(vocab_size), config.dim),
      config_(config) {
  input.init_normal(init_rng, 0.02);
  output.init_normal(init_rng, 0.02);
}

double CbowModel::instance_loss(const corpus::CbowInstance& inst,
                                const std::vector<TokenId>& negatives, bool train,
                                Rng* dropout_rng) {
  const double inv_ctx = 1.0 / static_cast<double>(inst.context.size());
  nn::Vector h = nn::Vector::Zero(config_.dim);
  for (TokenId c : inst.context) h += input.value.row(c).transpose();
  h *= inv_ctx;

  nn::Matrix mask;
  if (train && config_.dropout > 0.0 && dropout_rng) {
    nn::Matrix hm = nn::dropout(h.transpose(), config_.dropout, true, *dropout_rng, &mask);
    h = hm.transpose();
  }

  double loss = 0.0;
  nn::Vector dh = nn::Vector::Zero(config_.dim);

  const double s_pos = output.value.row(inst.center).dot(h.transpose());
  loss -= std::log(std::max(sigmoid(s_pos), 1e-300));
  const double g_pos = sigmoid(s_pos) - 1.0;
  if (train) {
    dh += g_pos * output.value.row(inst.center).transpose();
    output.grad.row(inst.center) += g_pos * h.transpose();
  }
  for (TokenId neg : negatives) {
    const double s_neg = output.value.row(neg).dot(h.transpose());
    loss -= std::log(std::max(sigmoid(-s_neg), 1e-300));
    const double g_neg = sigmoid(s_neg);
    if (train) {
      dh += g_neg * output.value.row(neg).transpose();
      output.grad.row(neg) += g_neg * h.transpose();
    }
  }

  if (train) {
    if (mask.size() > 0) dh = dh.cwiseProduct(mask.transpose());
    for (TokenId c : inst.context) input.grad.row(c) += (dh * inv_ctx).transpose();
  }
  return loss;
}

double CbowModel::softmax_loss(const corpus::CbowInstance& inst, bool train, Rng* dropout_rng) {
  const double inv_ctx = 1.0 / static_cast<double>(inst.context.size());
  nn::Vector h = nn::Vector::Zero(config_.dim);
  for (TokenId c : inst.context) h += input.value.row(c).transpose();
  h *= inv_ctx;

  nn::Matrix mask;
  if (train && config_.dropout > 0.0 && dropout_rng) {
    nn::Matrix hm = nn::dropout(h.transpose(), config_.dropout, true, *dropout_rng, &mask);
    h = hm.transpose();
  }

  nn::Matrix logits = (output.value * h).transpose();  // 1 x V
  nn::Matrix dlogits;
  const double loss =
      nn::cross_entropy(logits, {static_cast<int>(inst.center)}, train ? &dlogits : nullptr);
  if (train) {
    output.grad += dlogits.transpose() * h.transpose();
    nn::Vector dh = output.value.transpose() * dlogits.transpose();
    if (mask.size() > 0) dh = dh.cwiseProduct(mask.transpose());
    for (TokenId c : inst.context) input.grad.row(c) += (dh * inv_ctx).transpose();
  }
  return loss;
}

nn::Vector CbowModel::context_scores(const std::vector<TokenId>& context) const {
  nn::Vector h = nn::Vector::Zero(config_.dim);
  if (!context.empty()) {
    for (TokenId c : context) h += input.value.row(c).transpose();
    h /= static_cast<double>(context.size());
  }
  return output.value * h;
}

Checkpoint CbowModel::to_checkpoint(const corpus::Vocab& vocab) const {
  Checkpoint ckpt;
  ckpt.scheme = "cbow";
  ckpt.metadata["dim"] = std::to_string(config_.dim);
  ckpt.metadata["window"] = std::to_string(config_.window);
  ckpt.metadata["neg_count"] = std::to_string(config_.neg_count);
  ckpt.metadata["lr"] = std::to_string(config_.lr);
  ckpt.metadata["epochs"] = std::to_string(config_.epochs);
  ckpt.metadata["batch_size"] = std::to_string(config_.batch_size);
  ckpt.metadata["dropout"] = std::to_string(config_.dropout);
  ckpt.metadata["full_softmax"] = config_.full_softmax ? "1" : "0";
  ckpt.metadata["seed"] = std::to_string(config_.seed);
  ckpt.metadata["vocab_hash"] = std::to_string(vocab.content_hash());
  ckpt.metadata["sentence_count"] = std::to_string(vocab.sentence_count());
  ckpt.metadata["idf_formula"] = "ln((1+N)/(1+df))+1";
  ckpt.add_matrix("input", input.value);
  ckpt.add_matrix("output", output.value);
  nn::Matrix df(static_cast<Eigen::Index>(vocab.size()), 1);
  for (std::size_t i = 0; i < vocab.size(); ++i)
    df(static_cast<Eigen::Index>(i), 0) = static_cast<double>(vocab.df()[i]);
  ckpt.add_matrix("corpus.df", df);
  return ckpt;
}

CbowModel CbowModel::from_checkpoint(const Checkpoint& ckpt) {
  if (ckpt.scheme != "cbow") throw std::runtime_error("checkpoint scheme is not cbow");
  CbowModel m;
  m.config_.dim = std::stoi(ckpt.meta("dim"));
  m.config_.window = std::stoi(ckpt.meta("window"));
  m.config_.neg_count = std::stoi(ckpt.meta("neg_count"));
  m.config_.seed = std::stoull(ckpt.meta("seed"));
  m.input = nn::Param("cbow.input", 0, 0);
  m.output = nn::Param("cbow.output", 0, 0);
  m.input.value = ckpt.tensor("input").to_matrix();
  m.output.value = ckpt.tensor("output").to_matrix();
  m.input.grad = nn::Matrix::Zero(m.input.value.rows(), m.input.value.cols());
  m.output.grad = nn::Matrix::Zero(m.output.value.rows(), m.output.value.cols());
  return m;
}

NegativeSampler::NegativeSampler(const std::vector<std::vector<TokenId>>& corpus,
                                 std::size_t vocab_size) {
  std::vector<double> weights(vocab_size, 0.0);
  for (const auto& s : corpus)
    for (TokenId t : s)
      if (t >= corpus::kSpecialCount) weights[t] += 1.0;
  cumulative_.resize(vocab_size, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < vocab_size; ++i) {
    total += std::pow(weights[i], 0.75);
    cumulative_[i] = total;
  }
  if (total <= 0.0) throw std::invalid_argument("corpus has no sampleable tokens");
}

TokenId NegativeSampler::draw(Rng& rng) const {
  const double u = rng.uniform_real() * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return static_cast<TokenId>(std::distance(cumulative_.begin(), it));
}

std::vector<TokenId> NegativeSampler::draw_excluding(Rng& rng, TokenId exclude, int count) const {
  std::vector<TokenId> out;
  out.reserve(static_cast<std::size_t>(count));
  int guard = 0;
  while (out.size() < static_cast<std::size_t>(count)) {
    const TokenId t = draw(rng);
    if (t == exclude && ++guard < 64) continue;
    out.push_back(t);
  }
  return out;
}

CbowModel train_cbow(const std::vector<std::vector<TokenId>>& corpus, const corpus::Vocab& vocab,
                     const CbowConfig& config, TrainLog* log) {
  if (corpus.empty()) throw std::invalid_argument("empty corpus");
  Rng rng(config.seed);
  CbowModel model(config, vocab.size(), rng);

  std::vector<corpus::CbowInstance> instances;
  for (const auto& s : corpus) {
    auto windows = corpus::cbow_windows(s, config.window);
    instances.insert(instances.end(), windows.begin(), windows.end());
  }
  if (instances.empty()) {
    if (log) log->epoch_loss.assign(static_cast<std::size_t>(std::max(config.epochs, 0)), 0.0);
    return model;  // nothing to learn from (e.g. all single-token sentences)
  }

  NegativeSampler sampler(corpus, vocab.size());
  nn::Sgd sgd(config.lr);
  const auto param_refs = model.params();

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(instances);
    double epoch_loss = 0.0;
    std::size_t in_batch = 0;
    nn::zero_grads(param_refs);
    for (const auto& inst : instances) {
      if (config.full_softmax) {
        epoch_loss += model.softmax_loss(inst, true, &rng);
      } else {
        const auto negatives = sampler.draw_excluding(rng, inst.center, config.neg_count);
        epoch_loss += model.instance_loss(inst, negatives, true, &rng);
      }
      if (++in_batch == static_cast<std::size_t>(config.batch_size)) {
        sgd.step(param_refs);
        nn::zero_grads(param_refs);
        in_batch = 0;
      }
    }
    if (in_batch > 0) {
      sgd.step(param_refs);
      nn::zero_grads(param_refs);
    }
    if (log) log->epoch_loss.push_back(epoch_loss / static_cast<double>(instances.size()));
  }
  return model;
}

std::pair<nn::Vector, bool> object_embedding_avg(const nn::Matrix& word_table,
                                                 const std::vector<TokenId>& sentence_ids,
                                                 const corpus::Vocab& vocab) {
  nn::Vector out = nn::Vector::Zero(word_table.cols());
  if (sentence_ids.empty()) return {out, false};
  const std::vector<double> weights = corpus::tfidf_weights(sentence_ids, vocab);
  for (std::size_t i = 0; i < sentence_ids.size(); ++i)
    out += weights[i] * word_table.row(sentence_ids[i]).transpose();
  return {out, true};
}

}  // namespace pdfgraph::embed
