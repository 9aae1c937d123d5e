#include "pdfgraph/embed/pvdm.hpp"

#include <cmath>
#include <stdexcept>

#include "pdfgraph/nn/ops.hpp"
#include "pdfgraph/nn/optim.hpp"

namespace pdfgraph::embed {
namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

PvdmModel::PvdmModel(PvdmConfig config, std::size_t vocab_size, std::size_t paragraph_count,
                     Rng& init_rng)
    : words("pvdm.words", static_cast<Eigen::Index>(vocab_size), config.dim),
      paragraphs("pvdm.paragraphs", static_cast<Eigen::Index>(paragraph_count), config.dim),
      projection("pvdm.projection", static_cast<Eigen::Index>(vocab_size),
                 static_cast<Eigen::Index>(config.dim * (1 + 2 * config.window))),
      config_(config) {
  words.init_normal(init_rng, 0.02);
  paragraphs.init_normal(init_rng, 0.02);
  projection.init_normal(init_rng, 0.02);
}

nn::Vector PvdmModel::assemble(const corpus::PvdmInstance& inst) const {
  const Eigen::Index d = words.value.cols();
  nn::Vector x = nn::Vector::Zero(concat_width());
  x.segment(0, d) = paragraphs.value.row(static_cast<Eigen::Index>(inst.paragraph)).transpose();
  for (std::size_t s = 0; s < inst.context.size(); ++s) {
    if (inst.context[s])
      x.segment(static_cast<Eigen::Index>(d * (s + 1)), d) =
          words.value.row(*inst.context[s]).transpose();
  }
  return x;
}

// Scatters dx back into the paragraph row and the occupied context slots.
static void scatter_input_grad(PvdmModel& m, const corpus::PvdmInstance& inst,
                               const nn::Vector& dx) {
  const Eigen::Index d = m.words.value.cols();
  m.paragraphs.grad.row(static_cast<Eigen::Index>(inst.paragraph)) +=
      dx.segment(0, d).transpose();
  for (std::size_t s = 0; s < inst.context.size(); ++s) {
    if (inst.context[s])
      m.words.grad.row(*inst.context[s]) +=
          dx.segment(static_cast<Eigen::Index>(d * (s + 1)), d).transpose();
  }
}

double PvdmModel::instance_loss(const corpus::PvdmInstance& inst,
                                const std::vector<TokenId>& negatives, bool train) {
  const nn::Vector x = assemble(inst);
  double loss = 0.0;
  nn::Vector dx = nn::Vector::Zero(x.size());

  const double s_pos = projection.value.row(inst.target).dot(x);
  loss -= std::log(std::max(sigmoid(s_pos), 1e-300));
  const double g_pos = sigmoid(s_pos) - 1.0;
  if (train) {
    dx += g_pos * projection.value.row(inst.target).transpose();
    projection.grad.row(inst.target) += g_pos * x.transpose();
  }
  for (TokenId neg : negatives) {
    const double s_neg = projection.value.row(neg).dot(x);
    loss -= std::log(std::max(sigmoid(-s_neg), 1e-300));
    const double g_neg = sigmoid(s_neg);
    if (train) {
      dx += g_neg * projection.value.row(neg).transpose();
      projection.grad.row(neg) += g_neg * x.transpose();
    }
  }
  if (train) scatter_input_grad(*this, inst, dx);
  return loss;
}

double PvdmModel::softmax_loss(const corpus::PvdmInstance& inst, bool train) {
  const nn::Vector x = assemble(inst);
  nn::Matrix logits = (projection.value * x).transpose();  // 1 x V
  nn::Matrix dlogits;
  const double loss =
      nn::cross_entropy(logits, {static_cast<int>(inst.target)}, train ? &dlogits : nullptr);
  if (train) {
    projection.grad += dlogits.transpose() * x.transpose();
    const nn::Vector dx = projection.value.transpose() * dlogits.transpose();
    scatter_input_grad(*this, inst, dx);
  }
  return loss;
}

nn::Vector PvdmModel::scores(const nn::Vector& paragraph_vec,
                             const std::vector<std::optional<TokenId>>& context) const {
  const Eigen::Index d = words.value.cols();
  nn::Vector x = nn::Vector::Zero(concat_width());
  x.segment(0, d) = paragraph_vec;
  for (std::size_t s = 0; s < context.size() && s < static_cast<std::size_t>(2 * config_.window);
       ++s) {
    if (context[s]) x.segment(static_cast<Eigen::Index>(d * (s + 1)), d) =
        words.value.row(*context[s]).transpose();
  }
  return projection.value * x;
}

Checkpoint PvdmModel::to_checkpoint(const corpus::Vocab& vocab) const {
  Checkpoint ckpt;
  ckpt.scheme = "pvdm";
  ckpt.metadata["dim"] = std::to_string(config_.dim);
  ckpt.metadata["window"] = std::to_string(config_.window);
  ckpt.metadata["neg_count"] = std::to_string(config_.neg_count);
  ckpt.metadata["lr"] = std::to_string(config_.lr);
  ckpt.metadata["epochs"] = std::to_string(config_.epochs);
  ckpt.metadata["batch_size"] = std::to_string(config_.batch_size);
  ckpt.metadata["full_softmax"] = config_.full_softmax ? "1" : "0";
  ckpt.metadata["seed"] = std::to_string(config_.seed);
  ckpt.metadata["vocab_hash"] = std::to_string(vocab.content_hash());
  ckpt.metadata["sentence_count"] = std::to_string(vocab.sentence_count());
  ckpt.metadata["idf_formula"] = "ln((1+N)/(1+df))+1";
  ckpt.add_matrix("words", words.value);
  ckpt.add_matrix("paragraphs", paragraphs.value);
  ckpt.add_matrix("projection", projection.value);
  nn::Matrix df(static_cast<Eigen::Index>(vocab.size()), 1);
  for (std::size_t i = 0; i < vocab.size(); ++i)
    df(static_cast<Eigen::Index>(i), 0) = static_cast<double>(vocab.df()[i]);
  ckpt.add_matrix("corpus.df", df);
  return ckpt;
}

PvdmModel PvdmModel::from_checkpoint(const Checkpoint& ckpt) {
  if (ckpt.scheme != "pvdm") throw std::runtime_error("checkpoint scheme is not pvdm");
  PvdmModel m;
  m.config_.dim = std::stoi(ckpt.meta("dim"));
  m.config_.window = std::stoi(ckpt.meta("window"));
  m.config_.neg_count = std::stoi(ckpt.meta("neg_count"));
  m.config_.seed = std::stoull(ckpt.meta("seed"));
  m.words.value = ckpt.tensor("words").to_matrix();
  m.paragraphs.value = ckpt.tensor("paragraphs").to_matrix();
  m.projection.value = ckpt.tensor("projection").to_matrix();
  m.words.grad = nn::Matrix::Zero(m.words.value.rows(), m.words.value.cols());
  m.paragraphs.grad = nn::Matrix::Zero(m.paragraphs.value.rows(), m.paragraphs.value.cols());
  m.projection.grad = nn::Matrix::Zero(m.projection.value.rows(), m.projection.value.cols());
  return m;
}

PvdmModel train_pvdm(const std::vector<std::vector<TokenId>>& corpus, const corpus::Vocab& vocab,
                     const PvdmConfig& config, TrainLog* log) {
  if (corpus.empty()) throw std::invalid_argument("empty corpus");
  Rng rng(config.seed);
  PvdmModel model(config, vocab.size(), corpus.size(), rng);

  std::vector<corpus::PvdmInstance> instances;
  for (std::size_t p = 0; p < corpus.size(); ++p) {
    auto ctx = corpus::pvdm_contexts(corpus[p], p, config.window);
    instances.insert(instances.end(), ctx.begin(), ctx.end());
  }
  if (instances.empty()) {
    if (log) log->epoch_loss.assign(static_cast<std::size_t>(std::max(config.epochs, 0)), 0.0);
    return model;
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
        epoch_loss += model.softmax_loss(inst, true);
      } else {
        const auto negatives = sampler.draw_excluding(rng, inst.target, config.neg_count);
        epoch_loss += model.instance_loss(inst, negatives, true);
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

}  // namespace pdfgraph::embed
