#include "pdfgraph/gin/dnn.hpp"

#include <stdexcept>

#include "pdfgraph/nn/optim.hpp"

namespace pdfgraph::gin {

DnnBaseline::DnnBaseline(DnnConfig config, Rng& init_rng)
    : l1("dnn.l1", config.input_dim, config.hidden),
      l2("dnn.l2", config.hidden, config.hidden),
      l3("dnn.l3", config.hidden, 2),
      config_(config) {
  l1.W.init_normal(init_rng, 0.02);
  l2.W.init_normal(init_rng, 0.02);
  l3.W.init_normal(init_rng, 0.02);
}

nn::ParamRefs DnnBaseline::params() {
  nn::ParamRefs out;
  for (auto* lin : {&l1, &l2, &l3})
    for (nn::Param* p : lin->params()) out.push_back(p);
  return out;
}

nn::Matrix DnnBaseline::pooled_input(const Aorg& aorg) {
  if (aorg.features.rows() == 0) throw std::invalid_argument("empty graph cannot be pooled");
  return aorg.features.colwise().mean();
}

nn::Matrix DnnBaseline::logits(const nn::Matrix& pooled, DnnCache* cache) const {
  DnnCache local;
  DnnCache* c = cache ? cache : &local;
  const nn::Matrix z1 = l1.forward(pooled, &c->c1);
  const nn::Matrix a1 = nn::relu(z1);
  const nn::Matrix z2 = l2.forward(a1, &c->c2);
  const nn::Matrix a2 = nn::relu(z2);
  c->z1 = z1;
  c->z2 = z2;
  return l3.forward(a2, &c->c3);
}

std::pair<int, std::array<double, 2>> DnnBaseline::classify(const Aorg& aorg) const {
  const nn::Matrix probs = nn::softmax_rows(logits(pooled_input(aorg)));
  const int label = probs(0, 1) > probs(0, 0) ? 1 : 0;
  return {label, {probs(0, 0), probs(0, 1)}};
}

double DnnBaseline::loss(const nn::Matrix& pooled, int label, bool train) {
  DnnCache cache;
  const nn::Matrix lg = logits(pooled, &cache);
  nn::Matrix dlogits;
  const double value = nn::cross_entropy(lg, {label}, train ? &dlogits : nullptr);
  if (train) {
    const nn::Matrix da2 = l3.backward(dlogits, cache.c3);
    const nn::Matrix dz2 = nn::relu_backward(cache.z2, da2);
    const nn::Matrix da1 = l2.backward(dz2, cache.c2);
    const nn::Matrix dz1 = nn::relu_backward(cache.z1, da1);
    l1.backward(dz1, cache.c1);
  }
  return value;
}

embed::Checkpoint DnnBaseline::to_checkpoint() const {
  embed::Checkpoint ckpt;
  ckpt.scheme = "dnn";
  ckpt.metadata["input_dim"] = std::to_string(config_.input_dim);
  ckpt.metadata["hidden"] = std::to_string(config_.hidden);
  ckpt.metadata["lr"] = std::to_string(config_.lr);
  ckpt.metadata["epochs"] = std::to_string(config_.epochs);
  ckpt.metadata["batch_size"] = std::to_string(config_.batch_size);
  ckpt.metadata["seed"] = std::to_string(config_.seed);
  DnnBaseline& self = const_cast<DnnBaseline&>(*this);
  for (nn::Param* p : self.params()) ckpt.add_matrix(p->name, p->value);
  return ckpt;
}

DnnBaseline DnnBaseline::from_checkpoint(const embed::Checkpoint& ckpt) {
  if (ckpt.scheme != "dnn") throw std::runtime_error("checkpoint scheme is not dnn");
  DnnConfig config;
  config.input_dim = std::stoi(ckpt.meta("input_dim"));
  config.hidden = std::stoi(ckpt.meta("hidden"));
  config.seed = std::stoull(ckpt.meta("seed"));
  Rng rng(0);
  DnnBaseline model(config, rng);
  for (nn::Param* p : model.params()) {
    p->value = ckpt.tensor(p->name).to_matrix();
    p->grad = nn::Matrix::Zero(p->value.rows(), p->value.cols());
  }
  return model;
}

TrainHistory train_dnn(DnnBaseline& model, const std::vector<Aorg>& samples,
                       const DnnConfig& config) {
  if (samples.empty()) throw std::invalid_argument("no training samples");
  bool saw0 = false, saw1 = false;
  for (const auto& s : samples) {
    if (!s.label) throw std::invalid_argument("unlabeled sample in training set");
    (*s.label == 0 ? saw0 : saw1) = true;
  }
  if (!saw0 || !saw1) throw std::invalid_argument("training needs both classes");

  std::vector<nn::Matrix> pooled;
  pooled.reserve(samples.size());
  for (const auto& s : samples) pooled.push_back(DnnBaseline::pooled_input(s));

  Rng rng(config.seed);
  nn::Adam adam(config.lr);
  const auto param_refs = model.params();
  std::vector<std::size_t> order(samples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  TrainHistory history;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(order);
    double sum_loss = 0.0;
    std::size_t correct = 0;
    std::size_t in_batch = 0;
    nn::zero_grads(param_refs);
    for (std::size_t idx : order) {
      const nn::Matrix lg = model.logits(pooled[idx]);
      correct += (lg(0, 1) > lg(0, 0) ? 1 : 0) == *samples[idx].label ? 1 : 0;
      sum_loss += model.loss(pooled[idx], *samples[idx].label, true);
      if (++in_batch == static_cast<std::size_t>(config.batch_size)) {
        adam.step(param_refs);
        nn::zero_grads(param_refs);
        in_batch = 0;
      }
    }
    if (in_batch > 0) {
      adam.step(param_refs);
      nn::zero_grads(param_refs);
    }
    history.epoch_loss.push_back(sum_loss / static_cast<double>(samples.size()));
    history.epoch_accuracy.push_back(static_cast<double>(correct) /
                                     static_cast<double>(samples.size()));
  }
  return history;
}

}  // namespace pdfgraph::gin
