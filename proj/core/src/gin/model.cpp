#include "pdfgraph/gin/model.hpp"

#include <array>
#include <stdexcept>

#include "pdfgraph/nn/optim.hpp"

namespace pdfgraph::gin {

GinLayer::GinLayer(const GinConfig& config, int index, int in_dim)
    : eps("gin" + std::to_string(index) + ".eps", 1, 1),
      fc1("gin" + std::to_string(index) + ".fc1", in_dim, config.hidden),
      fc2("gin" + std::to_string(index) + ".fc2", config.hidden, config.hidden) {}

GinModel::GinModel(GinConfig config, Rng& init_rng) : config_(config) {
  layers.reserve(static_cast<std::size_t>(config.num_layers));
  for (int l = 0; l < config.num_layers; ++l) {
    layers.emplace_back(config, l, l == 0 ? config.input_dim : config.hidden);
    layers.back().fc1.W.init_normal(init_rng, 0.02);
    layers.back().fc2.W.init_normal(init_rng, 0.02);
  }
  head = nn::Linear("gin.head", config.hidden, 2);
  head.W.init_normal(init_rng, 0.02);
}

nn::ParamRefs GinModel::params() {
  nn::ParamRefs out;
  for (auto& layer : layers) {
    out.push_back(&layer.eps);
    for (nn::Param* p : layer.fc1.params()) out.push_back(p);
    for (nn::Param* p : layer.fc2.params()) out.push_back(p);
  }
  for (nn::Param* p : head.params()) out.push_back(p);
  return out;
}

nn::Matrix GinModel::logits(const nn::Matrix& features, const nn::Matrix& adjacency,
                            GinCache* cache) const {
  if (features.rows() == 0) throw std::invalid_argument("empty graph cannot be scored");
  if (features.cols() != config_.input_dim)
    throw std::invalid_argument("feature dimension does not match model input");

  nn::Matrix H = features;
  if (cache) {
    cache->A = adjacency;
    cache->n_nodes = features.rows();
    cache->inputs.clear();
    cache->pre_mlp.clear();
    cache->fc1_out.clear();
    cache->c1.assign(layers.size(), {});
    cache->c2.assign(layers.size(), {});
  }
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const GinLayer& layer = layers[l];
    nn::Matrix neigh = adjacency * H;
    if (config_.aggregation == Aggregation::Mean) {
      // Inference-only normalization; gradients treat degrees as constants.
      const nn::Vector deg = adjacency.rowwise().sum().cwiseMax(1.0);
      neigh = deg.cwiseInverse().asDiagonal() * neigh;
    }
    const nn::Matrix M = (1.0 + layer.eps.value(0, 0)) * H + neigh;
    const nn::Matrix Z1 = layer.fc1.forward(M, cache ? &cache->c1[l] : nullptr);
    const nn::Matrix R = nn::relu(Z1);
    if (cache) {
      cache->inputs.push_back(H);
      cache->pre_mlp.push_back(M);
      cache->fc1_out.push_back(Z1);
    }
    H = layer.fc2.forward(R, cache ? &cache->c2[l] : nullptr);
  }

  const nn::Matrix readout = H.colwise().mean();  // 1 x hidden
  return head.forward(readout, cache ? &cache->head : nullptr);
}

nn::Matrix GinModel::logits(const Aorg& aorg, GinCache* cache) const {
  return logits(aorg.features, aorg.adjacency(config_.symmetrize), cache);
}

std::pair<int, std::array<double, 2>> GinModel::classify(const Aorg& aorg) const {
  const nn::Matrix probs = nn::softmax_rows(logits(aorg));
  const int label = probs(0, 1) > probs(0, 0) ? 1 : 0;
  return {label, {probs(0, 0), probs(0, 1)}};
}

std::pair<nn::Matrix, nn::Matrix> GinModel::backward(const nn::Matrix& dlogits,
                                                     const GinCache& cache) {
  const Eigen::Index n = cache.n_nodes;
  nn::Matrix dreadout = head.backward(dlogits, cache.head);  // 1 x hidden

  // Mean readout spreads the gradient uniformly over node rows.
  nn::Matrix dH = nn::Matrix::Zero(n, dreadout.cols());
  for (Eigen::Index i = 0; i < n; ++i) dH.row(i) = dreadout.row(0) / static_cast<double>(n);

  nn::Matrix dA = nn::Matrix::Zero(n, n);
  for (std::size_t l = layers.size(); l-- > 0;) {
    GinLayer& layer = layers[l];
    const nn::Matrix dR = layer.fc2.backward(dH, cache.c2[l]);
    const nn::Matrix dZ1 = nn::relu_backward(cache.fc1_out[l], dR);
    const nn::Matrix dM = layer.fc1.backward(dZ1, cache.c1[l]);

    const nn::Matrix& H_in = cache.inputs[l];
    layer.eps.grad(0, 0) += dM.cwiseProduct(H_in).sum();
    nn::Matrix dM_neigh = dM;
    if (config_.aggregation == Aggregation::Mean) {
      // Degrees held constant; exact gradients are a sum-mode contract.
      const nn::Vector deg = cache.A.rowwise().sum().cwiseMax(1.0);
      dM_neigh = deg.cwiseInverse().asDiagonal() * dM_neigh;
    }
    dA += dM_neigh * H_in.transpose();
    dH = (1.0 + layer.eps.value(0, 0)) * dM + cache.A.transpose() * dM_neigh;
  }
  return {dH, dA};
}

double GinModel::loss(const Aorg& aorg, int label, bool train, GraphGrads* grads) {
  GinCache cache;
  const bool need_back = train || grads != nullptr;
  const nn::Matrix lg = logits(aorg, need_back ? &cache : nullptr);
  nn::Matrix dlogits;
  const double value = nn::cross_entropy(lg, {label}, need_back ? &dlogits : nullptr);
  if (need_back) {
    if (!train) {
      // Input-space gradients only: stash and restore parameter grads.
      std::vector<nn::Matrix> saved;
      const auto refs = params();
      saved.reserve(refs.size());
      for (nn::Param* p : refs) saved.push_back(p->grad);
      auto [dF, dA] = backward(dlogits, cache);
      for (std::size_t i = 0; i < refs.size(); ++i) refs[i]->grad = std::move(saved[i]);
      if (grads) {
        grads->loss = value;
        grads->d_features = std::move(dF);
        grads->d_adjacency = std::move(dA);
      }
    } else {
      auto [dF, dA] = backward(dlogits, cache);
      if (grads) {
        grads->loss = value;
        grads->d_features = std::move(dF);
        grads->d_adjacency = std::move(dA);
      }
    }
  }
  return value;
}

Checkpoint GinModel::to_checkpoint() const {
  embed::Checkpoint ckpt;
  ckpt.scheme = "gin";
  ckpt.metadata["input_dim"] = std::to_string(config_.input_dim);
  ckpt.metadata["hidden"] = std::to_string(config_.hidden);
  ckpt.metadata["num_layers"] = std::to_string(config_.num_layers);
  ckpt.metadata["aggregation"] = config_.aggregation == Aggregation::Sum ? "sum" : "mean";
  ckpt.metadata["symmetrize"] = config_.symmetrize ? "1" : "0";
  ckpt.metadata["lr"] = std::to_string(config_.lr);
  ckpt.metadata["epochs"] = std::to_string(config_.epochs);
  ckpt.metadata["batch_size"] = std::to_string(config_.batch_size);
  ckpt.metadata["seed"] = std::to_string(config_.seed);
  GinModel& self = const_cast<GinModel&>(*this);
  for (nn::Param* p : self.params()) ckpt.add_matrix(p->name, p->value);
  return ckpt;
}

GinModel GinModel::from_checkpoint(const embed::Checkpoint& ckpt) {
  if (ckpt.scheme != "gin") throw std::runtime_error("checkpoint scheme is not gin");
  GinConfig config;
  config.input_dim = std::stoi(ckpt.meta("input_dim"));
  config.hidden = std::stoi(ckpt.meta("hidden"));
  config.num_layers = std::stoi(ckpt.meta("num_layers"));
  config.aggregation = ckpt.meta("aggregation") == "mean" ? Aggregation::Mean : Aggregation::Sum;
  config.symmetrize = ckpt.meta("symmetrize") == "1";
  config.seed = std::stoull(ckpt.meta("seed"));
  Rng rng(0);
  GinModel model(config, rng);
  for (nn::Param* p : model.params()) {
    p->value = ckpt.tensor(p->name).to_matrix();
    p->grad = nn::Matrix::Zero(p->value.rows(), p->value.cols());
  }
  return model;
}

TrainHistory train_gin(GinModel& model, const std::vector<Aorg>& samples,
                       const GinConfig& config) {
  if (samples.empty()) throw std::invalid_argument("no training samples");
  bool saw0 = false, saw1 = false;
  for (const auto& s : samples) {
    if (!s.label) throw std::invalid_argument("unlabeled sample in training set");
    (*s.label == 0 ? saw0 : saw1) = true;
  }
  if (!saw0 || !saw1) throw std::invalid_argument("training needs both classes");

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
      const Aorg& sample = samples[idx];
      const nn::Matrix lg = model.logits(sample);
      const int predicted = lg(0, 1) > lg(0, 0) ? 1 : 0;
      correct += predicted == *sample.label ? 1 : 0;
      sum_loss += model.loss(sample, *sample.label, true);
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
