#pragma once

#include <utility>
#include <vector>

#include "pdfgraph/embed/checkpoint.hpp"
#include "pdfgraph/gin/aorg.hpp"
#include "pdfgraph/nn/ops.hpp"

namespace pdfgraph::gin {

enum class Aggregation { Sum, Mean };

struct GinConfig {
  int input_dim = 0;
  int hidden = 256;
  int num_layers = 2;
  Aggregation aggregation = Aggregation::Sum;  // per the update formula
  bool symmetrize = true;                      // directed mode behind this flag
  double lr = 0.01;
  int batch_size = 64;
  int epochs = 50;
  std::uint64_t seed = 1;
  int dense_pair_cap = 512;  // edge-gradient enumeration limit
};

// h' = MLP((1+eps) * h_v + sum_{u in N(v)} h_u); eps learnable, init 0;
// MLP is Linear-ReLU-Linear at hidden width 256.
struct GinLayer {
  GinLayer() = default;
  GinLayer(const GinConfig& config, int index, int in_dim);

  nn::Param eps;
  nn::Linear fc1, fc2;
};

struct GinCache {
  nn::Matrix A;
  std::vector<nn::Matrix> inputs;    // H per layer
  std::vector<nn::Matrix> pre_mlp;   // M per layer
  std::vector<nn::Matrix> fc1_out;   // pre-ReLU
  std::vector<nn::Linear::Cache> c1, c2;
  nn::Linear::Cache head;
  Eigen::Index n_nodes = 0;
};

struct GraphGrads {
  double loss = 0.0;
  nn::Matrix d_features;
  nn::Matrix d_adjacency;
};

class GinModel {
public:
  GinModel() = default;
  GinModel(GinConfig config, Rng& init_rng);

  const GinConfig& config() const { return config_; }

  // Forward with explicit adjacency weights (attacks treat them as
  // continuous). Returns 1x2 logits.
  nn::Matrix logits(const nn::Matrix& features, const nn::Matrix& adjacency,
                    GinCache* cache = nullptr) const;
  nn::Matrix logits(const Aorg& aorg, GinCache* cache = nullptr) const;

  std::pair<int, std::array<double, 2>> classify(const Aorg& aorg) const;

  // Cross-entropy of the true label plus gradients wrt parameters (when
  // train), input features, and adjacency weights.
  double loss(const Aorg& aorg, int label, bool train, GraphGrads* grads = nullptr);

  nn::ParamRefs params();

  embed::Checkpoint to_checkpoint() const;
  static GinModel from_checkpoint(const embed::Checkpoint& ckpt);

  std::vector<GinLayer> layers;
  nn::Linear head;

private:
  std::pair<nn::Matrix, nn::Matrix> backward(const nn::Matrix& dlogits, const GinCache& cache);
  GinConfig config_;
};

struct TrainHistory {
  std::vector<double> epoch_loss;
  std::vector<double> epoch_accuracy;
};

// Mini-batch training, cross-entropy over the two classes, adaptive-moment
// optimizer at lr 0.01. Throws on a single-class dataset.
TrainHistory train_gin(GinModel& model, const std::vector<Aorg>& samples,
                       const GinConfig& config);

}  // namespace pdfgraph::gin
