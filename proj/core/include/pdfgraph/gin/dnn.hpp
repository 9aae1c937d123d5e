#pragma once

#include <array>
#include <vector>

#include "pdfgraph/embed/checkpoint.hpp"
#include "pdfgraph/gin/aorg.hpp"
#include "pdfgraph/gin/model.hpp"
#include "pdfgraph/nn/ops.hpp"

namespace pdfgraph::gin {

struct DnnConfig {
  int input_dim = 0;
  int hidden = 200;  // two hidden layers of 200 ReLU units
  double lr = 0.01;
  int batch_size = 64;
  int epochs = 50;
  std::uint64_t seed = 1;
};

// Structure-free ablation: graphs collapse to the unweighted mean of their
// node features before classification.
class DnnBaseline {
public:
  DnnBaseline() = default;
  DnnBaseline(DnnConfig config, Rng& init_rng);

  const DnnConfig& config() const { return config_; }

  static nn::Matrix pooled_input(const Aorg& aorg);  // 1 x dim

  nn::Matrix logits(const nn::Matrix& pooled, struct DnnCache* cache = nullptr) const;
  std::pair<int, std::array<double, 2>> classify(const Aorg& aorg) const;
  double loss(const nn::Matrix& pooled, int label, bool train);

  nn::ParamRefs params();

  embed::Checkpoint to_checkpoint() const;
  static DnnBaseline from_checkpoint(const embed::Checkpoint& ckpt);

  nn::Linear l1, l2, l3;

private:
  DnnConfig config_;
};

struct DnnCache {
  nn::Linear::Cache c1, c2, c3;
  nn::Matrix z1, z2;
};

TrainHistory train_dnn(DnnBaseline& model, const std::vector<Aorg>& samples,
                       const DnnConfig& config);

}  // namespace pdfgraph::gin
