#pragma once

#include <unordered_map>

#include "pdfgraph/nn/param.hpp"

namespace pdfgraph::nn {

class Sgd {
public:
  explicit Sgd(double lr) : lr_(lr) {}
  void step(const ParamRefs& params) {
    for (Param* p : params) p->value -= lr_ * p->grad;
  }
  double lr() const { return lr_; }

private:
  double lr_;
};

// Adaptive moment estimation with optional linear warmup. State is keyed by
// parameter address; one optimizer instance per model.
class Adam {
public:
  explicit Adam(double lr, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8,
                std::size_t warmup_steps = 0)
      : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps), warmup_steps_(warmup_steps) {}

  void step(const ParamRefs& params);

  double current_lr() const;
  std::size_t steps_taken() const { return t_; }

private:
  struct Moments {
    Matrix m, v;
  };
  double lr_, beta1_, beta2_, eps_;
  std::size_t warmup_steps_;
  std::size_t t_ = 0;
  std::unordered_map<const Param*, Moments> state_;
};

}  // namespace pdfgraph::nn
