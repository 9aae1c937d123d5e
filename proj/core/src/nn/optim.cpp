#include "pdfgraph/nn/optim.hpp"

#include <cmath>

namespace pdfgraph::nn {

double Adam::current_lr() const {
  if (warmup_steps_ == 0 || t_ >= warmup_steps_) return lr_;
  return lr_ * static_cast<double>(t_) / static_cast<double>(warmup_steps_);
}

void Adam::step(const ParamRefs& params) {
  ++t_;
  const double alpha = current_lr();
  const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (Param* p : params) {
    auto& mom = state_[p];
    if (mom.m.size() == 0) {
      mom.m = Matrix::Zero(p->value.rows(), p->value.cols());
      mom.v = Matrix::Zero(p->value.rows(), p->value.cols());
    }
    mom.m = beta1_ * mom.m + (1.0 - beta1_) * p->grad;
    mom.v = beta2_ * mom.v + (1.0 - beta2_) * p->grad.cwiseProduct(p->grad);
    const Matrix mhat = mom.m / bc1;
    const Matrix vhat = mom.v / bc2;
    p->value -= alpha * mhat.cwiseQuotient(
                            vhat.cwiseSqrt() + Matrix::Constant(vhat.rows(), vhat.cols(), eps_));
  }
}

}  // namespace pdfgraph::nn
