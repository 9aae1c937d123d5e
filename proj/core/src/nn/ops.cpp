#include "pdfgraph/nn/ops.hpp"

#include <cmath>
#include <stdexcept>

namespace pdfgraph::nn {

Matrix LayerNorm::forward(const Matrix& X, Cache* cache) const {
  const Eigen::Index n = X.rows(), d = X.cols();
  Matrix xhat(n, d);
  Vector inv_std(n);
  Matrix out(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mean = X.row(i).mean();
    const double var = (X.row(i).array() - mean).square().mean();
    const double inv = 1.0 / std::sqrt(var + eps_);
    inv_std(i) = inv;
    xhat.row(i) = ((X.row(i).array() - mean) * inv).matrix();
    out.row(i) = xhat.row(i).cwiseProduct(gamma.value.col(0).transpose()) +
                 beta.value.col(0).transpose();
  }
  if (cache) {
    cache->xhat = std::move(xhat);
    cache->inv_std = std::move(inv_std);
  }
  return out;
}

Matrix LayerNorm::backward(const Matrix& dY, const Cache& cache) {
  const Eigen::Index n = dY.rows(), d = dY.cols();
  Matrix dX(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto g = gamma.value.col(0).transpose().array();
    const auto dy = dY.row(i).array();
    const auto xh = cache.xhat.row(i).array();
    gamma.grad.col(0) += (dy * xh).matrix().transpose();
    beta.grad.col(0) += dY.row(i).transpose();
    const auto dxhat = dy * g;
    const double m1 = dxhat.mean();
    const double m2 = (dxhat * xh).mean();
    dX.row(i) = ((dxhat - m1 - xh * m2) * cache.inv_std(i)).matrix();
  }
  return dX;
}

Matrix gelu(const Matrix& X) {
  return X.unaryExpr([](double x) { return 0.5 * x * (1.0 + std::erf(x * M_SQRT1_2)); });
}

Matrix gelu_backward(const Matrix& X, const Matrix& dY) {
  Matrix dX = X.unaryExpr([](double x) {
    const double cdf = 0.5 * (1.0 + std::erf(x * M_SQRT1_2));
    const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
    return cdf + x * pdf;
  });
  return dX.cwiseProduct(dY);
}

Matrix relu(const Matrix& X) {
  return X.cwiseMax(0.0);
}

Matrix relu_backward(const Matrix& X, const Matrix& dY) {
  return (X.array() > 0.0).cast<double>().matrix().cwiseProduct(dY);
}

Matrix softmax_rows(const Matrix& logits) {
  Matrix out(logits.rows(), logits.cols());
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const double m = logits.row(i).maxCoeff();
    Eigen::ArrayXd e = (logits.row(i).array() - m).exp();
    out.row(i) = (e / e.sum()).matrix();
  }
  return out;
}

double cross_entropy(const Matrix& logits, const std::vector<int>& targets, Matrix* dlogits) {
  if (static_cast<std::size_t>(logits.rows()) != targets.size())
    throw std::invalid_argument("cross_entropy: row/target count mismatch");
  const double inv_n = 1.0 / static_cast<double>(logits.rows());
  const Matrix probs = softmax_rows(logits);
  double loss = 0.0;
  for (Eigen::Index i = 0; i < logits.rows(); ++i)
    loss -= std::log(std::max(probs(i, targets[static_cast<std::size_t>(i)]), 1e-300));
  loss *= inv_n;
  if (dlogits) {
    *dlogits = probs * inv_n;
    for (Eigen::Index i = 0; i < logits.rows(); ++i)
      (*dlogits)(i, targets[static_cast<std::size_t>(i)]) -= inv_n;
  }
  return loss;
}

Matrix dropout(const Matrix& X, double rate, bool train, Rng& rng, Matrix* mask_out) {
  if (!train || rate <= 0.0) {
    if (mask_out) *mask_out = Matrix::Ones(X.rows(), X.cols());
    return X;
  }
  Matrix mask(X.rows(), X.cols());
  const double keep = 1.0 - rate;
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    for (Eigen::Index j = 0; j < X.cols(); ++j)
      mask(i, j) = rng.uniform_real() < keep ? 1.0 / keep : 0.0;
  if (mask_out) *mask_out = mask;
  return X.cwiseProduct(mask);
}

}  // namespace pdfgraph::nn
