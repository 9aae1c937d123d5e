#pragma once

#include "pdfgraph/nn/param.hpp"

namespace pdfgraph::nn {

// Row convention throughout: X is (n, features); Linear computes
// Y = X * W.transpose() + b with W (out, in) and b (out, 1).
//
// forward() is const and takes an optional cache so frozen models stay
// thread-safe for inference; backward() accumulates into the grads.
class Linear {
public:
  struct Cache {
    Matrix x;
  };

  Linear() = default;
  Linear(std::string name, Eigen::Index in, Eigen::Index out)
      : W(name + ".W", out, in), b(name + ".b", out, 1) {}

  Matrix forward(const Matrix& X, Cache* cache = nullptr) const {
    if (cache) cache->x = X;
    return (X * W.value.transpose()).rowwise() + b.value.col(0).transpose();
  }

  Matrix backward(const Matrix& dY, const Cache& cache) {
    W.grad += dY.transpose() * cache.x;
    b.grad.col(0) += dY.colwise().sum().transpose();
    return dY * W.value;
  }

  ParamRefs params() { return {&W, &b}; }

  Param W, b;
};

class LayerNorm {
public:
  struct Cache {
    Matrix xhat;
    Vector inv_std;
  };

  LayerNorm() = default;
  LayerNorm(std::string name, Eigen::Index dim, double eps)
      : gamma(name + ".gamma", dim, 1), beta(name + ".beta", dim, 1), eps_(eps) {
    gamma.init_constant(1.0);
  }

  Matrix forward(const Matrix& X, Cache* cache = nullptr) const;
  Matrix backward(const Matrix& dY, const Cache& cache);

  ParamRefs params() { return {&gamma, &beta}; }

  Param gamma, beta;

private:
  double eps_ = 1e-12;
};

Matrix gelu(const Matrix& X);
Matrix gelu_backward(const Matrix& X, const Matrix& dY);

Matrix relu(const Matrix& X);
Matrix relu_backward(const Matrix& X, const Matrix& dY);

// Row-wise softmax.
Matrix softmax_rows(const Matrix& logits);

// Mean cross-entropy over rows with integer targets; writes softmax-minus-
// one-hot (scaled by 1/n) into dlogits when given.
double cross_entropy(const Matrix& logits, const std::vector<int>& targets,
                     Matrix* dlogits = nullptr);

// Inverted-dropout mask application; identity when rate == 0 or !train.
Matrix dropout(const Matrix& X, double rate, bool train, Rng& rng, Matrix* mask_out);

}  // namespace pdfgraph::nn
