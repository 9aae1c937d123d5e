#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "pdfgraph/util/rng.hpp"

namespace pdfgraph::nn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// A trainable tensor with its gradient accumulator. Vectors are stored as
// n-by-1 matrices so one registry type covers everything.
struct Param {
  std::string name;
  Matrix value;
  Matrix grad;

  Param() = default;
  Param(std::string n, Eigen::Index rows, Eigen::Index cols)
      : name(std::move(n)), value(Matrix::Zero(rows, cols)), grad(Matrix::Zero(rows, cols)) {}

  void zero_grad() { grad.setZero(); }
  void init_normal(Rng& rng, double stddev) {
    for (Eigen::Index i = 0; i < value.rows(); ++i)
      for (Eigen::Index j = 0; j < value.cols(); ++j) value(i, j) = rng.normal(0.0, stddev);
  }
  void init_constant(double v) { value.setConstant(v); }
};

using ParamRefs = std::vector<Param*>;

inline void zero_grads(const ParamRefs& params) {
  for (Param* p : params) p->zero_grad();
}

}  // namespace pdfgraph::nn
