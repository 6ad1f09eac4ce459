// SPDX-FileCopyrightText: 2026 lipognn contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "lipognn/tensor.hpp"

namespace lipognn {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Standard bias-corrected Adam. Moment buffers are allocated on the first
// step and must keep matching parameter shapes afterwards.
class Adam {
 public:
  explicit Adam(AdamConfig config = {}) : config_(config) {}

  void step(const std::vector<Matrix*>& params,
            const std::vector<Matrix>& grads) {
    if (params.size() != grads.size()) {
      throw ShapeMismatch("adam: parameter/gradient count mismatch");
    }
    if (m_.empty()) {
      for (const Matrix* p : params) {
        m_.push_back(Matrix::Zero(p->rows(), p->cols()));
        v_.push_back(Matrix::Zero(p->rows(), p->cols()));
      }
    }
    ++t_;
    const double bc1 = 1.0 - std::pow(config_.beta1, t_);
    const double bc2 = 1.0 - std::pow(config_.beta2, t_);
    for (std::size_t i = 0; i < params.size(); ++i) {
      Matrix& p = *params[i];
      const Matrix& g = grads[i];
      if (p.rows() != g.rows() || p.cols() != g.cols()) {
        throw ShapeMismatch("adam: gradient shape mismatch at parameter " +
                            std::to_string(i));
      }
      m_[i] = config_.beta1 * m_[i] + (1.0 - config_.beta1) * g;
      v_[i] = config_.beta2 * v_[i] +
              (1.0 - config_.beta2) * g.cwiseProduct(g);
      p.array() -= config_.learning_rate * (m_[i].array() / bc1) /
                   ((v_[i].array() / bc2).sqrt() + config_.epsilon);
      if (!p.allFinite()) {
        throw NonFiniteValue("adam produced a non-finite parameter");
      }
    }
  }

  long steps() const { return t_; }

 private:
  AdamConfig config_;
  std::vector<Matrix> m_, v_;
  long t_ = 0;
};

}  // namespace lipognn
