// SPDX-FileCopyrightText: 2026 lipognn contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "lipognn/error.hpp"

// Reverse-mode automatic differentiation over dense 64-bit matrices
// (rank <= 2; vectors are 1-row or 1-column matrices, scalars 1x1). A Tape
// owns every intermediate value in creation order, which is already a
// topological order, so the backward sweep is a single reverse loop. Every
// op validates shapes and rejects non-finite results at the point they
// appear, not epochs later.

namespace lipognn {

using Matrix = Eigen::MatrixXd;

class Tape {
 public:
  // Leaf that gradients are accumulated into (parameters, probed inputs).
  int leaf(Matrix value) { return push(std::move(value), true, OpKind::Leaf); }

  // Leaf treated as fixed data (features, adjacency, targets, masks).
  int constant(Matrix value) {
    return push(std::move(value), false, OpKind::Leaf);
  }

  int matmul(int a, int b) {
    const Matrix& va = value(a);
    const Matrix& vb = value(b);
    if (va.cols() != vb.rows()) {
      throw ShapeMismatch("matmul: " + dims(va) + " x " + dims(vb));
    }
    return push(va * vb, needs_grad(a, b), OpKind::MatMul, {a, b});
  }

  // Same-shape addition, or row-broadcast when b is a single row (bias).
  int add(int a, int b) {
    const Matrix& va = value(a);
    const Matrix& vb = value(b);
    if (va.rows() == vb.rows() && va.cols() == vb.cols()) {
      return push(va + vb, needs_grad(a, b), OpKind::Add, {a, b});
    }
    if (vb.rows() == 1 && va.cols() == vb.cols()) {
      return push(va.rowwise() + vb.row(0), needs_grad(a, b),
                  OpKind::AddRowBroadcast, {a, b});
    }
    throw ShapeMismatch("add: " + dims(va) + " + " + dims(vb));
  }

  int sub(int a, int b) {
    require_same_shape("sub", a, b);
    return push(value(a) - value(b), needs_grad(a, b), OpKind::Sub, {a, b});
  }

  int mul(int a, int b) {
    require_same_shape("mul", a, b);
    return push(value(a).cwiseProduct(value(b)), needs_grad(a, b),
                OpKind::Mul, {a, b});
  }

  int relu(int a) {
    return push(value(a).cwiseMax(0.0), nodes_[a].requires_grad,
                OpKind::Relu, {a});
  }

  int concat_cols(const std::vector<int>& parts) {
    if (parts.empty()) throw ShapeMismatch("concat_cols: no inputs");
    Eigen::Index rows = value(parts[0]).rows(), cols = 0;
    bool grad = false;
    for (int p : parts) {
      if (value(p).rows() != rows) {
        throw ShapeMismatch("concat_cols: row counts differ");
      }
      cols += value(p).cols();
      grad = grad || nodes_[p].requires_grad;
    }
    Matrix out(rows, cols);
    Eigen::Index at = 0;
    for (int p : parts) {
      out.middleCols(at, value(p).cols()) = value(p);
      at += value(p).cols();
    }
    return push(std::move(out), grad, OpKind::ConcatCols, parts);
  }

  int stack_rows(const std::vector<int>& parts) {
    if (parts.empty()) throw ShapeMismatch("stack_rows: no inputs");
    Eigen::Index cols = value(parts[0]).cols(), rows = 0;
    bool grad = false;
    for (int p : parts) {
      if (value(p).cols() != cols) {
        throw ShapeMismatch("stack_rows: column counts differ");
      }
      rows += value(p).rows();
      grad = grad || nodes_[p].requires_grad;
    }
    Matrix out(rows, cols);
    Eigen::Index at = 0;
    for (int p : parts) {
      out.middleRows(at, value(p).rows()) = value(p);
      at += value(p).rows();
    }
    return push(std::move(out), grad, OpKind::StackRows, parts);
  }

  int mean_rows(int a) {
    if (value(a).rows() == 0) throw ShapeMismatch("mean_rows: zero rows");
    Matrix out = value(a).colwise().mean();
    return push(std::move(out), nodes_[a].requires_grad, OpKind::MeanRows,
                {a});
  }

  int sum_rows(int a) {
    Matrix out = value(a).colwise().sum();
    return push(std::move(out), nodes_[a].requires_grad, OpKind::SumRows,
                {a});
  }

  int sum_all(int a) {
    Matrix out(1, 1);
    out(0, 0) = value(a).sum();
    return push(std::move(out), nodes_[a].requires_grad, OpKind::SumAll, {a});
  }

  int square(int a) {
    return push(value(a).array().square().matrix(), nodes_[a].requires_grad,
                OpKind::Square, {a});
  }

  int sqrt(int a) {
    if ((value(a).array() < 0.0).any()) {
      throw NonFiniteValue("sqrt of a negative value");
    }
    return push(value(a).array().sqrt().matrix(), nodes_[a].requires_grad,
                OpKind::Sqrt, {a});
  }

  int scale(int a, double factor) {
    int id = push(value(a) * factor, nodes_[a].requires_grad, OpKind::Scale,
                  {a});
    nodes_[id].factor = factor;
    return id;
  }

  const Matrix& value(int id) const { return nodes_.at(id).value; }

  double scalar(int id) const {
    const Matrix& v = value(id);
    if (v.rows() != 1 || v.cols() != 1) {
      throw ShapeMismatch("scalar: value is " + dims(v));
    }
    return v(0, 0);
  }

  // Zero unless backward() ran and the node requires a gradient.
  const Matrix& grad(int id) const {
    const Node& node = nodes_.at(id);
    if (node.grad.size() == 0) {
      static const Matrix empty;
      return empty;
    }
    return node.grad;
  }

  // Reverse sweep from a 1x1 root. Each node is visited exactly once, in
  // reverse creation order; gradients accumulate into every requires_grad
  // node reachable from the root.
  void backward(int root) {
    if (value(root).rows() != 1 || value(root).cols() != 1) {
      throw ShapeMismatch("backward: root must be a scalar, got " +
                          dims(value(root)));
    }
    for (Node& node : nodes_) {
      if (node.requires_grad) {
        node.grad = Matrix::Zero(node.value.rows(), node.value.cols());
      }
    }
    if (!nodes_[root].requires_grad) return;  // constant graph
    nodes_[root].grad(0, 0) = 1.0;
    for (int id = root; id >= 0; --id) {
      Node& node = nodes_[id];
      if (!node.requires_grad || node.grad.size() == 0) continue;
      if (!node.grad.allFinite()) {
        throw NonFiniteValue("non-finite gradient at op " +
                             std::string(op_name(node.op)));
      }
      propagate(node);
    }
  }

  int size() const { return static_cast<int>(nodes_.size()); }

 private:
  enum class OpKind {
    Leaf,
    MatMul,
    Add,
    AddRowBroadcast,
    Sub,
    Mul,
    Relu,
    ConcatCols,
    StackRows,
    MeanRows,
    SumRows,
    SumAll,
    Square,
    Sqrt,
    Scale,
  };

  struct Node {
    OpKind op;
    std::vector<int> inputs;
    Matrix value;
    Matrix grad;  // empty until backward
    bool requires_grad;
    double factor = 1.0;  // Scale only
  };

  static std::string dims(const Matrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
  }

  static const char* op_name(OpKind op) {
    switch (op) {
      case OpKind::Leaf: return "leaf";
      case OpKind::MatMul: return "matmul";
      case OpKind::Add: return "add";
      case OpKind::AddRowBroadcast: return "add(bias)";
      case OpKind::Sub: return "sub";
      case OpKind::Mul: return "mul";
      case OpKind::Relu: return "relu";
      case OpKind::ConcatCols: return "concat_cols";
      case OpKind::StackRows: return "stack_rows";
      case OpKind::MeanRows: return "mean_rows";
      case OpKind::SumRows: return "sum_rows";
      case OpKind::SumAll: return "sum_all";
      case OpKind::Square: return "square";
      case OpKind::Sqrt: return "sqrt";
      case OpKind::Scale: return "scale";
    }
    return "?";
  }

  bool needs_grad(int a, int b) const {
    return nodes_[a].requires_grad || nodes_[b].requires_grad;
  }

  void require_same_shape(const char* op, int a, int b) const {
    const Matrix& va = value(a);
    const Matrix& vb = value(b);
    if (va.rows() != vb.rows() || va.cols() != vb.cols()) {
      throw ShapeMismatch(std::string(op) + ": " + dims(va) + " vs " +
                          dims(vb));
    }
  }

  int push(Matrix value, bool requires_grad, OpKind op,
           std::vector<int> inputs = {}) {
    if (!value.allFinite()) {
      throw NonFiniteValue("non-finite value produced by op " +
                           std::string(op_name(op)));
    }
    nodes_.push_back(Node{op, std::move(inputs), std::move(value), Matrix(),
                          requires_grad});
    return static_cast<int>(nodes_.size()) - 1;
  }

  // Adds this node's gradient contribution to each differentiable input.
  void propagate(const Node& node) {
    const Matrix& g = node.grad;
    auto into = [&](int input) -> Matrix* {
      return nodes_[input].requires_grad ? &nodes_[input].grad : nullptr;
    };
    switch (node.op) {
      case OpKind::Leaf:
        return;
      case OpKind::MatMul: {
        const Matrix& a = value(node.inputs[0]);
        const Matrix& b = value(node.inputs[1]);
        if (Matrix* ga = into(node.inputs[0])) *ga += g * b.transpose();
        if (Matrix* gb = into(node.inputs[1])) *gb += a.transpose() * g;
        return;
      }
      case OpKind::Add: {
        if (Matrix* ga = into(node.inputs[0])) *ga += g;
        if (Matrix* gb = into(node.inputs[1])) *gb += g;
        return;
      }
      case OpKind::AddRowBroadcast: {
        if (Matrix* ga = into(node.inputs[0])) *ga += g;
        if (Matrix* gb = into(node.inputs[1])) *gb += g.colwise().sum();
        return;
      }
      case OpKind::Sub: {
        if (Matrix* ga = into(node.inputs[0])) *ga += g;
        if (Matrix* gb = into(node.inputs[1])) *gb -= g;
        return;
      }
      case OpKind::Mul: {
        const Matrix& a = value(node.inputs[0]);
        const Matrix& b = value(node.inputs[1]);
        if (Matrix* ga = into(node.inputs[0])) *ga += g.cwiseProduct(b);
        if (Matrix* gb = into(node.inputs[1])) *gb += g.cwiseProduct(a);
        return;
      }
      case OpKind::Relu: {
        if (Matrix* ga = into(node.inputs[0])) {
          const Matrix& a = value(node.inputs[0]);
          *ga += (a.array() > 0.0).select(g, Matrix::Zero(g.rows(), g.cols()));
        }
        return;
      }
      case OpKind::ConcatCols: {
        Eigen::Index at = 0;
        for (int input : node.inputs) {
          Eigen::Index width = value(input).cols();
          if (Matrix* gi = into(input)) *gi += g.middleCols(at, width);
          at += width;
        }
        return;
      }
      case OpKind::StackRows: {
        Eigen::Index at = 0;
        for (int input : node.inputs) {
          Eigen::Index height = value(input).rows();
          if (Matrix* gi = into(input)) *gi += g.middleRows(at, height);
          at += height;
        }
        return;
      }
      case OpKind::MeanRows: {
        if (Matrix* ga = into(node.inputs[0])) {
          double inv = 1.0 / static_cast<double>(value(node.inputs[0]).rows());
          *ga += (g * inv).replicate(value(node.inputs[0]).rows(), 1);
        }
        return;
      }
      case OpKind::SumRows: {
        if (Matrix* ga = into(node.inputs[0])) {
          *ga += g.replicate(value(node.inputs[0]).rows(), 1);
        }
        return;
      }
      case OpKind::SumAll: {
        if (Matrix* ga = into(node.inputs[0])) {
          ga->array() += g(0, 0);
        }
        return;
      }
      case OpKind::Square: {
        if (Matrix* ga = into(node.inputs[0])) {
          *ga += 2.0 * g.cwiseProduct(value(node.inputs[0]));
        }
        return;
      }
      case OpKind::Sqrt: {
        if (Matrix* ga = into(node.inputs[0])) {
          // d sqrt(x) = 1 / (2 sqrt(x)); node.value already holds sqrt(x)
          *ga += (g.array() * 0.5 / node.value.array()).matrix();
        }
        return;
      }
      case OpKind::Scale: {
        if (Matrix* ga = into(node.inputs[0])) *ga += g * node.factor;
        return;
      }
    }
  }

  std::vector<Node> nodes_;
};

// Max relative error between tape gradients and central finite differences,
// taken over every element of every parameter. `build` reconstructs the
// scalar loss from the parameters' current values; it is re-run twice per
// element for the probes, so keep it cheap.
inline double grad_check(
    const std::vector<Matrix*>& params,
    const std::function<int(Tape&, const std::vector<int>&)>& build,
    double h = 1e-5) {
  auto evaluate = [&]() {
    Tape tape;
    std::vector<int> vars;
    vars.reserve(params.size());
    for (Matrix* p : params) vars.push_back(tape.constant(*p));
    return tape.scalar(build(tape, vars));
  };

  Tape tape;
  std::vector<int> vars;
  vars.reserve(params.size());
  for (Matrix* p : params) vars.push_back(tape.leaf(*p));
  int loss = build(tape, vars);
  tape.backward(loss);
  std::vector<Matrix> analytic;
  analytic.reserve(vars.size());
  for (int v : vars) analytic.push_back(tape.grad(v));

  double max_rel = 0.0;
  for (std::size_t p = 0; p < params.size(); ++p) {
    Matrix& param = *params[p];
    for (Eigen::Index i = 0; i < param.rows(); ++i) {
      for (Eigen::Index j = 0; j < param.cols(); ++j) {
        const double original = param(i, j);
        param(i, j) = original + h;
        const double f_plus = evaluate();
        param(i, j) = original - h;
        const double f_minus = evaluate();
        param(i, j) = original;
        const double fd = (f_plus - f_minus) / (2.0 * h);
        const double g = analytic[p](i, j);
        const double rel = std::abs(g - fd) /
                           std::max({1.0, std::abs(g), std::abs(fd)});
        max_rel = std::max(max_rel, rel);
      }
    }
  }
  return max_rel;
}

}  // namespace lipognn
