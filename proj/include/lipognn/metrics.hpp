// SPDX-FileCopyrightText: 2026 lipognn contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "lipognn/error.hpp"

// Eager (no-tape) metrics used for validation, early stopping and test
// reporting. The masked multitask form mirrors the differentiable training
// loss exactly, so history values are directly comparable.

namespace lipognn {

inline double rmse(const Eigen::VectorXd& preds,
                   const Eigen::VectorXd& targets) {
  if (preds.size() == 0 || preds.size() != targets.size()) {
    throw DataError(DataErrorKind::EmptyBatch,
                    "rmse needs equal nonzero lengths");
  }
  return std::sqrt((preds - targets).squaredNorm() /
                   static_cast<double>(preds.size()));
}

// Per-task RMSE over present entries (mask 1 = present), averaged over the
// tasks that have at least one present entry.
inline double masked_multitask_loss(const Eigen::MatrixXd& preds,
                                    const Eigen::MatrixXd& targets,
                                    const Eigen::MatrixXd& mask) {
  if (preds.rows() == 0) {
    throw DataError(DataErrorKind::EmptyBatch, "loss needs >= 1 row");
  }
  if (preds.rows() != targets.rows() || preds.cols() != targets.cols() ||
      mask.rows() != preds.rows() || mask.cols() != preds.cols()) {
    throw ShapeMismatch("loss: preds/targets/mask shapes differ");
  }
  double total = 0.0;
  int active = 0;
  for (Eigen::Index t = 0; t < preds.cols(); ++t) {
    const double count = mask.col(t).sum();
    if (count == 0.0) continue;
    const double sq = ((preds.col(t) - targets.col(t)).array().square() *
                       mask.col(t).array())
                          .sum();
    total += std::sqrt(sq / count);
    ++active;
  }
  if (active == 0) {
    throw DataError(DataErrorKind::NoLabels, "mask selects no entries");
  }
  return total / active;
}

inline double pearson(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() < 2 || x.size() != y.size()) {
    throw DataError(DataErrorKind::EmptyBatch,
                    "pearson needs equal lengths >= 2");
  }
  const Eigen::VectorXd xc = x.array() - x.mean();
  const Eigen::VectorXd yc = y.array() - y.mean();
  const double sx = xc.squaredNorm();
  const double sy = yc.squaredNorm();
  if (sx == 0.0 || sy == 0.0) {
    throw DataError(DataErrorKind::ZeroVariance,
                    "pearson undefined for a constant series");
  }
  return xc.dot(yc) / std::sqrt(sx * sy);
}

// Coefficient of determination, 1 - SS_res/SS_tot about the target mean.
inline double r2(const Eigen::VectorXd& preds,
                 const Eigen::VectorXd& targets) {
  if (preds.size() < 2 || preds.size() != targets.size()) {
    throw DataError(DataErrorKind::EmptyBatch, "r2 needs lengths >= 2");
  }
  const double ss_tot =
      (targets.array() - targets.mean()).square().sum();
  if (ss_tot == 0.0) {
    throw DataError(DataErrorKind::ZeroVariance,
                    "r2 undefined for constant targets");
  }
  const double ss_res = (preds - targets).squaredNorm();
  return 1.0 - ss_res / ss_tot;
}

}  // namespace lipognn
