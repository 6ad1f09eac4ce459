// SPDX-FileCopyrightText: 2026 lipognn contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "lipognn/canonical.hpp"
#include "lipognn/dataset.hpp"
#include "lipognn/metrics.hpp"
#include "lipognn/model.hpp"
#include "lipognn/optimizer.hpp"
#include "lipognn/ring_perception.hpp"

// Mini-batch Adam over the masked multitask loss with early stopping on
// validation loss. All randomness (shuffling) derives from config.seed, so
// a repeated run reproduces its history bit-for-bit on one platform.

namespace lipognn {

// Featurized molecules aligned with Dataset::samples, shared across folds.
struct PreparedData {
  std::vector<MolInput> inputs;
  std::vector<char> symmetric;  // canonical-rank symmetry flag per sample
};

inline PreparedData prepare_inputs(const Dataset& data,
                                   const Config& config) {
  PreparedData prepared;
  prepared.inputs.reserve(data.samples.size());
  prepared.symmetric.reserve(data.samples.size());
  for (const Sample& s : data.samples) {
    MolGraph mol = mol_from_smiles(s.smiles);
    prepared.inputs.push_back(featurize_molecule(mol, config));
    prepared.symmetric.push_back(is_symmetric(mol) ? 1 : 0);
  }
  return prepared;
}

// Target matrix (0 where absent) and 0/1 mask for the selected tasks.
inline std::pair<Matrix, Matrix> build_targets(
    const Dataset& data, const std::vector<int>& indices,
    const std::vector<std::string>& tasks) {
  Matrix targets = Matrix::Zero(static_cast<Eigen::Index>(indices.size()),
                                static_cast<Eigen::Index>(tasks.size()));
  Matrix mask = targets;
  for (std::size_t r = 0; r < indices.size(); ++r) {
    const Sample& s = data.samples[indices[r]];
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      if (const auto& label = s.label(tasks[t])) {
        targets(r, t) = *label;
        mask(r, t) = 1.0;
      }
    }
  }
  return {targets, mask};
}

struct EpochStats {
  int epoch = 0;      // 1-based
  double train_loss = std::numeric_limits<double>::quiet_NaN();
  double val_loss = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> val_task_rmse;  // NaN for tasks absent from the split
};

struct TrainOptions {
  std::vector<std::string> tasks = {kTaskLogP};
  std::function<void(const EpochStats&)> on_epoch;
  // Stop once train loss drops to this value (< 0 disables); used by
  // overfitting sanity checks.
  double stop_at_train_loss = -1.0;
};

struct TrainResult {
  ModelParams params;  // best-validation weights (final weights if no val)
  StandardScaler scaler;
  std::vector<EpochStats> history;
  int best_epoch = 0;  // 1-based; 0 when no validation was run
  double best_val_loss = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

inline std::vector<double> per_task_rmse(const Matrix& preds,
                                         const Matrix& targets,
                                         const Matrix& mask) {
  std::vector<double> out(preds.cols(),
                          std::numeric_limits<double>::quiet_NaN());
  for (Eigen::Index t = 0; t < preds.cols(); ++t) {
    const double count = mask.col(t).sum();
    if (count == 0.0) continue;
    const double sq = ((preds.col(t) - targets.col(t)).array().square() *
                       mask.col(t).array())
                          .sum();
    out[t] = std::sqrt(sq / count);
  }
  return out;
}

// Keep only indices that carry at least one label for the chosen tasks;
// fully unlabeled rows contribute nothing to the masked loss.
inline std::vector<int> labeled_only(const Dataset& data,
                                     const std::vector<int>& indices,
                                     const std::vector<std::string>& tasks) {
  std::vector<int> kept;
  kept.reserve(indices.size());
  for (int i : indices) {
    for (const std::string& task : tasks) {
      if (data.samples[i].label(task)) {
        kept.push_back(i);
        break;
      }
    }
  }
  return kept;
}

}  // namespace detail

inline TrainResult train_model(const Dataset& data,
                               const PreparedData& prepared,
                               const std::vector<int>& train_indices,
                               const std::vector<int>& val_indices,
                               const Config& config,
                               const TrainOptions& options = {}) {
  config.validate();
  if (static_cast<int>(options.tasks.size()) != config.n_tasks) {
    throw Error("train: tasks list must match config.n_tasks");
  }
  const std::vector<int> train_idx =
      detail::labeled_only(data, train_indices, options.tasks);
  const std::vector<int> val_idx =
      detail::labeled_only(data, val_indices, options.tasks);
  if (train_idx.empty()) {
    throw DataError(DataErrorKind::NoLabels,
                    "no training sample carries a label for the tasks");
  }

  TrainResult result;
  result.params = ModelParams::init(config);

  // Descriptor statistics come from the training split only.
  if (config.use_global_descriptors) {
    Matrix train_descriptors(static_cast<Eigen::Index>(train_idx.size()),
                             kGlobalDescriptorDim);
    for (std::size_t r = 0; r < train_idx.size(); ++r) {
      train_descriptors.row(r) = prepared.inputs[train_idx[r]].descriptors_raw;
    }
    result.scaler = StandardScaler::fit(train_descriptors);
  } else {
    result.scaler = StandardScaler::identity(kGlobalDescriptorDim);
  }

  auto [train_targets, train_mask] =
      build_targets(data, train_idx, options.tasks);
  auto [val_targets, val_mask] = build_targets(data, val_idx, options.tasks);
  std::vector<MolInput> val_inputs;
  val_inputs.reserve(val_idx.size());
  for (int i : val_idx) val_inputs.push_back(prepared.inputs[i]);

  Adam adam({config.learning_rate});
  Xoshiro256 shuffle_rng(config.seed ^ 0x747261696e5f5f31ULL);
  std::vector<int> order(train_idx.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);

  double best_val = std::numeric_limits<double>::infinity();
  ModelParams best_params = result.params;
  int epochs_since_best = 0;

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    shuffle(order, shuffle_rng);
    double loss_sum = 0.0;
    int batches = 0;
    for (std::size_t start = 0; start < order.size();
         start += config.batch_size) {
      const std::size_t end =
          std::min(order.size(), start + config.batch_size);
      std::vector<const MolInput*> batch;
      Matrix targets(static_cast<Eigen::Index>(end - start), config.n_tasks);
      Matrix mask(static_cast<Eigen::Index>(end - start), config.n_tasks);
      for (std::size_t r = start; r < end; ++r) {
        batch.push_back(&prepared.inputs[train_idx[order[r]]]);
        targets.row(r - start) = train_targets.row(order[r]);
        mask.row(r - start) = train_mask.row(order[r]);
      }
      try {
        Tape tape;
        ModelVars vars = load_params(tape, result.params, true);
        int loss = build_batch_loss(tape, batch, targets, mask, vars, config,
                                    result.scaler);
        loss_sum += tape.scalar(loss);
        ++batches;
        tape.backward(loss);
        std::vector<Matrix> grads = collect_grads(tape, vars, config);
        adam.step(result.params.trainable(), grads);
      } catch (const NonFiniteValue& e) {
        throw NonFiniteValue("training diverged at epoch " +
                             std::to_string(epoch) + ", batch " +
                             std::to_string(batches + 1) + ": " + e.what());
      }
    }

    EpochStats stats;
    stats.epoch = epoch;
    stats.train_loss = batches > 0 ? loss_sum / batches : 0.0;

    if (!val_idx.empty()) {
      Matrix val_preds =
          predict(val_inputs, result.params, config, result.scaler);
      stats.val_loss = masked_multitask_loss(val_preds, val_targets, val_mask);
      stats.val_task_rmse =
          detail::per_task_rmse(val_preds, val_targets, val_mask);
      if (stats.val_loss < best_val) {
        best_val = stats.val_loss;
        best_params = result.params;
        result.best_epoch = epoch;
        epochs_since_best = 0;
      } else {
        ++epochs_since_best;
      }
    }

    result.history.push_back(stats);
    if (options.on_epoch) options.on_epoch(stats);

    if (options.stop_at_train_loss >= 0.0 &&
        stats.train_loss <= options.stop_at_train_loss) {
      break;
    }
    if (!val_idx.empty() && epochs_since_best >= config.patience) break;
  }

  if (!val_idx.empty() && result.best_epoch > 0) {
    result.params = best_params;
    result.best_val_loss = best_val;
  }
  return result;
}

}  // namespace lipognn
