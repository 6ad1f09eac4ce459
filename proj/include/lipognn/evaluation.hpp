// SPDX-FileCopyrightText: 2026 lipognn contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lipognn/digest.hpp"
#include "lipognn/metrics.hpp"
#include "lipognn/training.hpp"

// Test-set reporting: per-task RMSE/R²/Pearson plus a breakdown by the
// canonical-rank symmetry flag (symmetric molecules are the hard stratum
// for graph models — equivalent atoms give the encoder less to work with).

namespace lipognn {

struct StratumMetrics {
  int n = 0;
  std::optional<double> rmse;  // null when the stratum is empty
};

struct TaskEval {
  std::string task;
  int n = 0;
  std::optional<double> rmse;
  std::optional<double> r2;       // null when n < 2 or targets constant
  std::optional<double> pearson;  // null when degenerate, as above
  StratumMetrics symmetric;
  StratumMetrics asymmetric;
};

struct EvalReport {
  std::vector<TaskEval> tasks;
  std::uint64_t seed = 0;
  std::string config_digest;

  nlohmann::json to_json() const {
    auto opt = [](const std::optional<double>& v) {
      return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    nlohmann::json tasks_json = nlohmann::json::object();
    for (const TaskEval& t : tasks) {
      tasks_json[t.task] = {
          {"n", t.n},
          {"rmse", opt(t.rmse)},
          {"r2", opt(t.r2)},
          {"pearson", opt(t.pearson)},
          {"symmetric",
           {{"n", t.symmetric.n}, {"rmse", opt(t.symmetric.rmse)}}},
          {"asymmetric",
           {{"n", t.asymmetric.n}, {"rmse", opt(t.asymmetric.rmse)}}},
      };
    }
    return {{"seed", seed},
            {"config_digest", config_digest},
            {"tasks", tasks_json}};
  }
};

// One per-molecule output row for the optional predictions CSV.
struct PredictionRow {
  std::string smiles;
  bool symmetric = false;
  std::optional<double> true_logp, pred_logp, true_logd, pred_logd;
};

inline std::string config_digest(const Config& config) {
  return hex_digest(fnv1a64(nlohmann::json(config).dump()));
}

namespace detail {

inline std::optional<double> guarded_r2(const Eigen::VectorXd& p,
                                        const Eigen::VectorXd& t) {
  try {
    return r2(p, t);
  } catch (const DataError&) {
    return std::nullopt;
  }
}

inline std::optional<double> guarded_pearson(const Eigen::VectorXd& p,
                                             const Eigen::VectorXd& t) {
  try {
    return pearson(p, t);
  } catch (const DataError&) {
    return std::nullopt;
  }
}

}  // namespace detail

// Evaluate `indices` of `data` and break metrics down by symmetry. An
// empty stratum reports n=0 with null metrics rather than failing.
inline EvalReport stratified_eval(const Dataset& data,
                                  const PreparedData& prepared,
                                  const std::vector<int>& indices,
                                  const ModelParams& params,
                                  const Config& config,
                                  const StandardScaler& scaler,
                                  const std::vector<std::string>& tasks,
                                  std::vector<PredictionRow>* rows = nullptr) {
  std::vector<MolInput> inputs;
  inputs.reserve(indices.size());
  for (int i : indices) inputs.push_back(prepared.inputs[i]);
  Matrix preds = predict(inputs, params, config, scaler);

  if (rows) {
    rows->clear();
    for (std::size_t r = 0; r < indices.size(); ++r) {
      const Sample& s = data.samples[indices[r]];
      PredictionRow row;
      row.smiles = s.smiles;
      row.symmetric = prepared.symmetric[indices[r]] != 0;
      row.true_logp = s.logp;
      row.true_logd = s.logd;
      for (std::size_t t = 0; t < tasks.size(); ++t) {
        (tasks[t] == kTaskLogP ? row.pred_logp : row.pred_logd) = preds(r, t);
      }
      rows->push_back(std::move(row));
    }
  }

  EvalReport report;
  report.seed = config.seed;
  report.config_digest = config_digest(config);

  for (std::size_t t = 0; t < tasks.size(); ++t) {
    TaskEval eval;
    eval.task = tasks[t];
    std::vector<double> p_all, y_all, p_sym, y_sym, p_asym, y_asym;
    for (std::size_t r = 0; r < indices.size(); ++r) {
      const auto& label = data.samples[indices[r]].label(tasks[t]);
      if (!label) continue;
      p_all.push_back(preds(r, t));
      y_all.push_back(*label);
      if (prepared.symmetric[indices[r]]) {
        p_sym.push_back(preds(r, t));
        y_sym.push_back(*label);
      } else {
        p_asym.push_back(preds(r, t));
        y_asym.push_back(*label);
      }
    }
    auto vec = [](const std::vector<double>& v) {
      return Eigen::Map<const Eigen::VectorXd>(v.data(),
                                               static_cast<Eigen::Index>(
                                                   v.size()))
          .eval();
    };
    eval.n = static_cast<int>(p_all.size());
    if (eval.n >= 1) eval.rmse = rmse(vec(p_all), vec(y_all));
    if (eval.n >= 2) {
      eval.r2 = detail::guarded_r2(vec(p_all), vec(y_all));
      eval.pearson = detail::guarded_pearson(vec(p_all), vec(y_all));
    }
    eval.symmetric.n = static_cast<int>(p_sym.size());
    if (!p_sym.empty()) eval.symmetric.rmse = rmse(vec(p_sym), vec(y_sym));
    eval.asymmetric.n = static_cast<int>(p_asym.size());
    if (!p_asym.empty()) {
      eval.asymmetric.rmse = rmse(vec(p_asym), vec(y_asym));
    }
    report.tasks.push_back(std::move(eval));
  }
  return report;
}

}  // namespace lipognn
