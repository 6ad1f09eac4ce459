// SPDX-FileCopyrightText: 2026 lipognn contributors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end for the lipophilicity model. Subcommands:
//
//   train              fit a model on a labeled CSV, stream JSONL history
//   predict            score SMILES from a file/stdin, write CSV
//   evaluate           test-set metrics with symmetry strata, JSON report
//   featurize          dump atom/bond features and descriptors as JSONL
//   extract-substructs dump the hyper-atom partition as JSONL
//   split              write the deterministic test/fold assignment as JSON
//
// Exit codes: 0 success, 1 usage error, 2 data error (unreadable/invalid
// input, corrupt or mismatched model file), 3 numeric error (divergence).

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lipognn/evaluation.hpp"
#include "lipognn/ingest.hpp"
#include "lipognn/model_io.hpp"
#include "lipognn/training.hpp"

namespace {

using namespace lipognn;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json json_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

std::vector<std::string> read_smiles_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.pop_back();
    }
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> collect_smiles(const std::string& smiles_file,
                                        const std::vector<std::string>& inline_smiles) {
  std::vector<std::string> smiles = inline_smiles;
  if (!smiles_file.empty()) {
    std::ifstream in(smiles_file);
    if (!in) {
      throw DataError(DataErrorKind::FileUnreadable,
                      "cannot open " + smiles_file);
    }
    auto lines = read_smiles_lines(in);
    smiles.insert(smiles.end(), lines.begin(), lines.end());
  }
  if (smiles.empty()) {
    auto lines = read_smiles_lines(std::cin);
    smiles.insert(smiles.end(), lines.begin(), lines.end());
  }
  return smiles;
}

std::vector<std::string> parse_tasks(const std::string& spec) {
  std::vector<std::string> tasks;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item != kTaskLogP && item != kTaskLogD) {
      throw Error("unknown task '" + item + "' (expected logp and/or logd)");
    }
    tasks.push_back(item);
  }
  if (tasks.empty() || tasks.size() > 2 ||
      (tasks.size() == 2 && tasks[0] == tasks[1])) {
    throw Error("tasks must be 'logp', 'logd', or 'logp,logd'");
  }
  return tasks;
}

Dataset ingest_all(const std::vector<std::string>& paths,
                   const ColumnMap& cols, std::ostream& log) {
  std::vector<Dataset> parts;
  for (const std::string& path : paths) {
    IngestResult result = ingest_csv(path, cols);
    nlohmann::json rejected = nlohmann::json::array();
    for (const RejectedRow& r : result.report.rejected) {
      rejected.push_back(
          {{"row", r.row}, {"reason", r.reason}, {"smiles", r.smiles}});
    }
    log << nlohmann::json{{"event", "ingest"},
                          {"file", path},
                          {"rows_read", result.report.rows_read},
                          {"accepted", result.report.accepted()},
                          {"unique_smiles", result.report.unique_smiles},
                          {"dual_labeled", result.report.dual_labeled},
                          {"merged_duplicates",
                           result.report.merged_duplicates},
                          {"rejected", rejected}}
            .dump()
        << "\n";
    parts.push_back(std::move(result.dataset));
  }
  return parts.size() == 1 ? std::move(parts[0]) : merge_datasets(parts);
}

nlohmann::json eval_to_json(const EvalReport& report) { return report.to_json(); }

// ---------------------------------------------------------------- train --

struct TrainArgs {
  std::vector<std::string> data;
  std::string tasks = "logp";
  std::string out;
  std::string config_path;
  std::string history_path;
  ColumnMap cols;
  // Flag-level config overrides; only applied when the flag was passed.
  Config config;
  double test_fraction = 0.20;
  double validation_fraction = 0.25;
  int folds = 4;
  int fold = 0;
  bool all_folds = false;
  bool no_test_split = false;
  bool no_struct_encoder = false;
  bool no_global_descriptors = false;
  double stop_train_loss = -1.0;
};

int run_train(const TrainArgs& args, const std::vector<std::string>& set_flags) {
  Config config;
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path);
    if (!in) {
      throw DataError(DataErrorKind::FileUnreadable,
                      "cannot open " + args.config_path);
    }
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw DataError(DataErrorKind::FileUnreadable,
                      args.config_path + ": " + e.what());
    }
    config = j.get<Config>();
  }
  auto flag_set = [&](const std::string& name) {
    return std::find(set_flags.begin(), set_flags.end(), name) !=
           set_flags.end();
  };
  if (flag_set("--hidden")) config.hidden_dim = args.config.hidden_dim;
  if (flag_set("--message-steps")) {
    config.message_steps = args.config.message_steps;
  }
  if (flag_set("--struct-hidden")) {
    config.struct_hidden_dim = args.config.struct_hidden_dim;
  }
  if (flag_set("--head-hidden")) {
    config.head_hidden_dim = args.config.head_hidden_dim;
  }
  if (flag_set("--seed")) config.seed = args.config.seed;
  if (flag_set("--learning-rate")) {
    config.learning_rate = args.config.learning_rate;
  }
  if (flag_set("--batch-size")) config.batch_size = args.config.batch_size;
  if (flag_set("--epochs")) config.epochs = args.config.epochs;
  if (flag_set("--patience")) config.patience = args.config.patience;
  if (flag_set("--encoder")) config.encoder = args.config.encoder;
  if (flag_set("--aggregation")) config.aggregation = args.config.aggregation;
  if (flag_set("--fingerprint-bits")) {
    config.fingerprint_bits = args.config.fingerprint_bits;
  }
  if (flag_set("--fingerprint-radius")) {
    config.fingerprint_radius = args.config.fingerprint_radius;
  }
  if (args.no_struct_encoder) config.use_struct_encoder = false;
  if (args.no_global_descriptors) config.use_global_descriptors = false;

  TrainOptions options;
  options.tasks = parse_tasks(args.tasks);
  config.n_tasks = static_cast<int>(options.tasks.size());
  config.validate();
  options.stop_at_train_loss = args.stop_train_loss;

  std::ofstream history;
  if (!args.history_path.empty()) {
    history.open(args.history_path, std::ios::trunc);
    if (!history) {
      throw DataError(DataErrorKind::FileUnreadable,
                      "cannot write " + args.history_path);
    }
  }
  auto emit = [&](const nlohmann::json& j) {
    const std::string line = j.dump();
    std::cout << line << "\n";
    if (history.is_open()) history << line << "\n";
  };

  Dataset data = ingest_all(args.data, args.cols, std::cout);
  PreparedData prepared = prepare_inputs(data, config);

  std::vector<int> test_indices;
  std::vector<Fold> folds;
  if (args.no_test_split) {
    Fold fold;
    fold.train.resize(data.size());
    for (int i = 0; i < data.size(); ++i) fold.train[i] = i;
    folds.push_back(std::move(fold));
  } else {
    SplitPlan plan;
    plan.test_fraction = args.test_fraction;
    plan.validation_fraction = args.validation_fraction;
    plan.folds = args.folds;
    plan.seed = config.seed;
    Split split = split_dataset(data, plan);
    test_indices = std::move(split.test);
    folds = std::move(split.folds);
  }

  std::vector<int> selected;
  if (args.all_folds) {
    for (int f = 0; f < static_cast<int>(folds.size()); ++f) {
      selected.push_back(f);
    }
  } else {
    if (args.fold < 0 || args.fold >= static_cast<int>(folds.size())) {
      throw Error("--fold out of range (have " +
                  std::to_string(folds.size()) + " folds)");
    }
    selected.push_back(args.fold);
  }

  TrainResult best_result;
  int best_fold = -1;
  double best_val = std::numeric_limits<double>::infinity();
  for (int f : selected) {
    TrainOptions fold_options = options;
    fold_options.on_epoch = [&](const EpochStats& s) {
      nlohmann::json rmse = nlohmann::json::object();
      for (std::size_t t = 0; t < s.val_task_rmse.size(); ++t) {
        rmse[options.tasks[t]] = json_or_null(s.val_task_rmse[t]);
      }
      emit({{"event", "epoch"},
            {"fold", f},
            {"epoch", s.epoch},
            {"train_loss", json_or_null(s.train_loss)},
            {"val_loss", json_or_null(s.val_loss)},
            {"val_rmse", rmse}});
    };
    TrainResult result = train_model(data, prepared, folds[f].train,
                                     folds[f].validation, config,
                                     fold_options);

    nlohmann::json fold_json = {{"event", "fold_done"},
                                {"fold", f},
                                {"epochs_run",
                                 static_cast<int>(result.history.size())},
                                {"best_epoch", result.best_epoch},
                                {"best_val_loss",
                                 json_or_null(result.best_val_loss)}};
    if (!test_indices.empty()) {
      EvalReport test_report =
          stratified_eval(data, prepared, test_indices, result.params,
                          config, result.scaler, options.tasks);
      fold_json["test"] = eval_to_json(test_report);
    }
    emit(fold_json);

    const double val = std::isfinite(result.best_val_loss)
                           ? result.best_val_loss
                           : (result.history.empty()
                                  ? std::numeric_limits<double>::infinity()
                                  : result.history.back().train_loss);
    if (best_fold < 0 || val < best_val) {
      best_val = val;
      best_fold = f;
      best_result = std::move(result);
    }
  }

  ModelArtifact artifact;
  artifact.config = config;
  artifact.params = std::move(best_result.params);
  artifact.scaler = best_result.scaler;
  artifact.metadata = {{"seed", config.seed},
                       {"tasks", options.tasks},
                       {"dataset_digest", data.digest()},
                       {"dataset_provenance", data.provenance},
                       {"fold", best_fold},
                       {"best_epoch", best_result.best_epoch}};
  if (!args.out.empty()) save_model(artifact, args.out);

  emit({{"event", "done"},
        {"model", args.out},
        {"fold", best_fold},
        {"embedding_dim", config.embedding_dim()},
        {"best_epoch", best_result.best_epoch},
        {"best_val_loss", json_or_null(best_val)},
        {"config_digest", config_digest(config)},
        {"dataset_digest", data.digest()}});
  return 0;
}

// -------------------------------------------------------------- predict --

int run_predict(const std::string& model_path, const std::string& smiles_file,
                const std::vector<std::string>& inline_smiles,
                const std::string& out_path) {
  ModelArtifact artifact = load_model(model_path);
  std::vector<std::string> tasks;
  if (artifact.metadata.contains("tasks")) {
    tasks = artifact.metadata["tasks"].get<std::vector<std::string>>();
  } else {
    tasks = artifact.config.n_tasks == 2
                ? std::vector<std::string>{kTaskLogP, kTaskLogD}
                : std::vector<std::string>{kTaskLogP};
  }

  std::ofstream file_out;
  if (!out_path.empty()) {
    file_out.open(out_path, std::ios::trunc);
    if (!file_out) {
      throw DataError(DataErrorKind::FileUnreadable,
                      "cannot write " + out_path);
    }
  }
  std::ostream& out = out_path.empty() ? std::cout : file_out;

  out << "smiles,pred_logp,pred_logd,error\n";
  for (const std::string& smiles : collect_smiles(smiles_file, inline_smiles)) {
    std::string pred_logp, pred_logd, error;
    try {
      MolGraph mol = mol_from_smiles(smiles);
      std::vector<MolInput> input{featurize_molecule(mol, artifact.config)};
      Matrix y = predict(input, artifact.params, artifact.config,
                         artifact.scaler);
      for (std::size_t t = 0; t < tasks.size(); ++t) {
        (tasks[t] == kTaskLogP ? pred_logp : pred_logd) =
            format_double(y(0, static_cast<Eigen::Index>(t)));
      }
    } catch (const ParseError& e) {
      error = std::string(to_string(e.kind()));
    }
    out << csv_escape(smiles) << ',' << pred_logp << ',' << pred_logd << ','
        << error << "\n";
  }
  return 0;
}

// ------------------------------------------------------------- evaluate --

int run_evaluate(const std::string& model_path,
                 const std::vector<std::string>& data_paths,
                 const ColumnMap& cols, bool stratify,
                 const std::string& out_path,
                 const std::string& predictions_path) {
  ModelArtifact artifact = load_model(model_path);
  std::vector<std::string> tasks;
  if (artifact.metadata.contains("tasks")) {
    tasks = artifact.metadata["tasks"].get<std::vector<std::string>>();
  } else {
    tasks = artifact.config.n_tasks == 2
                ? std::vector<std::string>{kTaskLogP, kTaskLogD}
                : std::vector<std::string>{kTaskLogP};
  }

  std::ostringstream ingest_log;  // keep stdout clean for the report
  Dataset data = ingest_all(data_paths, cols, ingest_log);
  PreparedData prepared = prepare_inputs(data, artifact.config);
  std::vector<int> indices(data.size());
  for (int i = 0; i < data.size(); ++i) indices[i] = i;

  std::vector<PredictionRow> rows;
  EvalReport report = stratified_eval(data, prepared, indices,
                                      artifact.params, artifact.config,
                                      artifact.scaler, tasks, &rows);
  nlohmann::json j = report.to_json();
  if (!stratify) {
    for (auto& [task, metrics] : j["tasks"].items()) {
      metrics.erase("symmetric");
      metrics.erase("asymmetric");
    }
  }
  const std::string pretty = j.dump(2);
  std::cout << pretty << "\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) {
      throw DataError(DataErrorKind::FileUnreadable,
                      "cannot write " + out_path);
    }
    out << pretty << "\n";
  }
  if (!predictions_path.empty()) {
    std::ofstream out(predictions_path, std::ios::trunc);
    if (!out) {
      throw DataError(DataErrorKind::FileUnreadable,
                      "cannot write " + predictions_path);
    }
    out << "smiles,y_true_logp,y_pred_logp,y_true_logd,y_pred_logd,"
           "symmetric\n";
    auto opt = [](const std::optional<double>& v) {
      return v ? format_double(*v) : std::string();
    };
    for (const PredictionRow& r : rows) {
      out << csv_escape(r.smiles) << ',' << opt(r.true_logp) << ','
          << opt(r.pred_logp) << ',' << opt(r.true_logd) << ','
          << opt(r.pred_logd) << ',' << (r.symmetric ? 1 : 0) << "\n";
    }
  }
  return 0;
}

// ---------------------------------------------- featurize / substructs --

int run_featurize(const std::string& smiles_file,
                  const std::vector<std::string>& inline_smiles) {
  for (const std::string& smiles : collect_smiles(smiles_file, inline_smiles)) {
    nlohmann::json j;
    j["smiles"] = smiles;
    try {
      MolGraph mol = mol_from_smiles(smiles);
      j["canonical"] = canonical_smiles(mol);
      j["n_atoms"] = mol.num_atoms();
      j["n_bonds"] = mol.num_bonds();
      Matrix atoms = atom_feature_matrix(mol);
      nlohmann::json atom_rows = nlohmann::json::array();
      for (Eigen::Index i = 0; i < atoms.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < atoms.cols(); ++c) row.push_back(atoms(i, c));
        atom_rows.push_back(std::move(row));
      }
      j["atom_features"] = std::move(atom_rows);
      nlohmann::json bond_rows = nlohmann::json::array();
      for (int b = 0; b < mol.num_bonds(); ++b) {
        Eigen::RowVectorXd row = bond_features(mol, b);
        nlohmann::json jrow = nlohmann::json::array();
        for (Eigen::Index c = 0; c < row.size(); ++c) jrow.push_back(row[c]);
        bond_rows.push_back({{"atoms", {mol.bonds[b].a, mol.bonds[b].b}},
                             {"features", std::move(jrow)}});
      }
      j["bond_features"] = std::move(bond_rows);
      Eigen::RowVectorXd g = global_descriptors(mol);
      nlohmann::json gj = nlohmann::json::array();
      for (Eigen::Index c = 0; c < g.size(); ++c) gj.push_back(g[c]);
      j["descriptors"] = std::move(gj);
    } catch (const ParseError& e) {
      j["error"] = std::string(to_string(e.kind()));
    }
    std::cout << j.dump() << "\n";
  }
  return 0;
}

int run_extract_substructs(const std::string& smiles_file,
                           const std::vector<std::string>& inline_smiles) {
  for (const std::string& smiles : collect_smiles(smiles_file, inline_smiles)) {
    nlohmann::json j;
    j["smiles"] = smiles;
    try {
      MolGraph mol = mol_from_smiles(smiles);
      SubstructureSet set = extract_substructures(mol);
      nlohmann::json subs = nlohmann::json::array();
      for (const Substructure& s : set.substructures) {
        subs.push_back({{"kind", std::string(to_string(s.kind))},
                        {"atoms", s.atom_indices},
                        {"bonds", s.internal_bond_indices}});
      }
      j["substructures"] = std::move(subs);
      j["plain_atoms"] = set.plain_atoms;
    } catch (const ParseError& e) {
      j["error"] = std::string(to_string(e.kind()));
    }
    std::cout << j.dump() << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- split --

int run_split(const std::vector<std::string>& data_paths,
              const ColumnMap& cols, const SplitPlan& plan,
              const std::string& out_path) {
  std::ostringstream ingest_log;
  Dataset data = ingest_all(data_paths, cols, ingest_log);
  Split split = split_dataset(data, plan);
  auto names = [&](const std::vector<int>& idx) {
    nlohmann::json arr = nlohmann::json::array();
    for (int i : idx) arr.push_back(data.samples[i].smiles);
    return arr;
  };
  nlohmann::json folds = nlohmann::json::array();
  for (const Fold& fold : split.folds) {
    folds.push_back({{"train", names(fold.train)},
                     {"validation", names(fold.validation)}});
  }
  nlohmann::json j = {{"seed", plan.seed},
                      {"n", data.size()},
                      {"test", names(split.test)},
                      {"folds", std::move(folds)}};
  const std::string pretty = j.dump(2);
  std::cout << pretty << "\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) {
      throw DataError(DataErrorKind::FileUnreadable,
                      "cannot write " + out_path);
    }
    out << pretty << "\n";
  }
  return 0;
}

void add_column_flags(CLI::App* cmd, ColumnMap& cols) {
  cmd->add_option("--smiles-col", cols.smiles, "SMILES column name")
      ->capture_default_str();
  cmd->add_option("--logp-col", cols.logp, "logP column name")
      ->capture_default_str();
  cmd->add_option("--logd-col", cols.logd, "logD column name")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lipophilicity prediction with a two-encoder graph model"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "lipognn 0.1.0");

  // train
  TrainArgs train_args;
  CLI::App* train = app.add_subcommand("train", "Fit a model on labeled CSV data");
  train->add_option("--data", train_args.data, "labeled CSV file(s)")
      ->required()
      ->expected(-1);
  train->add_option("--tasks", train_args.tasks,
                    "comma-separated targets: logp, logd, or logp,logd")
      ->capture_default_str();
  train->add_option("--out", train_args.out, "model output path");
  train->add_option("--config", train_args.config_path,
                    "JSON config file (flags override it)");
  train->add_option("--history", train_args.history_path,
                    "also write JSONL history to this file");
  train->add_option("--hidden", train_args.config.hidden_dim,
                    "message hidden width");
  train->add_option("--message-steps", train_args.config.message_steps,
                    "message passing steps T");
  train->add_option("--struct-hidden", train_args.config.struct_hidden_dim,
                    "substructure encoder width");
  train->add_option("--head-hidden", train_args.config.head_hidden_dim,
                    "regression head width");
  train->add_option("--seed", train_args.config.seed, "PRNG seed");
  train->add_option("--learning-rate", train_args.config.learning_rate,
                    "Adam learning rate");
  train->add_option("--batch-size", train_args.config.batch_size,
                    "mini-batch size");
  train->add_option("--epochs", train_args.config.epochs, "epoch cap");
  train->add_option("--patience", train_args.config.patience,
                    "early-stopping patience (epochs)");
  train->add_option("--encoder", train_args.config.encoder,
                    "structgnn | morgan (fingerprint baseline)");
  train->add_option("--aggregation", train_args.config.aggregation,
                    "atom readout: mean | sum");
  train->add_option("--fingerprint-bits", train_args.config.fingerprint_bits,
                    "morgan baseline: fingerprint width (power of two)");
  train->add_option("--fingerprint-radius",
                    train_args.config.fingerprint_radius,
                    "morgan baseline: neighborhood radius");
  train->add_flag("--no-struct-encoder", train_args.no_struct_encoder,
                  "ablation: drop the substructure encoder");
  train->add_flag("--no-global-descriptors", train_args.no_global_descriptors,
                  "ablation: drop the global descriptor block");
  train->add_option("--test-fraction", train_args.test_fraction,
                    "held-out test fraction")
      ->capture_default_str();
  train->add_option("--validation-fraction", train_args.validation_fraction,
                    "validation fraction of the remainder")
      ->capture_default_str();
  train->add_option("--folds", train_args.folds, "validation fold count")
      ->capture_default_str();
  train->add_option("--fold", train_args.fold, "which fold to train")
      ->capture_default_str();
  train->add_flag("--all-folds", train_args.all_folds,
                  "train every fold; save the best-validation model");
  train->add_flag("--no-test-split", train_args.no_test_split,
                  "train on all data without test/validation splits");
  train->add_option("--stop-train-loss", train_args.stop_train_loss,
                    "stop once train loss reaches this value");
  add_column_flags(train, train_args.cols);

  // predict
  std::string predict_model, predict_file, predict_out;
  std::vector<std::string> predict_smiles;
  CLI::App* predict_cmd =
      app.add_subcommand("predict", "Score SMILES with a saved model");
  predict_cmd->add_option("--model", predict_model, "model file")->required();
  predict_cmd->add_option("--smiles-file", predict_file,
                          "file with one SMILES per line (default: stdin)");
  predict_cmd->add_option("--smiles", predict_smiles,
                          "inline SMILES (repeatable)");
  predict_cmd->add_option("--out", predict_out,
                          "CSV output path (default: stdout)");

  // evaluate
  std::string eval_model, eval_out, eval_predictions;
  std::vector<std::string> eval_data;
  ColumnMap eval_cols;
  bool stratify = false;
  CLI::App* evaluate_cmd =
      app.add_subcommand("evaluate", "Test-set metrics for a saved model");
  evaluate_cmd->add_option("--model", eval_model, "model file")->required();
  evaluate_cmd->add_option("--data", eval_data, "labeled CSV file(s)")
      ->required()
      ->expected(-1);
  evaluate_cmd->add_flag("--stratify-symmetry", stratify,
                         "break metrics down by molecular symmetry");
  evaluate_cmd->add_option("--out", eval_out, "also write the JSON report here");
  evaluate_cmd->add_option("--predictions", eval_predictions,
                           "write per-molecule predictions CSV here");
  add_column_flags(evaluate_cmd, eval_cols);

  // featurize
  std::string feat_file;
  std::vector<std::string> feat_smiles;
  CLI::App* featurize_cmd = app.add_subcommand(
      "featurize", "Dump atom/bond features and descriptors as JSONL");
  featurize_cmd->add_option("--smiles-file", feat_file,
                            "file with one SMILES per line (default: stdin)");
  featurize_cmd->add_option("--smiles", feat_smiles,
                            "inline SMILES (repeatable)");

  // extract-substructs
  std::string sub_file;
  std::vector<std::string> sub_smiles;
  CLI::App* substructs_cmd = app.add_subcommand(
      "extract-substructs", "Dump the hyper-atom partition as JSONL");
  substructs_cmd->add_option("--smiles-file", sub_file,
                             "file with one SMILES per line (default: stdin)");
  substructs_cmd->add_option("--smiles", sub_smiles,
                             "inline SMILES (repeatable)");

  // split
  std::vector<std::string> split_data;
  ColumnMap split_cols;
  SplitPlan split_plan;
  std::string split_out;
  CLI::App* split_cmd = app.add_subcommand(
      "split", "Write the deterministic test/fold assignment as JSON");
  split_cmd->add_option("--data", split_data, "labeled CSV file(s)")
      ->required()
      ->expected(-1);
  split_cmd->add_option("--seed", split_plan.seed, "shuffle seed")
      ->capture_default_str();
  split_cmd->add_option("--test-fraction", split_plan.test_fraction,
                        "held-out test fraction")
      ->capture_default_str();
  split_cmd->add_option("--validation-fraction",
                        split_plan.validation_fraction,
                        "validation fraction of the remainder")
      ->capture_default_str();
  split_cmd->add_option("--folds", split_plan.folds, "fold count")
      ->capture_default_str();
  split_cmd->add_option("--out", split_out, "also write the JSON here");
  add_column_flags(split_cmd, split_cols);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (train->parsed()) {
      std::vector<std::string> set_flags;
      for (const CLI::Option* opt : train->get_options()) {
        if (opt->count() > 0) set_flags.push_back(opt->get_name());
      }
      return run_train(train_args, set_flags);
    }
    if (predict_cmd->parsed()) {
      return run_predict(predict_model, predict_file, predict_smiles,
                         predict_out);
    }
    if (evaluate_cmd->parsed()) {
      return run_evaluate(eval_model, eval_data, eval_cols, stratify,
                          eval_out, eval_predictions);
    }
    if (featurize_cmd->parsed()) return run_featurize(feat_file, feat_smiles);
    if (substructs_cmd->parsed()) {
      return run_extract_substructs(sub_file, sub_smiles);
    }
    if (split_cmd->parsed()) {
      return run_split(split_data, split_cols, split_plan, split_out);
    }
  } catch (const NonFiniteValue& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const ShapeMismatch& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const ParseError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
