// SPDX-FileCopyrightText: 2026 lipognn contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "lipognn/featurize.hpp"
#include "lipognn/fingerprint.hpp"
#include "lipognn/molgraph.hpp"
#include "lipognn/rng.hpp"
#include "lipognn/substruct.hpp"
#include "lipognn/tensor.hpp"

// The two-encoder regression model: a directed-edge message passing encoder
// over the bond graph and a set encoder over functional-group hyper-atoms,
// concatenated with standardized global descriptors and fed to a two-layer
// head. A Morgan-fingerprint baseline reuses the same head behind the
// `encoder` switch.

namespace lipognn {

struct Config {
  int hidden_dim = 300;        // D-MPNN edge state width
  int message_steps = 3;       // T; T-1 message updates happen
  int struct_hidden_dim = 300;
  int head_hidden_dim = 300;
  int n_tasks = 1;             // 1 = logP, 2 = (logP, logD)
  bool use_struct_encoder = true;
  bool use_global_descriptors = true;
  std::string encoder = "structgnn";  // or "morgan" (fingerprint baseline)
  int fingerprint_bits = 2048;
  int fingerprint_radius = 2;
  std::uint64_t seed = 0;
  double learning_rate = 1e-3;
  int batch_size = 50;
  int epochs = 30;
  int patience = 10;              // early-stopping window, in epochs
  std::string aggregation = "mean";  // atom readout: "mean" or "sum"
  double dropout = 0.0;              // reserved hook; must stay 0 for now

  void validate() const {
    if (hidden_dim < 1 || struct_hidden_dim < 1 || head_hidden_dim < 1) {
      throw Error("config: all hidden dims must be >= 1");
    }
    if (message_steps < 1) throw Error("config: message_steps must be >= 1");
    if (n_tasks != 1 && n_tasks != 2) {
      throw Error("config: n_tasks must be 1 or 2");
    }
    if (encoder != "structgnn" && encoder != "morgan") {
      throw Error("config: encoder must be 'structgnn' or 'morgan'");
    }
    if (aggregation != "mean" && aggregation != "sum") {
      throw Error("config: aggregation must be 'mean' or 'sum'");
    }
    if (fingerprint_bits <= 0 ||
        (fingerprint_bits & (fingerprint_bits - 1)) != 0) {
      throw Error("config: fingerprint_bits must be a power of two");
    }
    if (fingerprint_radius < 0) {
      throw Error("config: fingerprint_radius must be >= 0");
    }
    if (dropout != 0.0) {
      throw Error("config: the dropout hook is reserved and must be 0");
    }
    if (batch_size < 1 || epochs < 0 || patience < 1) {
      throw Error("config: batch_size/patience must be >= 1, epochs >= 0");
    }
  }

  // Width of the concatenated embedding the head consumes.
  int embedding_dim() const {
    int dim = 0;
    if (encoder == "morgan") {
      dim = fingerprint_bits;
    } else {
      dim = hidden_dim;
      if (use_struct_encoder) dim += struct_hidden_dim;
    }
    if (use_global_descriptors) dim += kGlobalDescriptorDim;
    return dim;
  }

  bool has_dmpnn() const { return encoder == "structgnn"; }
  bool has_struct_encoder() const {
    return encoder == "structgnn" && use_struct_encoder;
  }
};

inline void to_json(nlohmann::json& j, const Config& c) {
  j = nlohmann::json{{"hidden_dim", c.hidden_dim},
                     {"message_steps", c.message_steps},
                     {"struct_hidden_dim", c.struct_hidden_dim},
                     {"head_hidden_dim", c.head_hidden_dim},
                     {"n_tasks", c.n_tasks},
                     {"use_struct_encoder", c.use_struct_encoder},
                     {"use_global_descriptors", c.use_global_descriptors},
                     {"encoder", c.encoder},
                     {"fingerprint_bits", c.fingerprint_bits},
                     {"fingerprint_radius", c.fingerprint_radius},
                     {"seed", c.seed},
                     {"learning_rate", c.learning_rate},
                     {"batch_size", c.batch_size},
                     {"epochs", c.epochs},
                     {"patience", c.patience},
                     {"aggregation", c.aggregation},
                     {"dropout", c.dropout}};
}

inline void from_json(const nlohmann::json& j, Config& c) {
  Config defaults;
  c.hidden_dim = j.value("hidden_dim", defaults.hidden_dim);
  c.message_steps = j.value("message_steps", defaults.message_steps);
  c.struct_hidden_dim = j.value("struct_hidden_dim", defaults.struct_hidden_dim);
  c.head_hidden_dim = j.value("head_hidden_dim", defaults.head_hidden_dim);
  c.n_tasks = j.value("n_tasks", defaults.n_tasks);
  c.use_struct_encoder =
      j.value("use_struct_encoder", defaults.use_struct_encoder);
  c.use_global_descriptors =
      j.value("use_global_descriptors", defaults.use_global_descriptors);
  c.encoder = j.value("encoder", defaults.encoder);
  c.fingerprint_bits = j.value("fingerprint_bits", defaults.fingerprint_bits);
  c.fingerprint_radius =
      j.value("fingerprint_radius", defaults.fingerprint_radius);
  c.seed = j.value("seed", defaults.seed);
  c.learning_rate = j.value("learning_rate", defaults.learning_rate);
  c.batch_size = j.value("batch_size", defaults.batch_size);
  c.epochs = j.value("epochs", defaults.epochs);
  c.patience = j.value("patience", defaults.patience);
  c.aggregation = j.value("aggregation", defaults.aggregation);
  c.dropout = j.value("dropout", defaults.dropout);
}

// Xavier/Glorot uniform, gain 1, filled row-major so a given seed always
// produces the same matrix.
inline Matrix xavier_uniform(int rows, int cols, Xoshiro256& rng) {
  const double limit = std::sqrt(6.0 / (rows + cols));
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = rng.next_double(-limit, limit);
  }
  return m;
}

// All trainable weights. Initialization order is fixed (w_in, w_msg,
// w_atom, w_struct, head) and parameter groups disabled by the config are
// skipped entirely, consuming no randomness, so ablations of the same seed
// share the weights they have in common.
struct ModelParams {
  Matrix w_in;      // (F_a + F_b) x hidden
  Matrix w_msg;     // hidden x hidden
  Matrix w_atom;    // (F_a + hidden) x hidden
  Matrix w_struct;  // F_h x struct_hidden
  Matrix b_struct;  // 1 x struct_hidden
  Matrix w1;        // embedding_dim x head_hidden
  Matrix b1;        // 1 x head_hidden
  Matrix w2;        // head_hidden x n_tasks
  Matrix b2;        // 1 x n_tasks

  static ModelParams init(const Config& config) {
    config.validate();
    Xoshiro256 rng(config.seed);
    ModelParams p;
    if (config.has_dmpnn()) {
      p.w_in = xavier_uniform(kAtomFeatureDim + kBondFeatureDim,
                              config.hidden_dim, rng);
      p.w_msg = xavier_uniform(config.hidden_dim, config.hidden_dim, rng);
      p.w_atom = xavier_uniform(kAtomFeatureDim + config.hidden_dim,
                                config.hidden_dim, rng);
    }
    if (config.has_struct_encoder()) {
      p.w_struct = xavier_uniform(kHyperAtomFeatureDim,
                                  config.struct_hidden_dim, rng);
      p.b_struct = Matrix::Zero(1, config.struct_hidden_dim);
    }
    p.w1 = xavier_uniform(config.embedding_dim(), config.head_hidden_dim,
                          rng);
    p.b1 = Matrix::Zero(1, config.head_hidden_dim);
    p.w2 = xavier_uniform(config.head_hidden_dim, config.n_tasks, rng);
    p.b2 = Matrix::Zero(1, config.n_tasks);
    return p;
  }

  // Active parameters in initialization order (empty groups omitted).
  std::vector<Matrix*> trainable() {
    std::vector<Matrix*> out;
    for (Matrix* m : {&w_in, &w_msg, &w_atom, &w_struct, &b_struct, &w1, &b1,
                      &w2, &b2}) {
      if (m->size() > 0) out.push_back(m);
    }
    return out;
  }

  std::vector<std::pair<std::string, Matrix*>> named() {
    return {{"w_in", &w_in},       {"w_msg", &w_msg},
            {"w_atom", &w_atom},   {"w_struct", &w_struct},
            {"b_struct", &b_struct}, {"w1", &w1},
            {"b1", &b1},           {"w2", &w2},
            {"b2", &b2}};
  }

  std::vector<std::pair<std::string, const Matrix*>> named() const {
    return {{"w_in", &w_in},       {"w_msg", &w_msg},
            {"w_atom", &w_atom},   {"w_struct", &w_struct},
            {"b_struct", &b_struct}, {"w1", &w1},
            {"b1", &b1},           {"w2", &w2},
            {"b2", &b2}};
  }
};

// Everything the model needs about one molecule, computed once and reused
// across epochs. Directed edge 2b is bond b read a->b, 2b+1 is b->a.
struct MolInput {
  Matrix atom_features;    // n x F_a
  Matrix edge_features;    // 2E x (F_a + F_b); row = [x_source | bond]
  Matrix msg_adjacency;    // 2E x 2E; (e, e') = 1 iff e' feeds e
  Matrix atom_incoming;    // n x 2E; (v, e') = 1 iff e' points at v
  Matrix nodes;            // hyper-atom node set, n_nodes x F_h
  Matrix descriptors_raw;  // 1 x F_g, unstandardized
  Matrix fingerprint;      // 1 x fingerprint_bits (morgan encoder only)
};

inline MolInput featurize_molecule(const MolGraph& mol, const Config& config) {
  MolInput input;
  input.atom_features = atom_feature_matrix(mol);
  input.descriptors_raw = global_descriptors(mol);

  if (config.has_dmpnn()) {
    const int n_edges = 2 * mol.num_bonds();
    input.edge_features =
        Matrix::Zero(n_edges, kAtomFeatureDim + kBondFeatureDim);
    for (int b = 0; b < mol.num_bonds(); ++b) {
      Eigen::RowVectorXd bond = bond_features(mol, b);
      input.edge_features.row(2 * b).head(kAtomFeatureDim) =
          input.atom_features.row(mol.bonds[b].a);
      input.edge_features.row(2 * b).tail(kBondFeatureDim) = bond;
      input.edge_features.row(2 * b + 1).head(kAtomFeatureDim) =
          input.atom_features.row(mol.bonds[b].b);
      input.edge_features.row(2 * b + 1).tail(kBondFeatureDim) = bond;
    }
    auto source = [&](int e) {
      return e % 2 == 0 ? mol.bonds[e / 2].a : mol.bonds[e / 2].b;
    };
    auto target = [&](int e) {
      return e % 2 == 0 ? mol.bonds[e / 2].b : mol.bonds[e / 2].a;
    };
    input.msg_adjacency = Matrix::Zero(n_edges, n_edges);
    input.atom_incoming = Matrix::Zero(mol.num_atoms(), n_edges);
    for (int e = 0; e < n_edges; ++e) {
      input.atom_incoming(target(e), e) = 1.0;
      for (int e2 = 0; e2 < n_edges; ++e2) {
        // e' feeds e when e' ends at e's source without being its reverse
        if (target(e2) == source(e) && source(e2) != target(e)) {
          input.msg_adjacency(e, e2) = 1.0;
        }
      }
    }
  }

  if (config.has_struct_encoder()) {
    input.nodes = node_set(mol, extract_substructures(mol));
  }

  if (config.encoder == "morgan") {
    std::vector<std::uint32_t> counts = morgan_fingerprint(
        mol, config.fingerprint_radius, config.fingerprint_bits);
    input.fingerprint = Matrix::Zero(1, config.fingerprint_bits);
    for (int i = 0; i < config.fingerprint_bits; ++i) {
      input.fingerprint(0, i) = static_cast<double>(counts[i]);
    }
  }
  return input;
}

// Tape handles of the parameters, in one of two modes: trainable (leaves
// gradients flow into) or frozen (constants, for inference probes).
struct ModelVars {
  int w_in = -1, w_msg = -1, w_atom = -1;
  int w_struct = -1, b_struct = -1;
  int w1 = -1, b1 = -1, w2 = -1, b2 = -1;
};

inline ModelVars load_params(Tape& tape, const ModelParams& params,
                             bool trainable) {
  auto put = [&](const Matrix& m) {
    if (m.size() == 0) return -1;
    return trainable ? tape.leaf(m) : tape.constant(m);
  };
  ModelVars vars;
  vars.w_in = put(params.w_in);
  vars.w_msg = put(params.w_msg);
  vars.w_atom = put(params.w_atom);
  vars.w_struct = put(params.w_struct);
  vars.b_struct = put(params.b_struct);
  vars.w1 = put(params.w1);
  vars.b1 = put(params.b1);
  vars.w2 = put(params.w2);
  vars.b2 = put(params.b2);
  return vars;
}

// Gradients for Adam, aligned with ModelParams::trainable() order.
inline std::vector<Matrix> collect_grads(const Tape& tape,
                                         const ModelVars& vars,
                                         const Config& config) {
  std::vector<Matrix> grads;
  auto take = [&](int var) {
    if (var >= 0) grads.push_back(tape.grad(var));
  };
  take(vars.w_in);
  take(vars.w_msg);
  take(vars.w_atom);
  take(vars.w_struct);
  take(vars.b_struct);
  take(vars.w1);
  take(vars.b1);
  take(vars.w2);
  take(vars.b2);
  (void)config;
  return grads;
}

// Rebuild ModelVars from handles laid out in ModelParams::trainable()
// order; used by gradient checking, where the tape handles come in as a
// flat vector.
inline ModelVars vars_from_handles(const std::vector<int>& handles,
                                   const Config& config) {
  ModelVars vars;
  std::size_t i = 0;
  auto next = [&]() { return handles.at(i++); };
  if (config.has_dmpnn()) {
    vars.w_in = next();
    vars.w_msg = next();
    vars.w_atom = next();
  }
  if (config.has_struct_encoder()) {
    vars.w_struct = next();
    vars.b_struct = next();
  }
  vars.w1 = next();
  vars.b1 = next();
  vars.w2 = next();
  vars.b2 = next();
  if (i != handles.size()) {
    throw ShapeMismatch("vars_from_handles: handle count mismatch");
  }
  return vars;
}

namespace detail {

inline int aggregate_rows(Tape& tape, int rows, const Config& config) {
  return config.aggregation == "sum" ? tape.sum_rows(rows)
                                     : tape.mean_rows(rows);
}

}  // namespace detail

// Directed-edge message passing:
//   h0   = relu(Xe W_in)
//   h_t  = relu(h0 + (A_msg h_{t-1}) W_msg)      for t = 1..T-1
//   a    = relu([X_a | A_inc h_{T-1}] W_atom)
//   h_d  = aggregate over atoms of a
// Bond-free molecules degenerate gracefully: all message sums are zero.
inline int dmpnn_encode(Tape& tape, const MolInput& input,
                        const ModelVars& vars, const Config& config) {
  int xe = tape.constant(input.edge_features);
  int h0 = tape.relu(tape.matmul(xe, vars.w_in));
  int h = h0;
  int amsg = tape.constant(input.msg_adjacency);
  for (int t = 1; t < config.message_steps; ++t) {
    int messages = tape.matmul(tape.matmul(amsg, h), vars.w_msg);
    h = tape.relu(tape.add(h0, messages));
  }
  int incoming = tape.matmul(tape.constant(input.atom_incoming), h);
  int atoms = tape.relu(tape.matmul(
      tape.concat_cols({tape.constant(input.atom_features), incoming}),
      vars.w_atom));
  return detail::aggregate_rows(tape, atoms, config);
}

// One-layer set encoder: mean over nodes of relu(N W_struct + b).
inline int struct_encode(Tape& tape, const MolInput& input,
                         const ModelVars& vars) {
  if (input.nodes.rows() == 0) {
    throw ShapeMismatch("struct_encode: empty node set");
  }
  int nodes = tape.constant(input.nodes);
  int hidden =
      tape.relu(tape.add(tape.matmul(nodes, vars.w_struct), vars.b_struct));
  return tape.mean_rows(hidden);
}

// Concatenated embedding z for one molecule (1 x embedding_dim).
inline int embed(Tape& tape, const MolInput& input, const ModelVars& vars,
                 const Config& config, const StandardScaler& scaler) {
  std::vector<int> parts;
  if (config.encoder == "morgan") {
    parts.push_back(tape.constant(input.fingerprint));
  } else {
    parts.push_back(dmpnn_encode(tape, input, vars, config));
    if (config.use_struct_encoder) {
      parts.push_back(struct_encode(tape, input, vars));
    }
  }
  if (config.use_global_descriptors) {
    parts.push_back(tape.constant(scaler.transform(input.descriptors_raw)));
  }
  return parts.size() == 1 ? parts[0] : tape.concat_cols(parts);
}

// Two-layer head, no output activation: y = relu(z W1 + b1) W2 + b2.
inline int head(Tape& tape, int z, const ModelVars& vars) {
  int hidden = tape.relu(tape.add(tape.matmul(z, vars.w1), vars.b1));
  return tape.add(tape.matmul(hidden, vars.w2), vars.b2);
}

inline int forward_one(Tape& tape, const MolInput& input,
                       const ModelVars& vars, const Config& config,
                       const StandardScaler& scaler) {
  return head(tape, embed(tape, input, vars, config, scaler), vars);
}

// Eager prediction over frozen parameters; one row per molecule.
inline Matrix predict(const std::vector<MolInput>& inputs,
                      const ModelParams& params, const Config& config,
                      const StandardScaler& scaler) {
  Matrix out(static_cast<Eigen::Index>(inputs.size()), config.n_tasks);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    Tape tape;
    ModelVars vars = load_params(tape, params, false);
    out.row(i) =
        tape.value(forward_one(tape, inputs[i], vars, config, scaler)).row(0);
  }
  return out;
}

// Masked multitask RMSE on the tape: per-task RMSE over present entries,
// averaged over the tasks that have at least one entry in the batch.
// `targets` entries without a label must be zero-filled; `mask` is 0/1.
inline int build_batch_loss(Tape& tape,
                            const std::vector<const MolInput*>& batch,
                            const Matrix& targets, const Matrix& mask,
                            const ModelVars& vars, const Config& config,
                            const StandardScaler& scaler) {
  if (batch.empty()) throw ShapeMismatch("loss: empty batch");
  if (targets.rows() != static_cast<Eigen::Index>(batch.size()) ||
      targets.cols() != config.n_tasks || mask.rows() != targets.rows() ||
      mask.cols() != targets.cols()) {
    throw ShapeMismatch("loss: target/mask shape mismatch");
  }
  std::vector<int> rows;
  rows.reserve(batch.size());
  for (const MolInput* input : batch) {
    rows.push_back(forward_one(tape, *input, vars, config, scaler));
  }
  int preds = tape.stack_rows(rows);
  int diff = tape.sub(preds, tape.constant(targets));
  int masked_sq = tape.mul(tape.square(diff), tape.constant(mask));
  int per_task = tape.sum_rows(masked_sq);  // 1 x n_tasks

  int loss = -1;
  int active_tasks = 0;
  for (int t = 0; t < config.n_tasks; ++t) {
    double count = mask.col(t).sum();
    if (count == 0.0) continue;
    Matrix selector = Matrix::Zero(1, config.n_tasks);
    selector(0, t) = 1.0;
    int task_sq = tape.sum_all(tape.mul(per_task, tape.constant(selector)));
    int task_rmse = tape.sqrt(tape.scale(task_sq, 1.0 / count));
    loss = loss < 0 ? task_rmse : tape.add(loss, task_rmse);
    ++active_tasks;
  }
  if (active_tasks == 0) throw ShapeMismatch("loss: no labels in batch");
  if (active_tasks > 1) loss = tape.scale(loss, 1.0 / active_tasks);
  return loss;
}

}  // namespace lipognn
