// SPDX-FileCopyrightText: 2026 lipognn contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "lipognn/digest.hpp"
#include "lipognn/error.hpp"
#include "lipognn/rng.hpp"

namespace lipognn {

// Task identifiers, also used as CSV column defaults and CLI flag values.
inline constexpr const char* kTaskLogP = "logp";
inline constexpr const char* kTaskLogD = "logd";

struct Sample {
  std::string smiles;  // canonical form; unique within a Dataset
  std::optional<double> logp;
  std::optional<double> logd;

  const std::optional<double>& label(const std::string& task) const {
    if (task == kTaskLogP) return logp;
    if (task == kTaskLogD) return logd;
    throw Error("unknown task '" + task + "'");
  }
};

struct Dataset {
  std::vector<Sample> samples;
  std::string provenance;  // free-form source tag (e.g. the input path)

  int size() const { return static_cast<int>(samples.size()); }

  // Stable content fingerprint, independent of provenance. Labels are
  // hashed at full precision (%.17g round-trips any double).
  std::string digest() const {
    std::string buf;
    char num[32];
    for (const Sample& s : samples) {
      buf += s.smiles;
      buf += ',';
      if (s.logp) {
        std::snprintf(num, sizeof num, "%.17g", *s.logp);
        buf += num;
      }
      buf += ',';
      if (s.logd) {
        std::snprintf(num, sizeof num, "%.17g", *s.logd);
        buf += num;
      }
      buf += '\n';
    }
    return hex_digest(fnv1a64(buf));
  }
};

struct SplitPlan {
  double test_fraction = 0.20;
  double validation_fraction = 0.25;  // of the non-test remainder
  int folds = 4;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(test_fraction > 0.0 && test_fraction < 1.0) ||
        !(validation_fraction > 0.0 && validation_fraction < 1.0)) {
      throw Error("split: fractions must lie in (0,1)");
    }
    if (folds < 1) throw Error("split: folds must be >= 1");
    if (folds * validation_fraction > 1.0 + 1e-9) {
      throw Error("split: folds x validation_fraction exceeds the remainder");
    }
  }
};

struct Fold {
  std::vector<int> train;
  std::vector<int> validation;
};

struct Split {
  std::vector<int> test;
  std::vector<Fold> folds;
};

// Seeded shuffle, then: the first test_fraction of indices become the test
// set; the remainder is carved into `folds` disjoint validation blocks of
// validation_fraction each (sizes exact up to rounding); each fold trains
// on everything in the remainder outside its own block.
inline Split split_dataset(const Dataset& data, const SplitPlan& plan) {
  plan.validate();
  const int n = data.size();
  if (n < 10) {
    throw DataError(DataErrorKind::DatasetTooSmall,
                    "need at least 10 samples, got " + std::to_string(n));
  }
  Xoshiro256 rng(plan.seed);
  std::vector<int> order = random_permutation(n, rng);

  const int n_test =
      static_cast<int>(std::lround(n * plan.test_fraction));
  Split split;
  split.test.assign(order.begin(), order.begin() + n_test);
  const std::vector<int> rest(order.begin() + n_test, order.end());
  const int m = static_cast<int>(rest.size());

  split.folds.resize(plan.folds);
  for (int f = 0; f < plan.folds; ++f) {
    const int lo =
        static_cast<int>(std::lround(m * plan.validation_fraction * f));
    const int hi =
        static_cast<int>(std::lround(m * plan.validation_fraction * (f + 1)));
    Fold& fold = split.folds[f];
    for (int i = 0; i < m; ++i) {
      (i >= lo && i < hi ? fold.validation : fold.train).push_back(rest[i]);
    }
    if (fold.validation.empty()) {
      throw DataError(DataErrorKind::DatasetTooSmall,
                      "validation block " + std::to_string(f) + " is empty");
    }
  }
  return split;
}

}  // namespace lipognn
