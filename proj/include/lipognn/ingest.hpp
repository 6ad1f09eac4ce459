// SPDX-FileCopyrightText: 2026 lipognn contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "lipognn/canonical.hpp"
#include "lipognn/csv.hpp"
#include "lipognn/dataset.hpp"
#include "lipognn/ring_perception.hpp"

namespace lipognn {

struct ColumnMap {
  std::string smiles = "smiles";
  std::string logp = kTaskLogP;
  std::string logd = kTaskLogD;
};

struct RejectedRow {
  int row;             // 1-based data row number (header excluded)
  std::string reason;  // machine-readable code, e.g. "UnclosedRing"
  std::string smiles;  // offending input, verbatim
};

struct IngestReport {
  int rows_read = 0;  // data rows, header excluded
  std::vector<RejectedRow> rejected;
  int unique_smiles = 0;
  int dual_labeled = 0;
  int merged_duplicates = 0;  // rows folded into an earlier canonical form

  int accepted() const {
    return rows_read - static_cast<int>(rejected.size());
  }
};

struct IngestResult {
  Dataset dataset;
  IngestReport report;
};

namespace detail {

inline bool parse_label(const std::string& text, double& out) {
  std::size_t used = 0;
  try {
    out = std::stod(text, &used);
  } catch (const std::exception&) {
    return false;
  }
  while (used < text.size() &&
         std::isspace(static_cast<unsigned char>(text[used]))) {
    ++used;
  }
  return used == text.size() && std::isfinite(out);
}

}  // namespace detail

// Parse a labeled CSV into a deduplicated Dataset. Every SMILES is
// canonicalized; rows whose canonical forms collide are merged, averaging
// any duplicate labels per task, so logP-sourced and logD-sourced rows for
// the same molecule fuse into one dual-labeled sample. Samples keep the
// order in which their canonical form first appeared.
inline IngestResult ingest_rows(
    const std::vector<std::vector<std::string>>& rows, const ColumnMap& cols,
    const std::string& provenance) {
  if (rows.empty()) {
    throw DataError(DataErrorKind::FileUnreadable,
                    provenance + ": no header row");
  }
  const std::vector<std::string>& header = rows[0];
  auto find_col = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1
                              : static_cast<int>(it - header.begin());
  };
  const int smiles_col = find_col(cols.smiles);
  const int logp_col = find_col(cols.logp);
  const int logd_col = find_col(cols.logd);
  if (smiles_col < 0) {
    throw DataError(DataErrorKind::MissingColumn,
                    "no column '" + cols.smiles + "' in " + provenance);
  }
  if (logp_col < 0 && logd_col < 0) {
    throw DataError(DataErrorKind::MissingColumn,
                    "need at least one of '" + cols.logp + "'/'" + cols.logd +
                        "' in " + provenance);
  }

  IngestResult result;
  result.dataset.provenance = provenance;
  struct Accumulator {
    std::vector<double> logp, logd;
    int order;  // first-appearance index
  };
  std::map<std::string, Accumulator> by_canonical;

  auto cell = [](const std::vector<std::string>& row, int col) {
    return col >= 0 && col < static_cast<int>(row.size()) ? row[col]
                                                          : std::string();
  };

  for (std::size_t r = 1; r < rows.size(); ++r) {
    ++result.report.rows_read;
    const int row_no = static_cast<int>(r);
    const std::string raw = cell(rows[r], smiles_col);

    std::string canonical;
    try {
      canonical = canonical_smiles(mol_from_smiles(raw));
    } catch (const ParseError& e) {
      result.report.rejected.push_back(
          {row_no, std::string(to_string(e.kind())), raw});
      continue;
    }

    double logp = 0.0, logd = 0.0;
    const std::string logp_text = cell(rows[r], logp_col);
    const std::string logd_text = cell(rows[r], logd_col);
    const bool has_logp = logp_col >= 0 && !logp_text.empty();
    const bool has_logd = logd_col >= 0 && !logd_text.empty();
    if ((has_logp && !detail::parse_label(logp_text, logp)) ||
        (has_logd && !detail::parse_label(logd_text, logd))) {
      result.report.rejected.push_back({row_no, "BadLabel", raw});
      continue;
    }
    if (!has_logp && !has_logd) {
      result.report.rejected.push_back({row_no, "NoLabels", raw});
      continue;
    }

    auto [it, inserted] = by_canonical.try_emplace(
        canonical,
        Accumulator{{}, {}, static_cast<int>(by_canonical.size())});
    if (!inserted) ++result.report.merged_duplicates;
    if (has_logp) it->second.logp.push_back(logp);
    if (has_logd) it->second.logd.push_back(logd);
  }

  if (result.report.rows_read > 0 && result.report.accepted() == 0) {
    throw DataError(DataErrorKind::AllRowsRejected,
                    provenance + ": every row was rejected");
  }

  auto mean_of = [](const std::vector<double>& v) -> std::optional<double> {
    if (v.empty()) return std::nullopt;
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
  };
  result.dataset.samples.resize(by_canonical.size());
  for (const auto& [canonical, acc] : by_canonical) {
    Sample& s = result.dataset.samples[acc.order];
    s.smiles = canonical;
    s.logp = mean_of(acc.logp);
    s.logd = mean_of(acc.logd);
    if (s.logp && s.logd) ++result.report.dual_labeled;
  }
  result.report.unique_smiles = result.dataset.size();
  return result;
}

inline IngestResult ingest_stream(std::istream& in, const ColumnMap& cols,
                                  const std::string& provenance) {
  return ingest_rows(parse_csv(in), cols, provenance);
}

inline IngestResult ingest_csv(const std::string& path,
                               const ColumnMap& cols = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError(DataErrorKind::FileUnreadable, "cannot open " + path);
  }
  return ingest_stream(in, cols, path);
}

// Fold several already-canonical datasets into one: samples with
// colliding canonical SMILES merge by per-task label averaging, exactly as
// duplicate rows do within one file. Lossless (no string round-trip).
inline Dataset merge_datasets(const std::vector<Dataset>& parts) {
  struct Accumulator {
    std::vector<double> logp, logd;
    int order;
  };
  std::map<std::string, Accumulator> by_canonical;
  Dataset merged;
  for (const Dataset& part : parts) {
    if (!merged.provenance.empty()) merged.provenance += "+";
    merged.provenance += part.provenance;
    for (const Sample& s : part.samples) {
      auto [it, inserted] = by_canonical.try_emplace(
          s.smiles,
          Accumulator{{}, {}, static_cast<int>(by_canonical.size())});
      if (s.logp) it->second.logp.push_back(*s.logp);
      if (s.logd) it->second.logd.push_back(*s.logd);
    }
  }
  auto mean_of = [](const std::vector<double>& v) -> std::optional<double> {
    if (v.empty()) return std::nullopt;
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
  };
  merged.samples.resize(by_canonical.size());
  for (const auto& [canonical, acc] : by_canonical) {
    Sample& s = merged.samples[acc.order];
    s.smiles = canonical;
    s.logp = mean_of(acc.logp);
    s.logd = mean_of(acc.logd);
  }
  return merged;
}

}  // namespace lipognn
