// SPDX-FileCopyrightText: 2026 lipognn contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "lipognn/model.hpp"

// Model file format, designed for bit-exact round-trips and easy reading
// from other languages:
//
//   magic "SGNN" | u32 version | u64 json_len | json bytes
//   | u32 n_arrays | per array: u32 name_len, name, u32 rows, u32 cols,
//                    rows*cols float64 (row-major)
//
// All integers and floats little-endian. The JSON block holds the Config
// and free-form training metadata. Arrays carry the weights plus the
// global-descriptor standardization statistics.

namespace lipognn {

inline constexpr std::uint32_t kModelFormatVersion = 1;
inline constexpr char kModelMagic[4] = {'S', 'G', 'N', 'N'};

struct ModelArtifact {
  Config config;
  ModelParams params;
  StandardScaler scaler;
  nlohmann::json metadata = nlohmann::json::object();
};

namespace detail {

inline void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}

inline void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}

inline void put_f64(std::string& out, double v) {
  put_u64(out, std::bit_cast<std::uint64_t>(v));
}

class ByteReader {
 public:
  ByteReader(const std::string& bytes, std::string origin)
      : bytes_(bytes), origin_(std::move(origin)) {}

  std::uint32_t u32() { return static_cast<std::uint32_t>(read(4)); }
  std::uint64_t u64() { return read(8); }
  double f64() { return std::bit_cast<double>(read(8)); }

  std::string str(std::size_t len) {
    need(len);
    std::string s = bytes_.substr(pos_, len);
    pos_ += len;
    return s;
  }

  bool exhausted() const { return pos_ == bytes_.size(); }

  [[noreturn]] void corrupt(const std::string& what) const {
    throw DataError(DataErrorKind::CorruptFile, origin_ + ": " + what);
  }

 private:
  void need(std::size_t n) const {
    if (pos_ + n > bytes_.size()) corrupt("truncated file");
  }
  std::uint64_t read(int n) {
    need(n);
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) {
      v |= std::uint64_t(static_cast<unsigned char>(bytes_[pos_ + i]))
           << (8 * i);
    }
    pos_ += n;
    return v;
  }

  const std::string& bytes_;
  std::string origin_;
  std::size_t pos_ = 0;
};

inline void put_array(std::string& out, const std::string& name,
                      const Matrix& m) {
  put_u32(out, static_cast<std::uint32_t>(name.size()));
  out += name;
  put_u32(out, static_cast<std::uint32_t>(m.rows()));
  put_u32(out, static_cast<std::uint32_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) put_f64(out, m(i, j));
  }
}

}  // namespace detail

inline std::string serialize_model(const ModelArtifact& artifact) {
  artifact.config.validate();
  std::string out(kModelMagic, 4);
  detail::put_u32(out, kModelFormatVersion);

  nlohmann::json header = {{"config", artifact.config},
                           {"metadata", artifact.metadata}};
  const std::string json = header.dump();
  detail::put_u64(out, json.size());
  out += json;

  std::vector<std::pair<std::string, const Matrix*>> arrays;
  for (const auto& [name, matrix] : artifact.params.named()) {
    if (matrix->size() > 0) arrays.emplace_back(name, matrix);
  }
  Matrix scaler_mean = artifact.scaler.mean();
  Matrix scaler_std = artifact.scaler.std();
  arrays.emplace_back("scaler_mean", &scaler_mean);
  arrays.emplace_back("scaler_std", &scaler_std);

  detail::put_u32(out, static_cast<std::uint32_t>(arrays.size()));
  for (const auto& [name, matrix] : arrays) {
    detail::put_array(out, name, *matrix);
  }
  return out;
}

inline ModelArtifact parse_model(const std::string& bytes,
                                 const std::string& origin) {
  detail::ByteReader reader(bytes, origin);
  if (reader.str(4) != std::string(kModelMagic, 4)) {
    reader.corrupt("bad magic (not a model file)");
  }
  const std::uint32_t version = reader.u32();
  if (version != kModelFormatVersion) {
    throw DataError(DataErrorKind::VersionMismatch,
                    origin + ": file version " + std::to_string(version) +
                        ", supported version " +
                        std::to_string(kModelFormatVersion));
  }
  const std::uint64_t json_len = reader.u64();
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(reader.str(json_len));
  } catch (const nlohmann::json::exception& e) {
    reader.corrupt(std::string("bad header json: ") + e.what());
  }

  ModelArtifact artifact;
  try {
    artifact.config = header.at("config").get<Config>();
    artifact.metadata = header.value("metadata", nlohmann::json::object());
    artifact.config.validate();
  } catch (const std::exception& e) {
    reader.corrupt(std::string("bad config block: ") + e.what());
  }

  const std::uint32_t n_arrays = reader.u32();
  Eigen::RowVectorXd scaler_mean, scaler_std;
  bool saw_mean = false, saw_std = false;
  auto named = artifact.params.named();
  for (std::uint32_t a = 0; a < n_arrays; ++a) {
    const std::string name = reader.str(reader.u32());
    const std::uint32_t rows = reader.u32();
    const std::uint32_t cols = reader.u32();
    if (std::uint64_t(rows) * cols > bytes.size()) {
      reader.corrupt("array '" + name + "' larger than the file");
    }
    Matrix m(rows, cols);
    for (std::uint32_t i = 0; i < rows; ++i) {
      for (std::uint32_t j = 0; j < cols; ++j) m(i, j) = reader.f64();
    }
    if (name == "scaler_mean") {
      scaler_mean = m.row(0);
      saw_mean = true;
    } else if (name == "scaler_std") {
      scaler_std = m.row(0);
      saw_std = true;
    } else {
      bool known = false;
      for (auto& [param_name, slot] : named) {
        if (param_name == name) {
          *slot = std::move(m);
          known = true;
          break;
        }
      }
      if (!known) reader.corrupt("unknown array '" + name + "'");
    }
  }
  if (!reader.exhausted()) reader.corrupt("trailing bytes after arrays");
  if (!saw_mean || !saw_std) reader.corrupt("missing scaler statistics");
  artifact.scaler = StandardScaler(scaler_mean, scaler_std);

  // Cross-check array shapes against the configuration.
  ModelParams expected = ModelParams::init(artifact.config);
  for (auto& [name, slot] : artifact.params.named()) {
    Matrix* want = nullptr;
    for (auto& [expected_name, expected_slot] : expected.named()) {
      if (expected_name == name) want = expected_slot;
    }
    if (slot->rows() != want->rows() || slot->cols() != want->cols()) {
      reader.corrupt("array '" + name + "' has shape " +
                     std::to_string(slot->rows()) + "x" +
                     std::to_string(slot->cols()) + ", config implies " +
                     std::to_string(want->rows()) + "x" +
                     std::to_string(want->cols()));
    }
    if (!slot->allFinite()) reader.corrupt("array '" + name + "' not finite");
  }
  return artifact;
}

inline void save_model(const ModelArtifact& artifact,
                       const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw DataError(DataErrorKind::FileUnreadable, "cannot write " + path);
  }
  const std::string bytes = serialize_model(artifact);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw DataError(DataErrorKind::FileUnreadable, "short write to " + path);
  }
}

inline ModelArtifact load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError(DataErrorKind::FileUnreadable, "cannot open " + path);
  }
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return parse_model(bytes, path);
}

}  // namespace lipognn
