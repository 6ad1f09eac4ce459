// SPDX-FileCopyrightText: 2026 lipognn contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lipognn {

// Base class for everything this library throws.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Machine-readable reasons for SMILES rejection. Kept as an enum so that
// ingestion reports can carry a stable reason code per rejected row.
enum class ParseErrorKind {
  EmptyInput,
  UnclosedRing,
  UnbalancedParen,
  UnknownElement,
  ValenceError,
  MultiFragment,
  BadSyntax,
};

inline std::string_view to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::EmptyInput: return "EmptyInput";
    case ParseErrorKind::UnclosedRing: return "UnclosedRing";
    case ParseErrorKind::UnbalancedParen: return "UnbalancedParen";
    case ParseErrorKind::UnknownElement: return "UnknownElement";
    case ParseErrorKind::ValenceError: return "ValenceError";
    case ParseErrorKind::MultiFragment: return "MultiFragment";
    case ParseErrorKind::BadSyntax: return "BadSyntax";
  }
  return "BadSyntax";
}

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, const std::string& msg)
      : Error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}

  ParseErrorKind kind() const { return kind_; }

 private:
  ParseErrorKind kind_;
};

// Tensor engine errors.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class NonFiniteValue : public Error {
 public:
  using Error::Error;
};

// Dataset / metric / model-file failure reasons, kept machine-readable so
// the CLI can map them to its documented exit codes.
enum class DataErrorKind {
  MissingColumn,
  FileUnreadable,
  AllRowsRejected,
  DatasetTooSmall,
  EmptyBatch,
  ZeroVariance,
  NoLabels,
  VersionMismatch,
  CorruptFile,
};

inline std::string_view to_string(DataErrorKind kind) {
  switch (kind) {
    case DataErrorKind::MissingColumn: return "MissingColumn";
    case DataErrorKind::FileUnreadable: return "FileUnreadable";
    case DataErrorKind::AllRowsRejected: return "AllRowsRejected";
    case DataErrorKind::DatasetTooSmall: return "DatasetTooSmall";
    case DataErrorKind::EmptyBatch: return "EmptyBatch";
    case DataErrorKind::ZeroVariance: return "ZeroVariance";
    case DataErrorKind::NoLabels: return "NoLabels";
    case DataErrorKind::VersionMismatch: return "VersionMismatch";
    case DataErrorKind::CorruptFile: return "CorruptFile";
  }
  return "FileUnreadable";
}

class DataError : public Error {
 public:
  DataError(DataErrorKind kind, const std::string& msg)
      : Error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}

  DataErrorKind kind() const { return kind_; }

 private:
  DataErrorKind kind_;
};

}  // namespace lipognn
