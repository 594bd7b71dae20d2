/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The skolem-qe Authors
 */
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace skolem_qe {

enum class ErrorCode {
  ParseError,
  NotPrenex,
  UnsupportedTheory,
  FreeVariable,
  SizeLimitExceeded,
  UnboundVariable,
  WrongCase,
  SolverCrash,
  ModelParseError,
  IrrationalModel,
  MissingBinding,
  InvalidArgument,
  Soundness,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotPrenex: return "NotPrenex";
    case ErrorCode::UnsupportedTheory: return "UnsupportedTheory";
    case ErrorCode::FreeVariable: return "FreeVariable";
    case ErrorCode::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::WrongCase: return "WrongCase";
    case ErrorCode::SolverCrash: return "SolverCrash";
    case ErrorCode::ModelParseError: return "ModelParseError";
    case ErrorCode::IrrationalModel: return "IrrationalModel";
    case ErrorCode::MissingBinding: return "MissingBinding";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Soundness: return "Soundness";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace skolem_qe
