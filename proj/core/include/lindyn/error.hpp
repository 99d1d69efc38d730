// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lindyn {

enum class ErrorCode {
  InvalidArgument,
  NonInvertible,
  DivergentSegalNorm,
  ZeroVector,
  Degenerate,
  SegalIncompatible,
  GridMismatch,
  NoValidN,
  PreconditionViolated,
  SupportOutsideK,
  UnknownPreset,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace lindyn
