// SPDX-License-Identifier: Apache-2.0
#include "lindyn/error.hpp"

namespace lindyn {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::NonInvertible: return "NON_INVERTIBLE";
    case ErrorCode::DivergentSegalNorm: return "DIVERGENT_SEGAL_NORM";
    case ErrorCode::ZeroVector: return "ZERO_VECTOR";
    case ErrorCode::Degenerate: return "DEGENERATE";
    case ErrorCode::SegalIncompatible: return "SEGAL_INCOMPATIBLE";
    case ErrorCode::GridMismatch: return "GRID_MISMATCH";
    case ErrorCode::NoValidN: return "NO_VALID_N";
    case ErrorCode::PreconditionViolated: return "PRECONDITION_VIOLATED";
    case ErrorCode::SupportOutsideK: return "SUPPORT_OUTSIDE_K";
    case ErrorCode::UnknownPreset: return "UNKNOWN_PRESET";
    case ErrorCode::ParseError: return "PARSE_ERROR";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace lindyn
