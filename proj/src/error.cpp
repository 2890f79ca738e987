// Copyright 2026 The cloudpick Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cloudpick/error.hpp"

namespace cloudpick {

namespace {

std::string format_message(ErrorKind kind, const std::string& path,
                           const std::string& message) {
  std::string out(kind_name(kind));
  if (!path.empty()) {
    out += " at ";
    out += path;
  }
  out += ": ";
  out += message;
  return out;
}

}  // namespace

ExitCode exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
    case ErrorKind::kSchema:
    case ErrorKind::kRange:
    case ErrorKind::kDanglingReference:
    case ErrorKind::kDuplicateId:
    case ErrorKind::kKindMismatch:
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kNonConvergence:
      return ExitCode::kValidation;
    case ErrorKind::kNotFound:
      return ExitCode::kNotFound;
    case ErrorKind::kIo:
      return ExitCode::kIo;
    case ErrorKind::kUsage:
      return ExitCode::kUsage;
    case ErrorKind::kInternal:
      return ExitCode::kInternal;
  }
  return ExitCode::kInternal;
}

std::string_view code_name(ExitCode code) {
  switch (code) {
    case ExitCode::kOk: return "ok";
    case ExitCode::kValidation: return "validation_error";
    case ExitCode::kNoFeasibleCombination: return "no_feasible_combination";
    case ExitCode::kIo: return "io_error";
    case ExitCode::kUsage: return "usage_error";
    case ExitCode::kInternal: return "internal_error";
    case ExitCode::kNotFound: return "not_found";
  }
  return "internal_error";
}

std::string_view kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kSchema: return "schema error";
    case ErrorKind::kRange: return "range error";
    case ErrorKind::kDanglingReference: return "dangling reference";
    case ErrorKind::kDuplicateId: return "duplicate id";
    case ErrorKind::kKindMismatch: return "kind mismatch";
    case ErrorKind::kInvalidArgument: return "invalid argument";
    case ErrorKind::kNonConvergence: return "non-convergence";
    case ErrorKind::kNotFound: return "not found";
    case ErrorKind::kIo: return "i/o error";
    case ErrorKind::kUsage: return "usage error";
    case ErrorKind::kInternal: return "internal error";
  }
  return "error";
}

Error::Error(ErrorKind kind, std::string path, const std::string& message)
    : std::runtime_error(format_message(kind, path, message)),
      kind_(kind),
      path_(std::move(path)),
      detail_(message) {}

}  // namespace cloudpick
