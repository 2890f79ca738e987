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

#ifndef CLOUDPICK_ERROR_HPP_
#define CLOUDPICK_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace cloudpick {

// Fine-grained error classes. Each maps onto one published exit code.
enum class ErrorKind {
  kParse,              // malformed document
  kSchema,             // unknown or mistyped attribute / field
  kRange,              // value outside the declared value range
  kDanglingReference,  // provider or dependency id does not resolve
  kDuplicateId,
  kKindMismatch,       // requirement targets the wrong entity kind
  kInvalidArgument,    // precondition violated by a caller
  kNonConvergence,     // power iteration hit its cap
  kNotFound,
  kIo,
  kUsage,
  kInternal,
};

// Process exit codes shared by the CLI and the HTTP error payloads.
enum class ExitCode : int {
  kOk = 0,
  kValidation = 1,
  kNoFeasibleCombination = 2,
  kIo = 3,
  kUsage = 4,
  kInternal = 5,
  kNotFound = 6,
};

ExitCode exit_code_for(ErrorKind kind);

// Machine-readable code string, e.g. "validation_error".
std::string_view code_name(ExitCode code);
std::string_view kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  // `path` addresses the offending node, e.g. "/images/2/numerical/popularity".
  Error(ErrorKind kind, std::string path, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& path() const noexcept { return path_; }
  const std::string& detail() const noexcept { return detail_; }
  ExitCode exit_code() const noexcept { return exit_code_for(kind_); }

 private:
  ErrorKind kind_;
  std::string path_;
  std::string detail_;
};

}  // namespace cloudpick

#endif  // CLOUDPICK_ERROR_HPP_
