// Copyright 2026 The quadd Authors.
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

#pragma once

#include <stdexcept>
#include <string>

namespace quadd {

enum class ErrorKind {
  EncodingMismatch,
  Domain,
  NonFunctionalGate,
  UnknownChirality,
  MissingPrimitive,
  Structure,
  Timeout,
  Unsettled,
  Schema,
  Usage,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EncodingMismatch: return "encoding-mismatch";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::NonFunctionalGate: return "non-functional-gate";
    case ErrorKind::UnknownChirality: return "unknown-chirality";
    case ErrorKind::MissingPrimitive: return "missing-primitive";
    case ErrorKind::Structure: return "structure";
    case ErrorKind::Timeout: return "timeout";
    case ErrorKind::Unsettled: return "unsettled";
    case ErrorKind::Schema: return "schema";
    case ErrorKind::Usage: return "usage";
  }
  return "unknown";
}

/// Single exception type for the library; `kind()` tells callers (and the
/// CLI exit-code mapping) what went wrong.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace quadd
