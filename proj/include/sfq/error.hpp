// Copyright 2026 The sfqdrive Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SFQ_ERROR_HPP
#define SFQ_ERROR_HPP

#include <stdexcept>
#include <string>

namespace sfq {

enum class ErrorKind {
  kDomain,       // argument outside the mathematical domain
  kRange,        // argument outside a configured/hardware range
  kEmptyTrain,
  kEnvelope,     // envelope strength not realizable
  kResolution,   // sampling too coarse
  kData,         // malformed input data (e.g. unordered events)
  kCalibration,
  kCompile,
  kFit,
  kConfig,
  kIo,
};

const char* error_kind_name(ErrorKind kind);

/// Single exception type for the library; the kind maps 1:1 onto C API status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sfq

#endif  // SFQ_ERROR_HPP
