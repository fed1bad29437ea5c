// Copyright 2026 The liou Authors
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

#ifndef LIOU_ERROR_HPP
#define LIOU_ERROR_HPP

#include <stdexcept>
#include <string>

namespace liou {

// Error categories mirror the status codes of the C API.
enum class ErrorKind {
  Validation,  // malformed spec or configuration
  Domain,      // argument outside the mathematical domain of an operation
  Resource,    // enumeration or materialization budget exceeded
  Precision,   // truncation too shallow to decide a rounding
  Internal,    // an invariant that should be unreachable failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& w) : Error(ErrorKind::Validation, w) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorKind::Domain, w) {}
};
struct ResourceError : Error {
  explicit ResourceError(const std::string& w) : Error(ErrorKind::Resource, w) {}
};
struct PrecisionError : Error {
  explicit PrecisionError(const std::string& w) : Error(ErrorKind::Precision, w) {}
};
struct InternalError : Error {
  explicit InternalError(const std::string& w) : Error(ErrorKind::Internal, w) {}
};

}  // namespace liou

#endif  // LIOU_ERROR_HPP
