// Copyright 2026 The SEG Authors
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

#ifndef SEG_ERROR_HPP_
#define SEG_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace seg {

// Broad failure classes. They map one-to-one onto the C API status codes and
// the CLI exit codes.
enum class ErrorKind {
  kInvalidArgument,  // bad flag or config value
  kData,             // malformed or inconsistent input data
  kBackend,          // answerer / judge transport or protocol failure
  kInternal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error DataError(const std::string& what) {
  return Error(ErrorKind::kData, what);
}

inline Error ArgumentError(const std::string& what) {
  return Error(ErrorKind::kInvalidArgument, what);
}

inline Error BackendError(const std::string& what) {
  return Error(ErrorKind::kBackend, what);
}

}  // namespace seg

#endif  // SEG_ERROR_HPP_
