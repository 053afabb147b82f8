/*
 * Copyright (c) 2026 The thinlayer Authors. All Rights Reserved
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef THINLAYER_ERROR_HPP
#define THINLAYER_ERROR_HPP

#include <stdexcept>
#include <string>

namespace thinlayer {

enum class ErrorCode {
  Validation,
  Domain,
  SingularChart,
  StepSize,
  Periodicity,
  Resolution,
  UnsupportedDomain,
  ClosedChannel,
  UndefinedPolarization,
  Numerical,
  Io,
};

const char* to_string(ErrorCode code);

/// Errors raised by the core. Codes map one-to-one onto the C API status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// True for errors caused by bad input rather than a failed computation.
  bool is_validation() const noexcept {
    return code_ != ErrorCode::Numerical && code_ != ErrorCode::UndefinedPolarization;
  }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) raise(code, message);
}

}  // namespace thinlayer

#endif  // THINLAYER_ERROR_HPP
