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

#include "thinlayer/error.hpp"

namespace thinlayer {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Validation: return "validation";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::SingularChart: return "singular_chart";
    case ErrorCode::StepSize: return "step_size";
    case ErrorCode::Periodicity: return "periodicity";
    case ErrorCode::Resolution: return "resolution";
    case ErrorCode::UnsupportedDomain: return "unsupported_domain";
    case ErrorCode::ClosedChannel: return "closed_channel";
    case ErrorCode::UndefinedPolarization: return "undefined_polarization";
    case ErrorCode::Numerical: return "numerical";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

}  // namespace thinlayer
