// Copyright 2026 The geophase Authors
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

#include "geophase/error.hpp"

namespace geophase {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument:
      return "InvalidArgument";
    case ErrorCode::UndefinedPhase:
      return "UndefinedPhase";
    case ErrorCode::DegenerateClosure:
      return "DegenerateClosure";
    case ErrorCode::OutOfDomain:
      return "OutOfDomain";
    case ErrorCode::PurityZero:
      return "PurityZero";
    case ErrorCode::FitFailure:
      return "FitFailure";
    case ErrorCode::NoRealization:
      return "NoRealization";
    case ErrorCode::EmptyCounts:
      return "EmptyCounts";
    case ErrorCode::OptimizerStall:
      return "OptimizerStall";
    case ErrorCode::ConfigInvalid:
      return "ConfigInvalid";
    case ErrorCode::IoFailure:
      return "IoFailure";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace geophase
