/*
 * Copyright 2026 The sspsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ssp/error.hpp"

namespace ssp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidPoint: return "InvalidPoint";
    case ErrorCode::InvalidScalar: return "InvalidScalar";
    case ErrorCode::MalformedMessage: return "MalformedMessage";
    case ErrorCode::NotReady: return "NotReady";
    case ErrorCode::UnsealFailure: return "UnsealFailure";
    case ErrorCode::WrongSlot: return "WrongSlot";
    case ErrorCode::OobUnavailable: return "OobUnavailable";
    case ErrorCode::CapabilityMissing: return "CapabilityMissing";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

}  // namespace ssp
