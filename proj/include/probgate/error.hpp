// Copyright 2026 The Probgate Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace probgate {

/// Error codes shared by every layer of the library. The CLI maps them to
/// structured report entries and process exit codes.
enum class Errc {
    NonHermitianInput,
    NotPsd,
    AmbientTooSmall,
    GramMismatch,
    DependentInputs,
    LinearlyDependentPair,
    DimensionMismatch,
    InvalidProbeOverlap,
    EffOutOfRange,
    InfeasibleEfficiency,
    ZeroSuccessProbability,
    ParseError,
    NotNormalized,
};

inline const char* errc_name(Errc code) {
    switch (code) {
        case Errc::NonHermitianInput: return "NonHermitianInput";
        case Errc::NotPsd: return "NotPsd";
        case Errc::AmbientTooSmall: return "AmbientTooSmall";
        case Errc::GramMismatch: return "GramMismatch";
        case Errc::DependentInputs: return "DependentInputs";
        case Errc::LinearlyDependentPair: return "LinearlyDependentPair";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::InvalidProbeOverlap: return "InvalidProbeOverlap";
        case Errc::EffOutOfRange: return "EffOutOfRange";
        case Errc::InfeasibleEfficiency: return "InfeasibleEfficiency";
        case Errc::ZeroSuccessProbability: return "ZeroSuccessProbability";
        case Errc::ParseError: return "ParseError";
        case Errc::NotNormalized: return "NotNormalized";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }
    const char* name() const { return errc_name(code_); }

  private:
    Errc code_;
};

}  // namespace probgate
