// Copyright 2026 The critsense Authors
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
#include <string_view>

namespace critsense {

enum class ErrorKind {
  NotHermitian,
  DimMismatch,
  DimTooLarge,
  NotPositive,
  Degenerate,
  BxZero,
  NoRoot,
  NoExtremum,
  GapClosed,
  NonTerminating,
  PositivityLost,
  StepTooLarge,
  DegenerateLikelihood,
  BadRange,
  NonPositive,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a machine-readable kind so
/// that callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::DimTooLarge: return "DimTooLarge";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::BxZero: return "BxZero";
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::NoExtremum: return "NoExtremum";
    case ErrorKind::GapClosed: return "GapClosed";
    case ErrorKind::NonTerminating: return "NonTerminating";
    case ErrorKind::PositivityLost: return "PositivityLost";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::DegenerateLikelihood: return "DegenerateLikelihood";
    case ErrorKind::BadRange: return "BadRange";
    case ErrorKind::NonPositive: return "NonPositive";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace critsense
