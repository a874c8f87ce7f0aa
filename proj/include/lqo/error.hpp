// Copyright 2026 The lqo-mor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lqo
{

enum class ErrorKind
{
  DimensionMismatch,
  SingularE,
  SingularShift,
  SizeCapExceeded,
  RepeatedPoles,
  NondiagonalizablePencil,
  SingularEr,
  InstabilityDetected,
  RankDeficient,
  ConjugacyViolation,
  EigSolverFailure,
  InvalidConfig,
  LengthMismatch,
  AllZeroReference,
  FactorizationFailure,
  NonFiniteState,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// True for errors caused by the numerics (as opposed to bad input or IO).
bool is_numerical(ErrorKind kind);

class Error : public std::runtime_error
{
public:
  Error(ErrorKind kind, const std::string &what);

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string &what);

// Writes to stderr unless warnings are silenced.
void warn(const std::string &message);
void set_warnings_enabled(bool enabled);

}  // namespace lqo
