// Copyright 2026 The lqo-mor Authors
// SPDX-License-Identifier: Apache-2.0

#include "lqo/error.hpp"

#include <atomic>
#include <iostream>

namespace lqo
{

namespace
{
std::atomic<bool> warnings_enabled{true};
}

std::string_view to_string(ErrorKind kind)
{
  switch (kind)
  {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SingularE: return "SingularE";
    case ErrorKind::SingularShift: return "SingularShift";
    case ErrorKind::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorKind::RepeatedPoles: return "RepeatedPoles";
    case ErrorKind::NondiagonalizablePencil: return "NondiagonalizablePencil";
    case ErrorKind::SingularEr: return "SingularEr";
    case ErrorKind::InstabilityDetected: return "InstabilityDetected";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::ConjugacyViolation: return "ConjugacyViolation";
    case ErrorKind::EigSolverFailure: return "EigSolverFailure";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::AllZeroReference: return "AllZeroReference";
    case ErrorKind::FactorizationFailure: return "FactorizationFailure";
    case ErrorKind::NonFiniteState: return "NonFiniteState";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

bool is_numerical(ErrorKind kind)
{
  switch (kind)
  {
    case ErrorKind::DimensionMismatch:
    case ErrorKind::InvalidConfig:
    case ErrorKind::LengthMismatch:
    case ErrorKind::Io:
      return false;
    default:
      return true;
  }
}

Error::Error(ErrorKind kind, const std::string &what)
  : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
{
}

void fail(ErrorKind kind, const std::string &what)
{
  throw Error(kind, what);
}

void warn(const std::string &message)
{
  if (warnings_enabled.load(std::memory_order_relaxed))
  {
    std::cerr << "warning: " << message << '\n';
  }
}

void set_warnings_enabled(bool enabled)
{
  warnings_enabled.store(enabled, std::memory_order_relaxed);
}

}  // namespace lqo
