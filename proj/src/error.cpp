// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ratnlevp/error.hpp"

namespace ratnlevp
{

std::string_view to_string(ErrorKind kind)
{
  switch (kind)
  {
    case ErrorKind::SingularMatrix:
      return "SingularMatrix";
    case ErrorKind::ConvergenceFailure:
      return "ConvergenceFailure";
    case ErrorKind::InvalidNodeCount:
      return "InvalidNodeCount";
    case ErrorKind::EvaluationFailure:
      return "EvaluationFailure";
    case ErrorKind::RegionNotInterior:
      return "RegionNotInterior";
    case ErrorKind::DimensionMismatch:
      return "DimensionMismatch";
    case ErrorKind::AtPole:
      return "AtPole";
    case ErrorKind::DimensionCap:
      return "DimensionCap";
    case ErrorKind::NotIdentityM:
      return "NotIdentityM";
    case ErrorKind::NotEigenpair:
      return "NotEigenpair";
    case ErrorKind::BoundViolated:
      return "BoundViolated";
    case ErrorKind::SingularAtNode:
      return "SingularAtNode";
    case ErrorKind::RankDeficientProbe:
      return "RankDeficientProbe";
    case ErrorKind::DegenerateBasis:
      return "DegenerateBasis";
    case ErrorKind::ParseError:
      return "ParseError";
    case ErrorKind::UnknownFunctionDescriptor:
      return "UnknownFunctionDescriptor";
    case ErrorKind::IncompatibleRuns:
      return "IncompatibleRuns";
    case ErrorKind::ConfigError:
      return "ConfigError";
    case ErrorKind::InvalidArgument:
      return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace ratnlevp
