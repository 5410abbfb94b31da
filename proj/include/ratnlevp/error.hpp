// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef RATNLEVP_ERROR_HPP
#define RATNLEVP_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace ratnlevp
{

enum class ErrorKind
{
  SingularMatrix,
  ConvergenceFailure,
  InvalidNodeCount,
  EvaluationFailure,
  RegionNotInterior,
  DimensionMismatch,
  AtPole,
  DimensionCap,
  NotIdentityM,
  NotEigenpair,
  BoundViolated,
  SingularAtNode,
  RankDeficientProbe,
  DegenerateBasis,
  ParseError,
  UnknownFunctionDescriptor,
  IncompatibleRuns,
  ConfigError,
  InvalidArgument
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error
{
public:
  Error(ErrorKind kind, const std::string &what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
  {
  }

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace ratnlevp

#endif  // RATNLEVP_ERROR_HPP
