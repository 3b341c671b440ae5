// Copyright 2026 The disent authors
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

#ifndef DISENT_ERRORS_HPP_
#define DISENT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace disent {

// Root of the library's exception hierarchy.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A value failed its type's structural contract (dimension, norm, simplex, ...).
struct InvariantViolation : Error {
  using Error::Error;
};

struct WrongDimension : InvariantViolation {
  using InvariantViolation::InvariantViolation;
};

struct DimensionOverflow : InvariantViolation {
  using InvariantViolation::InvariantViolation;
};

struct BadSubsystemIndex : InvariantViolation {
  using InvariantViolation::InvariantViolation;
};

struct NotHermitian : InvariantViolation {
  using InvariantViolation::InvariantViolation;
};

struct NotUnitary : InvariantViolation {
  using InvariantViolation::InvariantViolation;
};

struct NotAProjectorSet : InvariantViolation {
  using InvariantViolation::InvariantViolation;
};

struct BlochNormExceeded : InvariantViolation {
  using InvariantViolation::InvariantViolation;
};

struct LambdaOutOfRange : InvariantViolation {
  using InvariantViolation::InvariantViolation;
};

// A map whose Bell-mixture weights leave [0, 1]: no channel realizes it.
struct NotCompletelyPositive : InvariantViolation {
  using InvariantViolation::InvariantViolation;
};

// Optimizer found no feasible point even at lambda = 0. Guards a broken build;
// mathematically unreachable.
struct NoFeasiblePoint : Error {
  using Error::Error;
};

// A serialized state, map, or mixture does not match its documented layout.
struct ParseError : Error {
  using Error::Error;
};

// A path could not be opened for reading or writing.
struct FileError : Error {
  using Error::Error;
};

// The input is well-formed but outside a protocol's declared domain.
struct PremiseViolation : Error {
  using Error::Error;
};

// Classical-protocol premise: the teleported party's reduced state must be
// diagonal in the computational basis.
struct NotCommutingPremise : PremiseViolation {
  using PremiseViolation::PremiseViolation;
};

}  // namespace disent

#endif  // DISENT_ERRORS_HPP_
