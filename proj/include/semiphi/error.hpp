// Copyright 2026 The semiphi Authors
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

namespace semiphi {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand dimensions do not fit together.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A value violates a structural invariant of its type (e.g. a matrix that
/// is supposed to be hermitian is not, an element escapes its algebra).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition of an operation does not hold.  Distinct from
/// ValidationError: the inputs are well formed, the property is refuted.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The input map is not completely positive.
class NotCompletelyPositive : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// The obstruction phi(<F^perp, E>) is nonzero, so no phi-map extension
/// exists.
class ObstructionError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A numerical certificate (residual, contraction bound, reconstruction
/// identity) failed beyond tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace semiphi
