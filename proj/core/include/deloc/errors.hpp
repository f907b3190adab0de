// Copyright 2026 The deloc Authors
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

namespace deloc {

/** Base class for all errors raised by the library. */
class DelocError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Operand shapes are incompatible with the requested operation. */
class DimensionError : public DelocError {
 public:
  using DelocError::DelocError;
};

/** A matrix that must be unitary is not, within tolerance. */
class NotUnitaryError : public DelocError {
 public:
  NotUnitaryError(const std::string& what, double deviation)
      : DelocError(what), deviation_(deviation) {}
  double deviation() const { return deviation_; }

 private:
  double deviation_;
};

class NotHermitianError : public DelocError {
 public:
  using DelocError::DelocError;
};

class NotProjectorError : public DelocError {
 public:
  using DelocError::DelocError;
};

/** A family passed to joint diagonalization does not commute. */
class NonCommutingError : public DelocError {
 public:
  NonCommutingError(const std::string& what, double commutator_norm)
      : DelocError(what), commutator_norm_(commutator_norm) {}
  double commutator_norm() const { return commutator_norm_; }

 private:
  double commutator_norm_;
};

class MalformedProtocolError : public DelocError {
 public:
  using DelocError::DelocError;
};

class MalformedFormError : public DelocError {
 public:
  using DelocError::DelocError;
};

class UnknownGateError : public DelocError {
 public:
  using DelocError::DelocError;
};

/** A state or input that must be normalized is not. */
class NormalizationError : public DelocError {
 public:
  using DelocError::DelocError;
};

/** A serialized file does not match its schema. */
class FormatError : public DelocError {
 public:
  using DelocError::DelocError;
};

/** Internal consistency check failed; indicates a bug, not bad input. */
class InternalError : public DelocError {
 public:
  using DelocError::DelocError;
};

}  // namespace deloc
