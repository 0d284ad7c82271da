// Copyright 2026 The qsense Authors
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

namespace qsense {

/// Caller passed something outside a function's domain (bad index, negative
/// time, non-unitary gate, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computed quantity violated an internal consistency bound
/// (negative probability, complex expectation value, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Postselection survival underflowed; the configuration never reaches readout.
class DegenerateConfigurationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The readout probability does not respond to the field.
class ZeroSensitivityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Bisection bracket shows no sign change.
class NoCrossingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace qsense
