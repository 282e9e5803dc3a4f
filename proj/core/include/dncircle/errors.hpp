// Copyright 2026 The dncircle Authors
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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace dncircle {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a documented precondition (order mismatch, bad index, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Reciprocal of a jet whose constant term vanishes.
class SingularJetError : public Error {
 public:
  explicit SingularJetError(std::complex<double> constant_term)
      : Error("reciprocal of a jet with vanishing constant term"),
        constant_term_(constant_term) {}
  std::complex<double> constant_term() const noexcept { return constant_term_; }

 private:
  std::complex<double> constant_term_;
};

/// Normalization radicand is not positive; the superposition is degenerate.
class DegenerateStateError : public Error {
 public:
  using Error::Error;
};

/// A Fock truncation dimension is too small for the requested accuracy.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, std::size_t required_dim)
      : Error(what + " (required dim >= " + std::to_string(required_dim) + ")"),
        required_dim_(required_dim) {}
  std::size_t required_dim() const noexcept { return required_dim_; }

 private:
  std::size_t required_dim_;
};

/// Ratio with a vanishing denominator, e.g. a moment ratio on the vacuum.
class UndefinedRatioError : public Error {
 public:
  using Error::Error;
};

/// The state-vector simulation of the pulse sequence missed its target.
/// Signals an implementation or convention bug, never a user error.
class ProtocolMismatchError : public Error {
 public:
  ProtocolMismatchError(const std::string& what, double fidelity)
      : Error(what), fidelity_(fidelity) {}
  double fidelity() const noexcept { return fidelity_; }

 private:
  double fidelity_;
};

/// The Fokker-Planck kernel was requested at t = 0 where it is a delta.
class DeltaLimitError : public Error {
 public:
  using Error::Error;
};

/// mu(0) - lambda(0) vanishes, so the coherence measure is undefined.
class DegenerateSuperpositionError : public Error {
 public:
  using Error::Error;
};

/// Adaptive integrator could not reach its tolerance.
class StepSizeUnderflowError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature hit its node budget before converging.
class BudgetExhaustedError : public Error {
 public:
  BudgetExhaustedError(const std::string& what, double last_value, double last_change)
      : Error(what), last_value_(last_value), last_change_(last_change) {}
  double last_value() const noexcept { return last_value_; }
  double last_change() const noexcept { return last_change_; }

 private:
  double last_value_;
  double last_change_;
};

}  // namespace dncircle
