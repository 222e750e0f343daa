// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace phasekit {

/// Base class for all library errors. Each subclass maps onto one CLI exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain input (exit code 1).
class InputError : public Error {
 public:
  using Error::Error;
};

/// No certificate exists where one is required, e.g. a phase of an indefinite system (exit code 2).
class IndefiniteError : public Error {
 public:
  using Error::Error;
};

/// A system that must be stable has a pole with nonnegative real part (exit code 3).
class UnstableError : public Error {
 public:
  UnstableError(const std::string& what, std::complex<double> witness)
      : Error(what), witness_(witness) {}
  std::complex<double> witness() const noexcept { return witness_; }

 private:
  std::complex<double> witness_;
};

/// Simulation blew up or the algebraic loop could not be solved (exit code 4).
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// The per-step loop equations of a feedback interconnection have no solution.
class WellPosednessError : public DivergenceError {
 public:
  using DivergenceError::DivergenceError;
};

}  // namespace phasekit
