// Copyright 2026 The Privbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRIVBOUND_ERRORS_H_
#define PRIVBOUND_ERRORS_H_

#include <stdexcept>
#include <string>

namespace privbound {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent inputs: mismatched outcome lists, records outside
// the alphabet, a declared sensitivity smaller than the realized one, etc.
class InputError : public Error {
 public:
  using Error::Error;
};

// The request is well formed but outside what the library computes exactly
// (e.g. sup over a continuous output family with no closed form).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// An explicit scan would exceed the configured materialization cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// A conditional object does not exist: conditioning on a zero-probability
// event, posterior given an outcome of marginal probability zero, zero prior
// odds.
class WellDefinednessError : public Error {
 public:
  using Error::Error;
};

// A bound was requested in a situation where the theory does not produce one.
// `reason()` is machine-readable ("empty-support" or "disconnected-support"),
// the what() string carries the human-readable context.
class UndefinedBoundError : public Error {
 public:
  UndefinedBoundError(std::string reason, const std::string& message)
      : Error(message), reason_(std::move(reason)) {}
  const std::string& reason() const { return reason_; }

 private:
  std::string reason_;
};

}  // namespace privbound

#endif  // PRIVBOUND_ERRORS_H_
