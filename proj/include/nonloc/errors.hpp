// Copyright 2026 The nonloc Authors
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

namespace nonloc {

// Base for everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input data: out-of-domain parameters, malformed specs, non-states.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Matrix shapes that do not fit the requested operation.
class DimensionError : public DomainError {
 public:
  using DomainError::DomainError;
};

class NotHermitianError : public DomainError {
 public:
  using DomainError::DomainError;
};

// The closed-form path does not cover the requested parameter slice
// (t1 or t2 nonzero). Callers should fall back to the numeric PSD check.
class UnsupportedRegionError : public DomainError {
 public:
  using DomainError::DomainError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Jacobi did not converge within the sweep cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Two independent computation routes disagreed. Always a bug, never a data
// condition.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace nonloc
