// SPDX-License-Identifier: Apache-2.0
//
// subsynth - compressive-sensing subarray synthesis for non-uniform linear arrays
// Copyright (C) 2026 the subsynth contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace subsynth {

/// Base class for all library-specific failures. Precondition violations
/// throw std::invalid_argument instead.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Numerical solver failure (ill-posed system, no convergence).
class SolverError : public Error {
  public:
    using Error::Error;
};

/// A least-squares system was detected as rank-deficient. Carries the rank
/// found by the factorization.
class RankDeficientError : public SolverError {
  public:
    RankDeficientError(const std::string &what, long detected_rank, long columns)
        : SolverError(what), detected_rank_(detected_rank), columns_(columns) {}

    long detected_rank() const { return detected_rank_; }
    long columns() const { return columns_; }

  private:
    long detected_rank_;
    long columns_;
};

/// Reference-pattern generation failed (e.g. unusable taper parameters).
class GenerationError : public Error {
  public:
    using Error::Error;
};

/// File parsing / serialization failure.
class IoError : public Error {
  public:
    using Error::Error;
};

} // namespace subsynth
