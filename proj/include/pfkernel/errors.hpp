/*
 * Copyright 2026 The pfkernel authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace pfkernel {

/// Shape or parity of an argument is wrong (odd Pfaffian dimension, mismatched dims).
class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Problem size exceeds what an operation supports (combinatorial oracles).
class SizeError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Invalid configuration of a measure, rule, histogram or CLI request.
class ConfigurationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Non-finite input where finite values are required.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A matrix that must be invertible is (numerically) singular.
class SingularityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A weight does not admit the requested skew-orthogonal family.
class DegeneracyError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Two internal computation paths disagree beyond tolerance.
class ConsistencyError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Numerical failure (eigensolver non-convergence and similar).
class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace pfkernel
