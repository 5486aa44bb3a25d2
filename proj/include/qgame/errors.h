// Copyright 2026 The qgame Authors
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

#ifndef QGAME_ERRORS_H_
#define QGAME_ERRORS_H_

#include <stdexcept>
#include <string>

namespace qgame {

// Base class for every error raised by the library. The CLI maps any of
// these to exit code 2 (input error).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes or dimensions do not match.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A tensor product would exceed the configured dimension cap.
class DimensionLimitError : public Error {
 public:
  using Error::Error;
};

// A value violates a type invariant (non-unitary operator, trace != 1, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Kraus operators are not trace preserving.
class ChannelError : public Error {
 public:
  using Error::Error;
};

// A strategy parameter lies outside its family's range.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Catalog parameters violate an ordering constraint, or a name is unknown.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// The requested analysis is not supported for this input.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace qgame

#endif  // QGAME_ERRORS_H_
