// Copyright 2026 The Privometer Authors
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

#ifndef PRIVOMETER_ERRORS_HPP_
#define PRIVOMETER_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace privometer {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad user input: malformed files, out-of-range parameters, inconsistent
// configuration. Maps to process exit code 1.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

// Filesystem problems (missing file, unreadable path). Maps to exit code 1.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

// A measure was requested whose denominator is empty (for example precision
// with no positive predictions). Undefined measures are errors, never a
// silent 0 or 1: emitting an arbitrary stand-in would misstate risk.
class UndefinedMeasureError : public Error {
 public:
  explicit UndefinedMeasureError(const std::string& what) : Error(what) {}
};

// Precision improvement is undefined when the baseline is already perfect
// (p_base = 1): there is no improvement left to achieve. Callers that compare
// attacks against such a baseline must report a distinct "baseline already
// perfect" outcome instead of a number.
class SaturatedBaselineError : public Error {
 public:
  explicit SaturatedBaselineError(const std::string& what) : Error(what) {}
};

}  // namespace privometer

#endif  // PRIVOMETER_ERRORS_HPP_
