// Copyright 2026 The mdist Authors
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

#ifndef MDIST_ERROR_H_
#define MDIST_ERROR_H_

#include <stdexcept>
#include <string>

namespace mdist {

// Base of every error raised by the library. The CLI maps InsufficientData
// to exit code 2 and everything else to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numeric parameter is outside its documented domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Malformed input file. `line()` is 1-based, 0 when not line-specific.
class ParseError : public Error {
 public:
  // Message is "line N: what", or "source:N: what" once a source is named.
  ParseError(const std::string& what, std::size_t line = 0, const std::string& source = "")
      : Error(Format(what, line, source)), detail_(what), line_(line) {}
  std::size_t line() const { return line_; }
  const std::string& detail() const { return detail_; }
  // Same error attributed to `source` (a file name).
  ParseError InSource(const std::string& source) const {
    return ParseError(detail_, line_, source);
  }

 private:
  static std::string Format(const std::string& what, std::size_t line,
                            const std::string& source) {
    if (line == 0) return source.empty() ? what : source + ": " + what;
    if (source.empty()) return "line " + std::to_string(line) + ": " + what;
    return source + ":" + std::to_string(line) + ": " + what;
  }

  std::string detail_;
  std::size_t line_;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class AlignmentError : public Error {
 public:
  using Error::Error;
};

// Cross-record consistency failures (duplicate labels, energy mismatch...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mdist

#endif  // MDIST_ERROR_H_
