// Copyright 2026 The pglb Authors
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

#ifndef PGLB_ERROR_HPP_
#define PGLB_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pglb {

// Malformed program text or data file. Line and column are 1-based; 0 means
// the position is not known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line = 0,
             std::size_t column = 0)
      : std::runtime_error(format(message, line, column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line,
                            std::size_t column) {
    if (line == 0) return message;
    return std::to_string(line) + ":" + std::to_string(column) + ": " +
           message;
  }

  std::size_t line_;
  std::size_t column_;
};

// A request that is well formed but too large to carry out: truth tables
// with too many rows, services whose reachable state space exceeds the cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pglb

#endif  // PGLB_ERROR_HPP_
