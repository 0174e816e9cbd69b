// Copyright 2026 The qia Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qia {

/// Malformed arguments or domain violations (bad shapes, mismatched sizes,
/// non-finite parameters).
class InvalidInputError : public std::invalid_argument {
  public:
    explicit InvalidInputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A request that would exceed a hard resource cap (e.g. dense operators
/// beyond the qubit limit).
class ResourceLimitError : public std::runtime_error {
  public:
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// File system and image decoding failures.
class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Pipeline grammar errors. `offset` is the byte position in the source text
/// where the problem was detected.
class ParseError : public InvalidInputError {
  public:
    ParseError(const std::string& what, std::size_t offset)
        : InvalidInputError(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const { return offset_; }

  private:
    std::size_t offset_;
};

}  // namespace qia
