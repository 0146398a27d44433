// Copyright 2026 The TEA Indexer Authors.
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

#ifndef TEA_ERROR_H_
#define TEA_ERROR_H_

#include <stdexcept>
#include <string>

namespace tea {

// Error categories. The CLI maps each category onto an exit code, so every
// exception thrown by the library derives from one of the two bases below.

// Bad input or configuration supplied by the caller (exit code 1).
class UserError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failure while running a stage on otherwise valid input (exit code 2).
class RuntimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file could not be read or is not valid UTF-8.
class IngestionError : public UserError {
 public:
  using UserError::UserError;
};

// Structurally valid input that breaks a data-model invariant.
class ValidationError : public UserError {
 public:
  using UserError::UserError;
};

// Malformed text in one of the data file formats. Carries a 1-based line
// number when one is known (0 otherwise).
class ParseError : public UserError {
 public:
  ParseError(const std::string& what, int line = 0)
      : UserError(line > 0 ? what + " (line " + std::to_string(line) + ")"
                           : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class ConfigError : public UserError {
 public:
  using UserError::UserError;
};

// Statistics cannot be computed (e.g. corpus without any content token).
class StatsError : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};

// A function was called outside of its mathematical domain.
class DomainError : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};

class PipelineError : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};

// Index file checksum mismatch or truncated content.
class IntegrityError : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};

// Index file written by an incompatible format version.
class VersionError : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};

}  // namespace tea

#endif  // TEA_ERROR_H_
