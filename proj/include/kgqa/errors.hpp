// Copyright 2026 The kgqa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace kgqa {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (KG files, datasets, checkpoints).
class DataError : public Error {
 public:
  using Error::Error;
};

// A parse failure at a known line of a text input.
class ParseError : public DataError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : DataError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Reference to an entity, predicate, token or parameter that does not exist.
class LookupError : public Error {
 public:
  using Error::Error;
};

// An argument violates a documented precondition.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Tensor shapes do not fit the operation.
class DimensionError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

// A model or training configuration that cannot be built.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

}  // namespace kgqa
