// Copyright 2026 The Ambient Corpus Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace ambient {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A single corpus record could not be turned into a Document.
class RecordError : public Error {
 public:
  enum class Kind { Malformed, MissingField, BadField, BadTimestamp };

  RecordError(Kind kind, std::string field, std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what),
        kind_(kind),
        field_(std::move(field)),
        line_(line) {}

  Kind kind() const noexcept { return kind_; }
  const std::string& field() const noexcept { return field_; }
  std::size_t line() const noexcept { return line_; }

 private:
  Kind kind_;
  std::string field_;
  std::size_t line_;
};

/// A file (lexicon, embeddings, labels, gazetteer, model) failed to load.
/// `row` is 1-based over data rows and 0 when the failure is not row-specific.
class LoadError : public Error {
 public:
  explicit LoadError(const std::string& what, std::size_t row = 0)
      : Error(row ? what + " (row " + std::to_string(row) + ")" : what), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};
class LensTooWide : public Error {
 public:
  using Error::Error;
};
class NoScoredTokens : public Error {
 public:
  using Error::Error;
};
class InsufficientDocuments : public Error {
 public:
  using Error::Error;
};
class SingleClassError : public Error {
 public:
  using Error::Error;
};
class TrainError : public Error {
 public:
  using Error::Error;
};
class PredictError : public Error {
 public:
  using Error::Error;
};
class EvalError : public Error {
 public:
  using Error::Error;
};
class ExhaustedSample : public Error {
 public:
  using Error::Error;
};
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A pipeline stage failed; `stage()` names it.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& cause)
      : Error("stage '" + stage + "' failed: " + cause), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace ambient
