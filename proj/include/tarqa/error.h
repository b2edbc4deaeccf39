// Copyright 2026 The TarQA Authors.
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

#ifndef TARQA_ERROR_H_
#define TARQA_ERROR_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace tarqa {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed dataset files, schema violations and span inconsistencies.
class DatasetError : public Error {
 public:
  using Error::Error;
};

// Translator or aligner failures. `line` is the zero-based index of the
// offending input line within the batch, when known.
class BackendError : public Error {
 public:
  explicit BackendError(const std::string& message,
                        std::optional<size_t> line = std::nullopt)
      : Error(message), line_(line) {}

  std::optional<size_t> line() const { return line_; }

 private:
  std::optional<size_t> line_;
};

// Inconsistent inputs to alignment merging.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

}  // namespace tarqa

#endif  // TARQA_ERROR_H_
