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

// Unicode helpers shared by every module. All character offsets in this
// library count Unicode scalar values, so text is decoded to UTF-32 before
// any span arithmetic and encoded back to UTF-8 only at I/O boundaries.

#ifndef TARQA_TEXT_H_
#define TARQA_TEXT_H_

#include <string>
#include <string_view>

namespace tarqa {

// Throws std::invalid_argument on malformed UTF-8.
std::u32string DecodeUtf8(std::string_view utf8);
std::string EncodeUtf8(std::u32string_view text);

// Number of scalar values in a UTF-8 string.
size_t CodePointLength(std::string_view utf8);

// General category P* (connector, dash, open, close, initial, final, other).
bool IsPunctuation(char32_t c);
bool IsWhitespace(char32_t c);
// Letters, marks and numbers.
bool IsAlphanumeric(char32_t c);
bool IsUppercase(char32_t c);
bool IsDecimalDigit(char32_t c);

// Simple (one-to-one) lowercase mapping, no locale tailoring. Length
// preserving, so offsets computed on the lowercased text are valid on the
// original.
char32_t ToLowerSimple(char32_t c);
std::u32string ToLowerSimple(std::u32string_view text);

// Strips leading and trailing whitespace.
std::u32string_view TrimWhitespace(std::u32string_view text);

}  // namespace tarqa

#endif  // TARQA_TEXT_H_
