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

// Sentence splitting, tokenization and the char <-> token <-> word maps.
//
// Three granularities index the same text:
//   word      maximal run of non-whitespace characters of the raw text
//   token     Moses-style piece of a word (punctuation detached)
//   sentence  run of words closed by a sentence terminator
// Tokens never cross word boundaries and sentences never split a word, so a
// token belongs to exactly one word and a word to exactly one sentence.
//
// Sentence rule. A sentence ends after a run of terminators [.?!…],
// optionally followed by closing quotes or brackets, when the run is
// followed by whitespace and then by an uppercase letter, a decimal digit,
// '¿', '¡' or an opening quote. A single '.' does not end a sentence when the
// word carrying it (leading brackets and quotes removed) is in the
// abbreviation list or is a single uppercase letter (an initial, "R.").
//
// Token rule table, applied inside each word:
//   1. Letters, marks and numbers form the token core.
//   2. A hyphen (- U+2010 U+2011 U+2012 U+2013) or apostrophe (' U+2019)
//      stays inside the token when both neighbours are alphanumeric.
//   3. '.' and ',' stay inside the token when both neighbours are digits.
//   4. Any other character is a token on its own; a run of the same
//      character ("...", "--") is a single token.
// Hence "(907-960)," -> "(" "907-960" ")" ",".

#ifndef TARQA_SEGMENTATION_H_
#define TARQA_SEGMENTATION_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace tarqa {

// Half-open range [start, end) of scalar-value offsets.
struct Span {
  size_t start = 0;
  size_t end = 0;

  size_t size() const { return end - start; }
  bool empty() const { return start == end; }
  bool Contains(const Span& other) const {
    return start <= other.start && other.end <= end;
  }
  bool operator==(const Span&) const = default;
};

struct Token {
  std::u32string text;
  Span span;

  bool operator==(const Token&) const = default;
};

class Abbreviations {
 public:
  Abbreviations() = default;

  // The list shipped in resources/abbreviations.txt.
  static const Abbreviations& Default();
  // One abbreviation per line; '#' comments and blank lines are skipped.
  static Abbreviations Parse(std::string_view content);
  static Abbreviations Load(const std::filesystem::path& path);

  bool Contains(std::u32string_view word) const;
  size_t size() const { return entries_.size(); }

 private:
  std::unordered_set<std::u32string> entries_;
};

std::vector<Span> SplitSentences(
    std::u32string_view text,
    const Abbreviations& abbreviations = Abbreviations::Default());

std::vector<Token> Tokenize(std::u32string_view text);

// Maximal whitespace-free runs.
std::vector<Span> SplitWords(std::u32string_view text);

struct SegmentedContext {
  std::u32string text;
  std::vector<Span> sentences;
  std::vector<Token> tokens;
  std::vector<Span> words;
  // token index -> index of the word containing it.
  std::vector<size_t> token_to_word;
  // char index -> word index. Whitespace maps to the following word, or to
  // the last word at the end of the text. Empty when the text has no words.
  std::vector<size_t> char_to_word;

  // Index of the sentence containing `char_index`; whitespace between
  // sentences belongs to the following sentence. Returns sentences.size()
  // when there is no such sentence.
  size_t SentenceAt(size_t char_index) const;
};

SegmentedContext BuildSegmentedContext(
    std::u32string text,
    const Abbreviations& abbreviations = Abbreviations::Default());

}  // namespace tarqa

#endif  // TARQA_SEGMENTATION_H_
