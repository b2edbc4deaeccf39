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

#include "tarqa/segmentation.h"

#include <algorithm>
#include <sstream>

#include "tarqa/squad.h"
#include "tarqa/text.h"

namespace tarqa {
namespace {

// Generated from resources/abbreviations.txt at configure time.
constexpr std::string_view kDefaultAbbreviations =
#include "abbreviations_default.inc"
    ;

bool IsTerminator(char32_t c) {
  return c == U'.' || c == U'?' || c == U'!' || c == U'…';
}

bool IsClosing(char32_t c) {
  switch (c) {
    case U')': case U']': case U'}': case U'"': case U'\'':
    case U'»': case U'”': case U'’': case U'›':
      return true;
    default:
      return false;
  }
}

bool IsOpeningQuote(char32_t c) {
  switch (c) {
    case U'"': case U'\'': case U'«': case U'“': case U'‘': case U'„':
    case U'‹':
      return true;
    default:
      return false;
  }
}

bool IsOpeningBracketOrQuote(char32_t c) {
  return IsOpeningQuote(c) || c == U'(' || c == U'[' || c == U'{' ||
         c == U'¿' || c == U'¡';
}

bool StartsSentence(char32_t c) {
  return IsUppercase(c) || IsDecimalDigit(c) || c == U'¿' || c == U'¡' ||
         IsOpeningQuote(c);
}

bool IsHyphen(char32_t c) {
  return c == U'-' || c == U'‐' || c == U'‑' || c == U'‒' ||
         c == U'–';
}

bool IsApostrophe(char32_t c) { return c == U'\'' || c == U'’'; }

// True when the period at `dot` closes an abbreviation or an initial.
bool IsAbbreviationPeriod(std::u32string_view text, size_t dot,
                          const Abbreviations& abbreviations) {
  size_t begin = dot;
  while (begin > 0 && !IsWhitespace(text[begin - 1])) --begin;
  while (begin < dot && IsOpeningBracketOrQuote(text[begin])) ++begin;
  const std::u32string_view word = text.substr(begin, dot + 1 - begin);
  if (word.size() == 2 && IsUppercase(word[0])) return true;
  return abbreviations.Contains(word);
}

}  // namespace

const Abbreviations& Abbreviations::Default() {
  static const Abbreviations* const kDefault =
      new Abbreviations(Parse(kDefaultAbbreviations));
  return *kDefault;
}

Abbreviations Abbreviations::Parse(std::string_view content) {
  Abbreviations out;
  std::istringstream in{std::string(content)};
  std::string line;
  while (std::getline(in, line)) {
    const std::u32string decoded = DecodeUtf8(line);
    const std::u32string_view entry = TrimWhitespace(decoded);
    if (entry.empty() || entry.front() == U'#') continue;
    out.entries_.emplace(entry);
  }
  return out;
}

Abbreviations Abbreviations::Load(const std::filesystem::path& path) {
  return Parse(ReadTextFile(path));
}

bool Abbreviations::Contains(std::u32string_view word) const {
  return entries_.count(std::u32string(word)) > 0;
}

std::vector<Span> SplitSentences(std::u32string_view text,
                                 const Abbreviations& abbreviations) {
  std::vector<Span> sentences;
  const size_t n = text.size();
  size_t start = 0;
  while (start < n && IsWhitespace(text[start])) ++start;
  if (start == n) return sentences;

  size_t i = start;
  while (i < n) {
    if (!IsTerminator(text[i])) {
      ++i;
      continue;
    }
    size_t end = i;
    while (end < n && IsTerminator(text[end])) ++end;
    const bool single_period = end == i + 1 && text[i] == U'.';
    while (end < n && IsClosing(text[end])) ++end;

    size_t next = end;
    while (next < n && IsWhitespace(text[next])) ++next;
    const bool boundary = next > end && next < n && StartsSentence(text[next]);
    if (boundary &&
        !(single_period && IsAbbreviationPeriod(text, i, abbreviations))) {
      sentences.push_back({start, end});
      start = next;
    }
    i = end;
  }
  size_t last = n;
  while (last > start && IsWhitespace(text[last - 1])) --last;
  sentences.push_back({start, last});
  return sentences;
}

std::vector<Span> SplitWords(std::u32string_view text) {
  std::vector<Span> words;
  size_t i = 0;
  while (i < text.size()) {
    if (IsWhitespace(text[i])) {
      ++i;
      continue;
    }
    const size_t begin = i;
    while (i < text.size() && !IsWhitespace(text[i])) ++i;
    words.push_back({begin, i});
  }
  return words;
}

std::vector<Token> Tokenize(std::u32string_view text) {
  std::vector<Token> tokens;
  for (const Span& word : SplitWords(text)) {
    const std::u32string_view w = text.substr(word.start, word.size());
    auto joins = [&w](size_t k) {
      // Whether w[k], a non-alphanumeric, is glued to its neighbours.
      if (k == 0 || k + 1 >= w.size()) return false;
      const char32_t c = w[k];
      if (IsHyphen(c) || IsApostrophe(c)) {
        return IsAlphanumeric(w[k - 1]) && IsAlphanumeric(w[k + 1]);
      }
      if (c == U'.' || c == U',') {
        return IsDecimalDigit(w[k - 1]) && IsDecimalDigit(w[k + 1]);
      }
      return false;
    };
    size_t k = 0;
    while (k < w.size()) {
      const size_t begin = k;
      if (IsAlphanumeric(w[k])) {
        while (k < w.size() && (IsAlphanumeric(w[k]) || joins(k))) ++k;
      } else {
        const char32_t c = w[k];
        while (k < w.size() && w[k] == c) ++k;
      }
      tokens.push_back({std::u32string(w.substr(begin, k - begin)),
                        {word.start + begin, word.start + k}});
    }
  }
  return tokens;
}

size_t SegmentedContext::SentenceAt(size_t char_index) const {
  // First sentence whose end is beyond char_index.
  auto it = std::upper_bound(
      sentences.begin(), sentences.end(), char_index,
      [](size_t c, const Span& s) { return c < s.end; });
  return static_cast<size_t>(it - sentences.begin());
}

SegmentedContext BuildSegmentedContext(std::u32string text,
                                       const Abbreviations& abbreviations) {
  SegmentedContext seg;
  seg.text = std::move(text);
  seg.sentences = SplitSentences(seg.text, abbreviations);
  seg.tokens = Tokenize(seg.text);
  seg.words = SplitWords(seg.text);

  seg.token_to_word.reserve(seg.tokens.size());
  size_t w = 0;
  for (const Token& token : seg.tokens) {
    while (seg.words[w].end <= token.span.start) ++w;
    seg.token_to_word.push_back(w);
  }

  if (!seg.words.empty()) {
    seg.char_to_word.assign(seg.text.size(), seg.words.size() - 1);
    size_t next = 0;
    for (size_t c = 0; c < seg.text.size(); ++c) {
      while (next < seg.words.size() && seg.words[next].end <= c) ++next;
      if (next < seg.words.size()) seg.char_to_word[c] = next;
    }
  }
  return seg;
}

}  // namespace tarqa
