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

#include "tarqa/retrieval.h"

#include <algorithm>

#include "tarqa/text.h"

namespace tarqa {

std::string_view ToString(RetrievalMethod method) {
  switch (method) {
    case RetrievalMethod::kDirectMatch: return "DirectMatch";
    case RetrievalMethod::kAlignmentSpan: return "AlignmentSpan";
  }
  return "?";
}

std::string_view ToString(DropReason reason) {
  switch (reason) {
    case DropReason::kNoAlignment: return "NoAlignment";
    case DropReason::kEmptyAfterCleanup: return "EmptyAfterCleanup";
    case DropReason::kInvalidSourceSpan: return "InvalidSourceSpan";
  }
  return "?";
}

std::string_view ToString(RiskTag tag) {
  switch (tag) {
    case RiskTag::kCrossedSentence: return "CrossedSentence";
    case RiskTag::kEdgePunctuation: return "EdgePunctuation";
    case RiskTag::kAlignmentFallback: return "AlignmentFallback";
    case RiskTag::kLowercaseMatchCaseChanged: return "LowercaseMatchCaseChanged";
  }
  return "?";
}

std::vector<size_t> AnswerWordRange(const SegmentedContext& context,
                                    size_t start, size_t length) {
  const size_t end = std::min(start + length, context.text.size());
  size_t first = start;
  while (first < end && IsWhitespace(context.text[first])) ++first;
  size_t last = end;
  while (last > first && IsWhitespace(context.text[last - 1])) --last;
  if (first >= last) return {};
  std::vector<size_t> words;
  for (size_t w = context.char_to_word[first];
       w <= context.char_to_word[last - 1]; ++w) {
    words.push_back(w);
  }
  return words;
}

RetrievedAnswer RetrieveAnswer(const SegmentedContext& src_context,
                               const SegmentedContext& tgt_context,
                               const ContextAlignment& alignment,
                               size_t src_answer_start,
                               std::u32string_view src_answer_text,
                               std::u32string_view literal_translation) {
  RetrievedAnswer out;
  out.literal = std::u32string(literal_translation);

  const std::vector<size_t> src_words =
      AnswerWordRange(src_context, src_answer_start, src_answer_text.size());
  const std::vector<size_t> mapped = MapWordPositions(alignment, src_words);

  // MapWordPositions returns a sorted set, so min/max are its ends.
  const std::optional<size_t> first_word =
      mapped.empty() ? std::nullopt : std::optional<size_t>(mapped.front());

  const std::u32string_view needle_raw = TrimWhitespace(literal_translation);
  if (!needle_raw.empty()) {
    const std::u32string needle = ToLowerSimple(needle_raw);
    const std::u32string haystack = ToLowerSimple(tgt_context.text);
    const size_t from =
        first_word && *first_word < tgt_context.words.size()
            ? tgt_context.words[*first_word].start
            : 0;
    size_t hit = haystack.find(needle, from);
    if (hit == std::u32string::npos && from > 0) hit = haystack.find(needle);
    if (hit != std::u32string::npos) {
      out.method = RetrievalMethod::kDirectMatch;
      out.answer_start = hit;
      out.text = tgt_context.text.substr(hit, needle.size());
      return out;
    }
  }

  if (first_word && mapped.back() < tgt_context.words.size()) {
    const Span& first = tgt_context.words[mapped.front()];
    const Span& last = tgt_context.words[mapped.back()];
    out.method = RetrievalMethod::kAlignmentSpan;
    out.answer_start = first.start;
    out.text = tgt_context.text.substr(first.start, last.end - first.start);
    return out;
  }

  out.method = RetrievalMethod::kAlignmentSpan;
  out.dropped = DropReason::kNoAlignment;
  return out;
}

Span StripEdgePunctuation(std::u32string_view text) {
  size_t begin = 0;
  size_t end = text.size();
  auto strippable = [](char32_t c) {
    return IsPunctuation(c) || IsWhitespace(c);
  };
  while (begin < end && strippable(text[begin])) ++begin;
  while (end > begin && strippable(text[end - 1])) --end;
  return {begin, end};
}

RetrievedAnswer CleanupAnswer(RetrievedAnswer answer,
                              const SegmentedContext& tgt_context) {
  if (answer.is_dropped()) return answer;

  size_t start = answer.answer_start;
  size_t end = start + answer.text.size();
  const size_t sentence = tgt_context.SentenceAt(start);
  if (sentence < tgt_context.sentences.size()) {
    end = std::min(end, tgt_context.sentences[sentence].end);
  }
  end = std::max(end, start);

  const std::u32string_view window =
      std::u32string_view(tgt_context.text).substr(start, end - start);
  const Span kept = StripEdgePunctuation(window);
  if (kept.empty()) {
    answer.text.clear();
    answer.dropped = DropReason::kEmptyAfterCleanup;
    return answer;
  }
  answer.answer_start = start + kept.start;
  answer.text = std::u32string(window.substr(kept.start, kept.size()));
  return answer;
}

std::vector<RiskTag> ClassifyErrorRisk(const RetrievedAnswer& answer,
                                       std::u32string_view pre_cleanup_text) {
  std::vector<RiskTag> tags;
  const std::vector<Span> sentences = SplitSentences(pre_cleanup_text);
  if (sentences.size() > 1) tags.push_back(RiskTag::kCrossedSentence);
  if (!sentences.empty()) {
    const std::u32string_view head =
        pre_cleanup_text.substr(sentences[0].start, sentences[0].size());
    if (IsPunctuation(head.front()) || IsPunctuation(head.back())) {
      tags.push_back(RiskTag::kEdgePunctuation);
    }
  }
  if (answer.method == RetrievalMethod::kAlignmentSpan) {
    tags.push_back(RiskTag::kAlignmentFallback);
  } else if (TrimWhitespace(pre_cleanup_text) !=
             TrimWhitespace(answer.literal)) {
    tags.push_back(RiskTag::kLowercaseMatchCaseChanged);
  }
  return tags;
}

}  // namespace tarqa
