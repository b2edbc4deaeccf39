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

// Answer retrieval in a translated context.
//
// Given the source answer span and an independent translation of the answer
// text, RetrieveAnswer finds the answer in the translated context:
//
//   1. The source answer covers words [w_start, w_end] (any word touched by
//      an answer character counts).
//   2. Those words are mapped through the context alignment; the mapped set
//      spans target words [min, max].
//   3. Direct match: the lowercased literal translation is searched in the
//      lowercased translated context starting at the first character of
//      target word `min` (or at 0 when nothing was mapped), then again from
//      0. A hit returns the context text at that position in its original
//      casing.
//   4. Otherwise, when something was mapped, the answer is the context text
//      from the start of word `min` to the end of word `max`.
//   5. Otherwise the answer is dropped (kNoAlignment).
//
// CleanupAnswer then cuts the span at the end of the sentence holding its
// start and strips leading/trailing punctuation and whitespace.

#ifndef TARQA_RETRIEVAL_H_
#define TARQA_RETRIEVAL_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tarqa/context_alignment.h"
#include "tarqa/segmentation.h"

namespace tarqa {

enum class RetrievalMethod { kDirectMatch, kAlignmentSpan };

enum class DropReason {
  kNoAlignment,
  kEmptyAfterCleanup,
  // The source answer did not match its context (lenient reads only).
  kInvalidSourceSpan,
};

std::string_view ToString(RetrievalMethod method);
std::string_view ToString(DropReason reason);

struct RetrievedAnswer {
  std::u32string text;
  size_t answer_start = 0;
  RetrievalMethod method = RetrievalMethod::kDirectMatch;
  std::optional<DropReason> dropped;
  // Independent translation of the source answer that was searched for.
  std::u32string literal;

  bool is_dropped() const { return dropped.has_value(); }
  Span span() const { return {answer_start, answer_start + text.size()}; }
  bool operator==(const RetrievedAnswer&) const = default;
};

// Word indices touched by chars [start, start + length), or empty when the
// range holds no word character.
std::vector<size_t> AnswerWordRange(const SegmentedContext& context,
                                    size_t start, size_t length);

RetrievedAnswer RetrieveAnswer(const SegmentedContext& src_context,
                               const SegmentedContext& tgt_context,
                               const ContextAlignment& alignment,
                               size_t src_answer_start,
                               std::u32string_view src_answer_text,
                               std::u32string_view literal_translation);

// Dropped answers are returned unchanged. Never widens the span.
RetrievedAnswer CleanupAnswer(RetrievedAnswer answer,
                              const SegmentedContext& tgt_context);

// Strips leading and trailing punctuation and whitespace to a fixpoint.
// Returns the kept sub-span of `text` as [begin, end).
Span StripEdgePunctuation(std::u32string_view text);

// Machine-detectable correlates of misaligned and overlapping spans.
enum class RiskTag {
  kCrossedSentence,
  kEdgePunctuation,
  kAlignmentFallback,
  kLowercaseMatchCaseChanged,
};

std::string_view ToString(RiskTag tag);

// `answer` is the retrieved answer (before or after cleanup; only its method
// and literal are read) and `pre_cleanup_text` the raw retrieved span.
//   kCrossedSentence            the raw span splits into several sentences
//   kEdgePunctuation            its first sentence has edge punctuation
//   kAlignmentFallback          retrieved by alignment span
//   kLowercaseMatchCaseChanged  direct match whose casing differs from the
//                               literal translation
std::vector<RiskTag> ClassifyErrorRisk(const RetrievedAnswer& answer,
                                       std::u32string_view pre_cleanup_text);

}  // namespace tarqa

#endif  // TARQA_RETRIEVAL_H_
