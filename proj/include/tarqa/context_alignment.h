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

// Word-level alignment of a whole context paragraph and its translation,
// assembled from per-sentence token alignments.

#ifndef TARQA_CONTEXT_ALIGNMENT_H_
#define TARQA_CONTEXT_ALIGNMENT_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tarqa/backends.h"
#include "tarqa/segmentation.h"

namespace tarqa {

// Index of the first token of a sentence within its context, on each side.
struct SentenceOffsets {
  size_t src = 0;
  size_t tgt = 0;

  bool operator==(const SentenceOffsets&) const = default;
};

struct ContextAlignment {
  // Source word index -> sorted, unique target word indices. Always
  // src_word_count entries; unaligned words have an empty list.
  std::vector<std::vector<size_t>> src_word_to_tgt_words;
  size_t src_word_count = 0;
  size_t tgt_word_count = 0;
  // Sentences that had no alignment to pair with (count mismatch).
  size_t unaligned_sentences = 0;

  bool operator==(const ContextAlignment&) const = default;
};

// Each sentence-local link (i, j) of per_sentence[k] becomes the context
// token link (i + offsets[k].src, j + offsets[k].tgt), which is then lifted
// to words through token_to_word on both sides. When per_sentence and
// offsets differ in length, sentences are paired positionally up to the
// shorter list and the rest stay unaligned.
//
// Throws AlignmentError when offsets are decreasing or out of range, or a
// link falls outside the token range of the context.
ContextAlignment MergeSentenceAlignments(
    const SegmentedContext& src, const SegmentedContext& tgt,
    std::span<const TokenAlignment> per_sentence,
    std::span<const SentenceOffsets> offsets);

// Union of the target words linked to any of `src_words`, sorted. Words
// outside the alignment contribute nothing.
std::vector<size_t> MapWordPositions(const ContextAlignment& alignment,
                                     std::span<const size_t> src_words);

// One line per source word: `index<TAB>word<TAB>[t1,t2,...]`.
std::string DumpContextAlignment(const ContextAlignment& alignment,
                                 const SegmentedContext& src);

}  // namespace tarqa

#endif  // TARQA_CONTEXT_ALIGNMENT_H_
