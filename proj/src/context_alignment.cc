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

#include "tarqa/context_alignment.h"

#include <algorithm>

#include "tarqa/error.h"
#include "tarqa/text.h"

namespace tarqa {
namespace {

void CheckOffsets(std::span<const SentenceOffsets> offsets, size_t src_tokens,
                  size_t tgt_tokens) {
  for (size_t k = 0; k < offsets.size(); ++k) {
    if (offsets[k].src > src_tokens || offsets[k].tgt > tgt_tokens) {
      throw AlignmentError("sentence " + std::to_string(k) +
                           " token offsets exceed the context token counts");
    }
    if (k > 0 && (offsets[k].src < offsets[k - 1].src ||
                  offsets[k].tgt < offsets[k - 1].tgt)) {
      throw AlignmentError("sentence " + std::to_string(k) +
                           " token offsets are decreasing");
    }
  }
}

}  // namespace

ContextAlignment MergeSentenceAlignments(
    const SegmentedContext& src, const SegmentedContext& tgt,
    std::span<const TokenAlignment> per_sentence,
    std::span<const SentenceOffsets> offsets) {
  CheckOffsets(offsets, src.tokens.size(), tgt.tokens.size());

  ContextAlignment out;
  out.src_word_count = src.words.size();
  out.tgt_word_count = tgt.words.size();
  out.src_word_to_tgt_words.resize(out.src_word_count);

  const size_t paired = std::min(per_sentence.size(), offsets.size());
  out.unaligned_sentences = offsets.size() - paired;
  for (size_t k = 0; k < paired; ++k) {
    // Sentence k owns tokens up to the next sentence's offset.
    const size_t src_limit =
        k + 1 < offsets.size() ? offsets[k + 1].src : src.tokens.size();
    const size_t tgt_limit =
        k + 1 < offsets.size() ? offsets[k + 1].tgt : tgt.tokens.size();
    for (const auto& [i, j] : per_sentence[k].pairs) {
      const size_t src_token = i + offsets[k].src;
      const size_t tgt_token = j + offsets[k].tgt;
      if (src_token >= src_limit || tgt_token >= tgt_limit) {
        throw AlignmentError(
            "sentence " + std::to_string(k) + " link " + std::to_string(i) +
            "-" + std::to_string(j) + " falls outside the sentence tokens");
      }
      out.src_word_to_tgt_words[src.token_to_word[src_token]].push_back(
          tgt.token_to_word[tgt_token]);
    }
  }
  for (std::vector<size_t>& targets : out.src_word_to_tgt_words) {
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  }
  return out;
}

std::vector<size_t> MapWordPositions(const ContextAlignment& alignment,
                                     std::span<const size_t> src_words) {
  std::vector<size_t> mapped;
  for (size_t w : src_words) {
    if (w >= alignment.src_word_to_tgt_words.size()) continue;
    const std::vector<size_t>& targets = alignment.src_word_to_tgt_words[w];
    mapped.insert(mapped.end(), targets.begin(), targets.end());
  }
  std::sort(mapped.begin(), mapped.end());
  mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
  return mapped;
}

std::string DumpContextAlignment(const ContextAlignment& alignment,
                                 const SegmentedContext& src) {
  std::string out;
  for (size_t w = 0; w < alignment.src_word_to_tgt_words.size(); ++w) {
    out += std::to_string(w);
    out += '\t';
    if (w < src.words.size()) {
      out += EncodeUtf8(std::u32string_view(src.text).substr(
          src.words[w].start, src.words[w].size()));
    }
    out += "\t[";
    const std::vector<size_t>& targets = alignment.src_word_to_tgt_words[w];
    for (size_t k = 0; k < targets.size(); ++k) {
      if (k > 0) out += ',';
      out += std::to_string(targets[k]);
    }
    out += "]\n";
  }
  return out;
}

}  // namespace tarqa
