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

// Translator and word-aligner backends.
//
// Backends are selected with a `kind:parameter` string:
//
//   translators  identity | cache:<tsv> | lexicon:<tsv> | cmd:<shell command>
//   aligners     identity | file:<pharaoh> | ibm1[:<table tsv>] | cmd:<command>
//
// External commands speak a line protocol: newline-delimited UTF-8 on stdin,
// exactly one output line per input line on stdout. A nonzero exit status or
// a line-count mismatch is a BackendError. Aligner commands receive
// "src tokens ||| tgt tokens" lines (the fast_align/eflomal input format) and
// must print one Pharaoh line per pair.

#ifndef TARQA_BACKENDS_H_
#define TARQA_BACKENDS_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tarqa {

// ---------------------------------------------------------------------------
// Translation.

struct TranslatorSpec {
  enum class Kind { kIdentity, kCache, kLexicon, kCommand };

  Kind kind = Kind::kIdentity;
  // Cache or lexicon file path, or the shell command.
  std::string parameter;
  // Cache kind only: a miss falls back to identity instead of failing.
  bool lenient = false;

  // Throws std::invalid_argument on an unknown kind or missing parameter.
  static TranslatorSpec Parse(std::string_view text);
  std::string ToString() const;
};

class Translator {
 public:
  virtual ~Translator() = default;

  // Returns exactly lines.size() strings in input order. Lines must not
  // contain '\n'.
  virtual std::vector<std::string> TranslateBatch(
      const std::vector<std::string>& lines) = 0;
};

// Loads the cache or lexicon file eagerly; throws BackendError if it cannot
// be read.
std::unique_ptr<Translator> MakeTranslator(const TranslatorSpec& spec);

std::vector<std::string> TranslateBatch(const TranslatorSpec& spec,
                                        const std::vector<std::string>& lines);

// TSV `source<TAB>translation`; the first entry for a source wins. Keys are
// raw strings, no normalization.
std::unordered_map<std::string, std::string> LoadTranslationCache(
    const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Alignment.

// Zero-based (source token, target token) links of one sentence pair.
struct TokenAlignment {
  std::set<std::pair<size_t, size_t>> pairs;

  bool operator==(const TokenAlignment&) const = default;
};

// "0-0 1-2 2-1". Throws BackendError on a malformed link.
TokenAlignment ParsePharaoh(std::string_view line);
// Links in ascending (source, target) order, space separated.
std::string FormatPharaoh(const TokenAlignment& alignment);

struct SentencePair {
  std::vector<std::string> src;
  std::vector<std::string> tgt;
};

struct AlignerSpec {
  enum class Kind { kIdentity, kFile, kIbm1, kCommand };

  Kind kind = Kind::kIdentity;
  // Pharaoh file, lexical table (optional for ibm1) or shell command.
  std::string parameter;
  // ibm1 kind without a table: EM iterations run on the batch itself.
  int ibm1_iterations = 5;

  static AlignerSpec Parse(std::string_view text);
  std::string ToString() const;
};

class Aligner {
 public:
  virtual ~Aligner() = default;

  // One alignment per pair, in order. Every link is checked against the
  // pair's token counts.
  std::vector<TokenAlignment> AlignBatch(const std::vector<SentencePair>& pairs);

  TokenAlignment Align(const std::vector<std::string>& src_tokens,
                       const std::vector<std::string>& tgt_tokens);

 protected:
  virtual std::vector<TokenAlignment> DoAlignBatch(
      const std::vector<SentencePair>& pairs) = 0;
};

// A file aligner hands out its lines sequentially across calls, starting
// with line 0.
std::unique_ptr<Aligner> MakeAligner(const AlignerSpec& spec);

TokenAlignment AlignSentencePair(const AlignerSpec& spec,
                                 const std::vector<std::string>& src_tokens,
                                 const std::vector<std::string>& tgt_tokens);

// ---------------------------------------------------------------------------
// Subprocess bridge.

// Feeds `lines` to `command` through `sh -c` and returns its stdout lines.
// Throws BackendError on a nonzero exit or when the number of output lines
// differs from the number of input lines.
std::vector<std::string> RunLineCommand(const std::string& command,
                                        const std::vector<std::string>& lines);

}  // namespace tarqa

#endif  // TARQA_BACKENDS_H_
