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

#include "tarqa/backends.h"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "tarqa/error.h"
#include "tarqa/ibm1.h"
#include "tarqa/squad.h"
#include "tarqa/text.h"

namespace tarqa {
namespace {

void CheckNoNewlines(const std::vector<std::string>& lines) {
  for (size_t k = 0; k < lines.size(); ++k) {
    if (lines[k].find('\n') != std::string::npos) {
      throw BackendError("input line " + std::to_string(k) +
                             " contains a newline",
                         k);
    }
  }
}

std::vector<std::string> SplitLines(const std::string& content) {
  std::vector<std::string> lines;
  std::istringstream in(content);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

// Whitespace-delimited pieces of a UTF-8 line.
std::vector<std::string> SplitOnWhitespace(const std::string& line) {
  const std::u32string text = DecodeUtf8(line);
  std::vector<std::string> pieces;
  size_t i = 0;
  while (i < text.size()) {
    if (IsWhitespace(text[i])) {
      ++i;
      continue;
    }
    const size_t begin = i;
    while (i < text.size() && !IsWhitespace(text[i])) ++i;
    pieces.push_back(EncodeUtf8(std::u32string_view(text).substr(begin, i - begin)));
  }
  return pieces;
}

std::string JoinTokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

class IdentityTranslator : public Translator {
 public:
  std::vector<std::string> TranslateBatch(
      const std::vector<std::string>& lines) override {
    CheckNoNewlines(lines);
    return lines;
  }
};

class CacheTranslator : public Translator {
 public:
  CacheTranslator(std::unordered_map<std::string, std::string> cache,
                  bool lenient)
      : cache_(std::move(cache)), lenient_(lenient) {}

  std::vector<std::string> TranslateBatch(
      const std::vector<std::string>& lines) override {
    CheckNoNewlines(lines);
    std::vector<std::string> out;
    out.reserve(lines.size());
    for (size_t k = 0; k < lines.size(); ++k) {
      auto it = cache_.find(lines[k]);
      if (it != cache_.end()) {
        out.push_back(it->second);
      } else if (lenient_) {
        out.push_back(lines[k]);
      } else {
        throw BackendError(
            "no translation cache entry for line " + std::to_string(k) +
                ": \"" + lines[k] + "\"",
            k);
      }
    }
    return out;
  }

 private:
  std::unordered_map<std::string, std::string> cache_;
  bool lenient_;
};

// Word-by-word substitution; out-of-vocabulary words pass through.
class LexiconTranslator : public Translator {
 public:
  explicit LexiconTranslator(std::unordered_map<std::string, std::string> lex)
      : lexicon_(std::move(lex)) {}

  std::vector<std::string> TranslateBatch(
      const std::vector<std::string>& lines) override {
    CheckNoNewlines(lines);
    std::vector<std::string> out;
    out.reserve(lines.size());
    for (const std::string& line : lines) {
      std::vector<std::string> words = SplitOnWhitespace(line);
      for (std::string& word : words) {
        auto it = lexicon_.find(word);
        if (it != lexicon_.end()) word = it->second;
      }
      out.push_back(JoinTokens(words));
    }
    return out;
  }

 private:
  std::unordered_map<std::string, std::string> lexicon_;
};

class CommandTranslator : public Translator {
 public:
  explicit CommandTranslator(std::string command)
      : command_(std::move(command)) {}

  std::vector<std::string> TranslateBatch(
      const std::vector<std::string>& lines) override {
    CheckNoNewlines(lines);
    return RunLineCommand(command_, lines);
  }

 private:
  std::string command_;
};

class IdentityAligner : public Aligner {
 protected:
  std::vector<TokenAlignment> DoAlignBatch(
      const std::vector<SentencePair>& pairs) override {
    std::vector<TokenAlignment> out(pairs.size());
    for (size_t k = 0; k < pairs.size(); ++k) {
      const size_t n = std::min(pairs[k].src.size(), pairs[k].tgt.size());
      for (size_t i = 0; i < n; ++i) out[k].pairs.emplace(i, i);
    }
    return out;
  }
};

class FileAligner : public Aligner {
 public:
  explicit FileAligner(const std::filesystem::path& path)
      : path_(path.string()), lines_(SplitLines(ReadTextFile(path))) {}

 protected:
  std::vector<TokenAlignment> DoAlignBatch(
      const std::vector<SentencePair>& pairs) override {
    std::vector<TokenAlignment> out;
    out.reserve(pairs.size());
    for (size_t k = 0; k < pairs.size(); ++k) {
      if (cursor_ >= lines_.size()) {
        throw BackendError("alignment file " + path_ + " has no line " +
                               std::to_string(cursor_) + " (it has " +
                               std::to_string(lines_.size()) + " lines)",
                           k);
      }
      try {
        out.push_back(ParsePharaoh(lines_[cursor_]));
      } catch (const BackendError& e) {
        throw BackendError(path_ + " line " + std::to_string(cursor_ + 1) +
                               ": " + e.what(),
                           k);
      }
      ++cursor_;
    }
    return out;
  }

 private:
  std::string path_;
  std::vector<std::string> lines_;
  size_t cursor_ = 0;
};

class Ibm1Aligner : public Aligner {
 public:
  Ibm1Aligner(std::optional<LexicalTable> table, int iterations)
      : table_(std::move(table)), iterations_(iterations) {}

 protected:
  std::vector<TokenAlignment> DoAlignBatch(
      const std::vector<SentencePair>& pairs) override {
    LexicalTable trained;
    const LexicalTable* table = table_ ? &*table_ : nullptr;
    if (table == nullptr) {
      std::vector<SentencePair> corpus;
      for (const SentencePair& p : pairs)
        if (!p.src.empty() && !p.tgt.empty()) corpus.push_back(p);
      if (!corpus.empty()) trained = TrainIbm1(corpus, iterations_).table;
      table = &trained;
    }
    std::vector<TokenAlignment> out;
    out.reserve(pairs.size());
    for (const SentencePair& p : pairs) {
      out.push_back(Ibm1Align(*table, p.src, p.tgt));
    }
    return out;
  }

 private:
  std::optional<LexicalTable> table_;
  int iterations_;
};

class CommandAligner : public Aligner {
 public:
  explicit CommandAligner(std::string command) : command_(std::move(command)) {}

 protected:
  std::vector<TokenAlignment> DoAlignBatch(
      const std::vector<SentencePair>& pairs) override {
    std::vector<std::string> lines;
    lines.reserve(pairs.size());
    for (const SentencePair& p : pairs) {
      lines.push_back(JoinTokens(p.src) + " ||| " + JoinTokens(p.tgt));
    }
    const std::vector<std::string> output = RunLineCommand(command_, lines);
    std::vector<TokenAlignment> out;
    out.reserve(output.size());
    for (size_t k = 0; k < output.size(); ++k) {
      try {
        out.push_back(ParsePharaoh(output[k]));
      } catch (const BackendError& e) {
        throw BackendError("aligner output line " + std::to_string(k + 1) +
                               ": " + e.what(),
                           k);
      }
    }
    return out;
  }

 private:
  std::string command_;
};

std::pair<std::string_view, std::string_view> SplitKind(std::string_view text) {
  const size_t colon = text.find(':');
  if (colon == std::string_view::npos) return {text, {}};
  return {text.substr(0, colon), text.substr(colon + 1)};
}

bool ParseIndex(std::string_view s, size_t& value) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

TranslatorSpec TranslatorSpec::Parse(std::string_view text) {
  const auto [kind, parameter] = SplitKind(text);
  TranslatorSpec spec;
  spec.parameter = std::string(parameter);
  if (kind == "identity") {
    spec.kind = Kind::kIdentity;
    return spec;
  }
  if (kind == "cache") {
    spec.kind = Kind::kCache;
  } else if (kind == "lexicon") {
    spec.kind = Kind::kLexicon;
  } else if (kind == "cmd") {
    spec.kind = Kind::kCommand;
  } else {
    throw std::invalid_argument("unknown translator kind \"" +
                                std::string(kind) +
                                "\" (expected identity, cache, lexicon, cmd)");
  }
  if (spec.parameter.empty()) {
    throw std::invalid_argument("translator kind \"" + std::string(kind) +
                                "\" needs a parameter, e.g. " +
                                std::string(kind) + ":<value>");
  }
  return spec;
}

std::string TranslatorSpec::ToString() const {
  switch (kind) {
    case Kind::kIdentity: return "identity";
    case Kind::kCache: return "cache:" + parameter;
    case Kind::kLexicon: return "lexicon:" + parameter;
    case Kind::kCommand: return "cmd:" + parameter;
  }
  return {};
}

std::unordered_map<std::string, std::string> LoadTranslationCache(
    const std::filesystem::path& path) {
  std::string content;
  try {
    content = ReadTextFile(path);
  } catch (const Error& e) {
    throw BackendError(e.what());
  }
  std::unordered_map<std::string, std::string> cache;
  size_t line_number = 0;
  for (const std::string& line : SplitLines(content)) {
    ++line_number;
    if (line.empty()) continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw BackendError(path.string() + " line " +
                         std::to_string(line_number) + ": missing TAB");
    }
    cache.emplace(line.substr(0, tab), line.substr(tab + 1));
  }
  return cache;
}

std::unique_ptr<Translator> MakeTranslator(const TranslatorSpec& spec) {
  switch (spec.kind) {
    case TranslatorSpec::Kind::kIdentity:
      return std::make_unique<IdentityTranslator>();
    case TranslatorSpec::Kind::kCache:
      return std::make_unique<CacheTranslator>(
          LoadTranslationCache(spec.parameter), spec.lenient);
    case TranslatorSpec::Kind::kLexicon:
      return std::make_unique<LexiconTranslator>(
          LoadTranslationCache(spec.parameter));
    case TranslatorSpec::Kind::kCommand:
      return std::make_unique<CommandTranslator>(spec.parameter);
  }
  throw std::logic_error("unhandled translator kind");
}

std::vector<std::string> TranslateBatch(const TranslatorSpec& spec,
                                        const std::vector<std::string>& lines) {
  return MakeTranslator(spec)->TranslateBatch(lines);
}

TokenAlignment ParsePharaoh(std::string_view line) {
  TokenAlignment alignment;
  size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    const size_t begin = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r')
      ++i;
    const std::string_view link = line.substr(begin, i - begin);
    const size_t dash = link.find('-');
    size_t src = 0;
    size_t tgt = 0;
    if (dash == std::string_view::npos || !ParseIndex(link.substr(0, dash), src) ||
        !ParseIndex(link.substr(dash + 1), tgt)) {
      throw BackendError("malformed Pharaoh link \"" + std::string(link) +
                         "\"");
    }
    alignment.pairs.emplace(src, tgt);
  }
  return alignment;
}

std::string FormatPharaoh(const TokenAlignment& alignment) {
  std::string out;
  for (const auto& [src, tgt] : alignment.pairs) {
    if (!out.empty()) out += ' ';
    out += std::to_string(src) + '-' + std::to_string(tgt);
  }
  return out;
}

AlignerSpec AlignerSpec::Parse(std::string_view text) {
  const auto [kind, parameter] = SplitKind(text);
  AlignerSpec spec;
  spec.parameter = std::string(parameter);
  if (kind == "identity") {
    spec.kind = Kind::kIdentity;
    return spec;
  }
  if (kind == "ibm1") {
    spec.kind = Kind::kIbm1;
    return spec;
  }
  if (kind == "file") {
    spec.kind = Kind::kFile;
  } else if (kind == "cmd") {
    spec.kind = Kind::kCommand;
  } else {
    throw std::invalid_argument("unknown aligner kind \"" + std::string(kind) +
                                "\" (expected identity, file, ibm1, cmd)");
  }
  if (spec.parameter.empty()) {
    throw std::invalid_argument("aligner kind \"" + std::string(kind) +
                                "\" needs a parameter, e.g. " +
                                std::string(kind) + ":<value>");
  }
  return spec;
}

std::string AlignerSpec::ToString() const {
  switch (kind) {
    case Kind::kIdentity: return "identity";
    case Kind::kFile: return "file:" + parameter;
    case Kind::kIbm1: return parameter.empty() ? "ibm1" : "ibm1:" + parameter;
    case Kind::kCommand: return "cmd:" + parameter;
  }
  return {};
}

std::vector<TokenAlignment> Aligner::AlignBatch(
    const std::vector<SentencePair>& pairs) {
  std::vector<TokenAlignment> out = DoAlignBatch(pairs);
  if (out.size() != pairs.size()) {
    throw BackendError("aligner returned " + std::to_string(out.size()) +
                       " alignments for " + std::to_string(pairs.size()) +
                       " sentence pairs");
  }
  for (size_t k = 0; k < pairs.size(); ++k) {
    for (const auto& [src, tgt] : out[k].pairs) {
      if (src >= pairs[k].src.size() || tgt >= pairs[k].tgt.size()) {
        throw BackendError(
            "alignment link " + std::to_string(src) + "-" +
                std::to_string(tgt) + " out of range for sentence pair " +
                std::to_string(k) + " with " +
                std::to_string(pairs[k].src.size()) + " source and " +
                std::to_string(pairs[k].tgt.size()) + " target tokens",
            k);
      }
    }
  }
  return out;
}

TokenAlignment Aligner::Align(const std::vector<std::string>& src_tokens,
                              const std::vector<std::string>& tgt_tokens) {
  return AlignBatch({SentencePair{src_tokens, tgt_tokens}}).front();
}

std::unique_ptr<Aligner> MakeAligner(const AlignerSpec& spec) {
  switch (spec.kind) {
    case AlignerSpec::Kind::kIdentity:
      return std::make_unique<IdentityAligner>();
    case AlignerSpec::Kind::kFile:
      try {
        return std::make_unique<FileAligner>(spec.parameter);
      } catch (const BackendError&) {
        throw;
      } catch (const Error& e) {
        throw BackendError(e.what());
      }
    case AlignerSpec::Kind::kIbm1: {
      std::optional<LexicalTable> table;
      if (!spec.parameter.empty()) {
        try {
          table = LexicalTable::Load(spec.parameter);
        } catch (const BackendError&) {
          throw;
        } catch (const Error& e) {
          throw BackendError(e.what());
        }
      }
      return std::make_unique<Ibm1Aligner>(std::move(table),
                                           spec.ibm1_iterations);
    }
    case AlignerSpec::Kind::kCommand:
      return std::make_unique<CommandAligner>(spec.parameter);
  }
  throw std::logic_error("unhandled aligner kind");
}

TokenAlignment AlignSentencePair(const AlignerSpec& spec,
                                 const std::vector<std::string>& src_tokens,
                                 const std::vector<std::string>& tgt_tokens) {
  return MakeAligner(spec)->Align(src_tokens, tgt_tokens);
}

std::vector<std::string> RunLineCommand(const std::string& command,
                                        const std::vector<std::string>& lines) {
  if (lines.empty()) return {};

  std::string input_path =
      (std::filesystem::temp_directory_path() / "tarqa-input-XXXXXX").string();
  const int fd = mkstemp(input_path.data());
  if (fd < 0) throw BackendError("cannot create temporary input file");
  {
    std::string payload;
    for (const std::string& line : lines) {
      payload += line;
      payload += '\n';
    }
    size_t written = 0;
    while (written < payload.size()) {
      const ssize_t n =
          write(fd, payload.data() + written, payload.size() - written);
      if (n <= 0) {
        close(fd);
        std::filesystem::remove(input_path);
        throw BackendError("cannot write temporary input file");
      }
      written += static_cast<size_t>(n);
    }
    close(fd);
  }

  const std::string shell = "(" + command + ") < '" + input_path + "'";
  FILE* pipe = popen(shell.c_str(), "r");
  if (pipe == nullptr) {
    std::filesystem::remove(input_path);
    throw BackendError("cannot start command: " + command);
  }
  std::string output;
  char buffer[1 << 14];
  size_t n;
  while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) output.append(buffer, n);
  const int status = pclose(pipe);
  std::filesystem::remove(input_path);

  if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    throw BackendError("command failed (status " +
                       std::to_string(WIFEXITED(status) ? WEXITSTATUS(status)
                                                        : status) +
                       "): " + command);
  }
  std::vector<std::string> result = SplitLines(output);
  if (result.size() != lines.size()) {
    throw BackendError("command returned " + std::to_string(result.size()) +
                       " lines for " + std::to_string(lines.size()) +
                       " input lines: " + command);
  }
  return result;
}

}  // namespace tarqa
