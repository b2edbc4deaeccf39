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

#include "tarqa/cli.h"

#include <algorithm>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "tarqa/backends.h"
#include "tarqa/error.h"
#include "tarqa/evaluation.h"
#include "tarqa/ibm1.h"
#include "tarqa/pipeline.h"
#include "tarqa/squad.h"
#include "tarqa/text.h"

namespace tarqa {
namespace {

struct TranslateFlags {
  std::string input;
  std::string output_prefix;
  std::string translator = "identity";
  std::string translator_cmd;
  std::string aligner = "identity";
  std::string aligner_cmd;
  bool small = false;
  bool lenient = false;
  size_t workers = 1;
  std::string language = "es";
  std::string abbrev_file;
  int ibm1_iters = 5;
};

struct StatsFlags {
  std::string input;
  std::string source;
  bool json = false;
};

struct AuditFlags {
  std::string audit;
  bool json = false;
};

struct EvalFlags {
  std::string gold;
  std::string pred;
  std::string language = "es";
};

struct AlignTrainFlags {
  std::string src;
  std::string tgt;
  int iters = 5;
  std::string out;
};

std::string Stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

int CmdTranslate(const TranslateFlags& flags, std::ostream& out,
                 std::ostream& err) {
  PipelineConfig config;
  config.translator = TranslatorSpec::Parse(
      flags.translator_cmd.empty() ? flags.translator
                                   : "cmd:" + flags.translator_cmd);
  config.aligner = AlignerSpec::Parse(
      flags.aligner_cmd.empty() ? flags.aligner : "cmd:" + flags.aligner_cmd);
  config.aligner.ibm1_iterations = flags.ibm1_iters;
  config.emit_small_variant = flags.small;
  config.lenient = flags.lenient;
  config.worker_count = flags.workers;
  std::optional<Abbreviations> abbreviations;
  if (!flags.abbrev_file.empty()) {
    abbreviations = Abbreviations::Load(flags.abbrev_file);
    config.abbreviations = &*abbreviations;
  }

  ReadOptions read_options;
  read_options.lenient = flags.lenient;
  const Dataset source = ReadDataset(flags.input, read_options);
  err << "read " << source.QuestionCount() << " questions, "
      << source.AnswerCount() << " answers from " << flags.input << "\n";

  const PipelineResult result = RunPipeline(source, config);

  const std::string prefix = flags.output_prefix;
  WriteDataset(result.full, prefix + ".json");
  if (result.small) WriteDataset(*result.small, prefix + "-small.json");

  std::string audit;
  size_t dropped = 0;
  for (const AuditRecord& record : result.audit) {
    audit += AuditToJson(record).dump();
    audit += '\n';
    if (record.dropped) {
      ++dropped;
      err << "dropped answer " << record.answer_index << " of QA "
          << record.qa_id << ": " << ToString(*record.dropped) << "\n";
    }
  }
  WriteTextFile(prefix + ".audit.jsonl", audit);

  Json stats = Json::object();
  stats["language"] = flags.language;
  stats["translator"] = config.translator.ToString();
  stats["aligner"] = config.aligner.ToString();
  stats["full"] = StatsToJson(result.full_stats);
  if (result.small_stats) stats["small"] = StatsToJson(*result.small_stats);
  WriteTextFile(prefix + ".stats.json", stats.dump(2) + "\n");

  std::vector<std::pair<std::string, DatasetStats>> columns = {
      {Stem(prefix + ".json"), result.full_stats}};
  if (result.small_stats) {
    columns.emplace_back(Stem(prefix + "-small.json"), *result.small_stats);
  }
  out << FormatStatsTable(columns);
  err << "dropped " << dropped << " answer(s); wrote " << prefix
      << ".json\n";
  return 0;
}

int CmdStats(const StatsFlags& flags, std::ostream& out) {
  const Dataset dataset = ReadDataset(flags.input);
  DatasetStats stats = ComputeStats(dataset);
  if (!flags.source.empty()) {
    stats.total_examples = ComputeStats(ReadDataset(flags.source)).total_examples;
  }
  if (flags.json) {
    out << StatsToJson(stats).dump() << "\n";
  } else {
    out << FormatStatsTable({{Stem(flags.input), stats}});
  }
  return 0;
}

int CmdAuditReport(const AuditFlags& flags, std::ostream& out) {
  std::istringstream in(ReadTextFile(flags.audit));
  std::string line;
  size_t answers = 0;
  size_t duplicates = 0;
  size_t mismatched = 0;
  std::map<std::string, size_t> methods;
  std::map<std::string, size_t> dropped;
  // tag -> (count over all retrieved, count over direct matches)
  std::map<std::string, std::pair<size_t, size_t>> tags;
  for (RiskTag t : {RiskTag::kCrossedSentence, RiskTag::kEdgePunctuation,
                    RiskTag::kAlignmentFallback,
                    RiskTag::kLowercaseMatchCaseChanged}) {
    tags[std::string(ToString(t))] = {0, 0};
  }
  std::pair<size_t, size_t> any_tag{0, 0};
  std::pair<size_t, size_t> retrieved{0, 0};
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    AuditRecord record;
    try {
      record = AuditFromJson(Json::parse(line));
    } catch (const std::exception& e) {
      throw Error(flags.audit + " line " + std::to_string(line_number) +
                  ": " + e.what());
    }
    ++answers;
    if (record.duplicate) ++duplicates;
    if (record.paragraph_alignment_mismatch) ++mismatched;
    if (record.dropped) {
      ++dropped[std::string(ToString(*record.dropped))];
    }
    if (!record.method || record.dropped || record.duplicate) continue;
    const bool direct = *record.method == RetrievalMethod::kDirectMatch;
    ++methods[std::string(ToString(*record.method))];
    ++retrieved.first;
    if (direct) ++retrieved.second;
    for (RiskTag t : record.tags) {
      auto& counts = tags[std::string(ToString(t))];
      ++counts.first;
      if (direct) ++counts.second;
    }
    if (!record.tags.empty()) {
      ++any_tag.first;
      if (direct) ++any_tag.second;
    }
  }

  if (flags.json) {
    Json j = Json::object();
    j["answers"] = answers;
    j["retrieved"] = retrieved.first;
    j["retrieved_direct_match"] = retrieved.second;
    j["methods"] = methods;
    j["dropped"] = dropped;
    j["duplicates"] = duplicates;
    j["alignment_mismatch"] = mismatched;
    Json tag_counts = Json::object();
    for (const auto& [name, counts] : tags) {
      tag_counts[name] = {{"all", counts.first}, {"direct_match", counts.second}};
    }
    tag_counts["any"] = {{"all", any_tag.first}, {"direct_match", any_tag.second}};
    j["tags"] = std::move(tag_counts);
    out << j.dump() << "\n";
    return 0;
  }

  auto percent = [](size_t n, size_t d) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%zu (%.0f%%)", n,
                  d == 0 ? 0.0 : 100.0 * static_cast<double>(n) /
                                     static_cast<double>(d));
    return std::string(buffer);
  };
  out << "answers: " << answers << "\n";
  for (const auto& [name, n] : methods) out << "  " << name << ": " << n << "\n";
  for (const auto& [name, n] : dropped)
    out << "  dropped " << name << ": " << n << "\n";
  out << "  duplicates merged: " << duplicates << "\n";
  out << "  in paragraphs with unaligned sentences: " << mismatched << "\n";
  out << "\n";

  std::vector<std::vector<std::string>> rows = {{"Risk tag", "all", "direct match"}};
  for (const auto& [name, counts] : tags) {
    rows.push_back({name, percent(counts.first, retrieved.first),
                    percent(counts.second, retrieved.second)});
  }
  rows.push_back({"Any tag", percent(any_tag.first, retrieved.first),
                  percent(any_tag.second, retrieved.second)});
  rows.push_back({"# of (c,q,a) ex.", std::to_string(retrieved.first),
                  std::to_string(retrieved.second)});
  std::vector<size_t> widths(3, 0);
  for (const auto& row : rows)
    for (size_t c = 0; c < row.size(); ++c)
      widths[c] = std::max(widths[c], row[c].size());
  for (const auto& row : rows) {
    std::string text;
    for (size_t c = 0; c < row.size(); ++c) {
      if (c > 0) text += " | ";
      text += row[c];
      text.append(widths[c] - row[c].size(), ' ');
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out << text << "\n";
  }
  return 0;
}

int CmdEval(const EvalFlags& flags, std::ostream& out, std::ostream& err) {
  const Dataset gold = ReadDataset(flags.gold);
  const Predictions predictions = ReadPredictions(flags.pred);
  const EvalReport report = Score(gold, predictions, flags.language);
  for (const std::string& id : report.missing_ids) {
    err << "warning: no prediction for question " << id << ", scored 0\n";
  }
  out << FormatReport(report) << "\n";
  return 0;
}

std::vector<std::vector<std::string>> ReadTokenizedLines(const std::string& path) {
  std::istringstream in(ReadTextFile(path));
  std::vector<std::vector<std::string>> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> tokens;
    for (const Token& token : Tokenize(DecodeUtf8(line))) {
      tokens.push_back(EncodeUtf8(token.text));
    }
    lines.push_back(std::move(tokens));
  }
  return lines;
}

int CmdAlignTrain(const AlignTrainFlags& flags, std::ostream& err) {
  const auto src = ReadTokenizedLines(flags.src);
  const auto tgt = ReadTokenizedLines(flags.tgt);
  if (src.size() != tgt.size()) {
    throw Error("line count mismatch: " + flags.src + " has " +
                std::to_string(src.size()) + " lines, " + flags.tgt + " has " +
                std::to_string(tgt.size()));
  }
  std::vector<SentencePair> corpus;
  for (size_t k = 0; k < src.size(); ++k) corpus.push_back({src[k], tgt[k]});
  const Ibm1Model model = TrainIbm1(corpus, flags.iters);
  for (size_t k = 0; k < model.log_likelihood.size(); ++k) {
    err << "iteration " << k << " log-likelihood " << model.log_likelihood[k]
        << "\n";
  }
  model.table.Save(flags.out);
  err << "wrote " << flags.out << "\n";
  return 0;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Translate SQuAD v1.1 datasets and re-anchor their answers "
               "with word alignments.",
               "tarqa"};
  app.require_subcommand(1);

  TranslateFlags tf;
  CLI::App* translate = app.add_subcommand(
      "translate", "Translate a dataset and retrieve every answer span.");
  translate->add_option("--input", tf.input, "Source SQuAD v1.1 JSON file")
      ->required();
  translate
      ->add_option("--output-prefix", tf.output_prefix,
                   "Writes <prefix>.json, <prefix>-small.json, "
                   "<prefix>.audit.jsonl and <prefix>.stats.json")
      ->required();
  translate->add_option("--translator", tf.translator,
                        "identity | cache:<tsv> | lexicon:<tsv> | cmd:<command>")
      ->capture_default_str();
  translate->add_option("--translator-cmd", tf.translator_cmd,
                        "Shell command used as translator (same as cmd:...)");
  translate->add_option("--aligner", tf.aligner,
                        "identity | file:<pharaoh> | ibm1[:<table>] | cmd:<command>")
      ->capture_default_str();
  translate->add_option("--aligner-cmd", tf.aligner_cmd,
                        "Shell command used as aligner (same as cmd:...)");
  translate->add_flag("--small", tf.small,
                      "Also write the direct-match-only variant");
  translate->add_flag("--lenient", tf.lenient,
                      "Keep going on inconsistent source spans and cache misses");
  translate->add_option("--workers", tf.workers, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  translate->add_option("--language", tf.language,
                        "Target language tag recorded in the stats file")
      ->capture_default_str();
  translate->add_option("--abbrev-file", tf.abbrev_file,
                        "Abbreviation list for sentence splitting, one per line")
      ->check(CLI::ExistingFile);
  translate->add_option("--ibm1-iters", tf.ibm1_iters,
                        "EM iterations when --aligner ibm1 trains on the input")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  StatsFlags sf;
  CLI::App* stats = app.add_subcommand(
      "stats", "Print example counts and average token lengths.");
  stats->add_option("--input", sf.input, "SQuAD v1.1 JSON file")->required();
  stats->add_option("--source", sf.source,
                    "Original dataset; its example count is the total");
  stats->add_flag("--json", sf.json, "Print JSON instead of a table");

  AuditFlags af;
  CLI::App* audit = app.add_subcommand(
      "audit-report", "Summarize a translate audit log.");
  audit->add_option("--audit", af.audit, "<prefix>.audit.jsonl file")
      ->required();
  audit->add_flag("--json", af.json, "Print JSON instead of a table");

  EvalFlags ef;
  CLI::App* eval = app.add_subcommand(
      "eval", "Exact Match and F1 of predictions against a gold dataset.");
  eval->add_option("--gold", ef.gold, "Gold SQuAD v1.1 JSON file")->required();
  eval->add_option("--pred", ef.pred, "Predictions JSON {id: answer}")
      ->required();
  eval->add_option("--language", ef.language, "Normalization language (en, es)")
      ->capture_default_str();

  AlignTrainFlags atf;
  CLI::App* align_train = app.add_subcommand(
      "align-train", "Train an IBM Model 1 lexical table.");
  align_train->add_option("--src", atf.src, "Source side, one sentence per line")
      ->required();
  align_train->add_option("--tgt", atf.tgt, "Target side, line-aligned with --src")
      ->required();
  align_train->add_option("--iters", atf.iters, "EM iterations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  align_train->add_option("--out", atf.out, "Output table TSV")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*translate) return CmdTranslate(tf, out, err);
    if (*stats) return CmdStats(sf, out);
    if (*audit) return CmdAuditReport(af, out);
    if (*eval) return CmdEval(ef, out, err);
    if (*align_train) return CmdAlignTrain(atf, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace tarqa
