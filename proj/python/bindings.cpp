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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "tarqa/backends.h"
#include "tarqa/cli.h"
#include "tarqa/error.h"
#include "tarqa/evaluation.h"
#include "tarqa/ibm1.h"
#include "tarqa/pipeline.h"
#include "tarqa/segmentation.h"
#include "tarqa/squad.h"
#include "tarqa/text.h"

namespace py = pybind11;

namespace {

using SpanTuple = std::tuple<size_t, size_t>;

std::vector<SpanTuple> ToTuples(const std::vector<tarqa::Span>& spans) {
  std::vector<SpanTuple> out;
  out.reserve(spans.size());
  for (const auto& s : spans) out.emplace_back(s.start, s.end);
  return out;
}

py::object JsonToPython(const tarqa::Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of the tarqa SQuAD translation toolkit.";

  // pybind11 tries translators newest first, so the base class goes first.
  auto error = py::register_exception<tarqa::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<tarqa::DatasetError>(
      m, "DatasetError", py::make_tuple(error, py::handle(PyExc_ValueError)));
  py::register_exception<tarqa::BackendError>(m, "BackendError", error);
  py::register_exception<tarqa::AlignmentError>(m, "AlignmentError", error);

  m.def("split_sentences",
        [](const std::u32string& text) {
          return ToTuples(tarqa::SplitSentences(text));
        },
        py::arg("text"),
        "Sentence spans as (start, end) code point offsets.");
  m.def("tokenize",
        [](const std::u32string& text) {
          std::vector<std::tuple<std::u32string, size_t, size_t>> out;
          for (const auto& t : tarqa::Tokenize(text)) {
            out.emplace_back(t.text, t.span.start, t.span.end);
          }
          return out;
        },
        py::arg("text"));
  m.def("split_words",
        [](const std::u32string& text) { return ToTuples(tarqa::SplitWords(text)); },
        py::arg("text"));

  m.def("normalize_answer",
        [](const std::u32string& text, const std::string& language) {
          return tarqa::NormalizeAnswer(text, language);
        },
        py::arg("text"), py::arg("language"));
  m.def("exact_match",
        [](const std::u32string& pred, const std::u32string& gold,
           const std::string& language) {
          return tarqa::ExactMatchScore(pred, gold, language);
        },
        py::arg("prediction"), py::arg("gold"), py::arg("language"));
  m.def("f1",
        [](const std::u32string& pred, const std::u32string& gold,
           const std::string& language) {
          return tarqa::F1Score(pred, gold, language);
        },
        py::arg("prediction"), py::arg("gold"), py::arg("language"));
  m.def("score",
        [](const std::string& gold_json,
           const std::map<std::string, std::string>& predictions,
           const std::string& language) {
          const auto report = tarqa::Score(tarqa::ParseDataset(gold_json),
                                           predictions, language);
          py::dict d;
          d["exact_match"] = report.exact_match;
          d["f1"] = report.f1;
          d["count"] = report.count;
          d["missing_ids"] = report.missing_ids;
          return d;
        },
        py::arg("gold_json"), py::arg("predictions"), py::arg("language"),
        "Scores predictions against a gold dataset given as JSON text.");

  m.def("translate_batch",
        [](const std::string& spec, const std::vector<std::string>& lines) {
          return tarqa::TranslateBatch(tarqa::TranslatorSpec::Parse(spec), lines);
        },
        py::arg("spec"), py::arg("lines"));
  m.def("parse_pharaoh",
        [](const std::string& line) { return tarqa::ParsePharaoh(line).pairs; },
        py::arg("line"));
  m.def("format_pharaoh",
        [](const std::set<std::pair<size_t, size_t>>& pairs) {
          return tarqa::FormatPharaoh({pairs});
        },
        py::arg("pairs"));

  m.def("train_ibm1",
        [](const std::vector<std::pair<std::vector<std::string>,
                                       std::vector<std::string>>>& corpus,
           int iterations) {
          std::vector<tarqa::SentencePair> pairs;
          for (const auto& [src, tgt] : corpus) pairs.push_back({src, tgt});
          const auto model = tarqa::TrainIbm1(pairs, iterations);
          return std::make_pair(model.table.entries(), model.log_likelihood);
        },
        py::arg("corpus"), py::arg("iterations") = 5,
        "Returns (table[src][tgt] -> prob, log-likelihood per iteration).");

  m.def("dataset_roundtrip",
        [](const std::string& json_text, bool lenient) {
          tarqa::ReadOptions options;
          options.lenient = lenient;
          return tarqa::SerializeDataset(tarqa::ParseDataset(json_text, options));
        },
        py::arg("json_text"), py::arg("lenient") = false);
  m.def("compute_stats",
        [](const std::string& json_text) {
          return JsonToPython(
              tarqa::StatsToJson(tarqa::ComputeStats(tarqa::ParseDataset(json_text))));
        },
        py::arg("json_text"));

  m.def("run_pipeline",
        [](const std::string& json_text, const std::string& translator,
           const std::string& aligner, bool small, bool lenient, size_t workers) {
          tarqa::PipelineConfig config;
          config.translator = tarqa::TranslatorSpec::Parse(translator);
          config.aligner = tarqa::AlignerSpec::Parse(aligner);
          config.emit_small_variant = small;
          config.lenient = lenient;
          config.worker_count = workers;
          tarqa::ReadOptions options;
          options.lenient = lenient;
          tarqa::PipelineResult result;
          {
            py::gil_scoped_release release;
            result = tarqa::RunPipeline(tarqa::ParseDataset(json_text, options),
                                        config);
          }
          py::dict d;
          d["full"] = tarqa::SerializeDataset(result.full);
          d["small"] = result.small
                           ? py::object(py::str(tarqa::SerializeDataset(*result.small)))
                           : py::none();
          py::list audit;
          for (const auto& record : result.audit) {
            audit.append(JsonToPython(tarqa::AuditToJson(record)));
          }
          d["audit"] = audit;
          d["full_stats"] = JsonToPython(tarqa::StatsToJson(result.full_stats));
          return d;
        },
        py::arg("json_text"), py::arg("translator") = "identity",
        py::arg("aligner") = "identity", py::arg("small") = false,
        py::arg("lenient") = false, py::arg("workers") = 1);

  m.def("cli",
        [](const std::vector<std::string>& args) {
          std::vector<std::string> argv = {"tarqa"};
          argv.insert(argv.end(), args.begin(), args.end());
          std::ostringstream out;
          std::ostringstream err;
          int code;
          {
            py::gil_scoped_release release;
            code = tarqa::RunCli(argv, out, err);
          }
          return std::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command line; returns (code, stdout, stderr).");
}
