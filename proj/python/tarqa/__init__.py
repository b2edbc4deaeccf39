# Copyright 2026 The TarQA Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Python bindings for the tarqa SQuAD translation toolkit."""

from tarqa._core import (
    AlignmentError,
    BackendError,
    DatasetError,
    Error,
    cli,
    compute_stats,
    dataset_roundtrip,
    exact_match,
    f1,
    format_pharaoh,
    normalize_answer,
    parse_pharaoh,
    run_pipeline,
    score,
    split_sentences,
    split_words,
    tokenize,
    train_ibm1,
    translate_batch,
)

__all__ = [
    "AlignmentError",
    "BackendError",
    "DatasetError",
    "Error",
    "cli",
    "compute_stats",
    "dataset_roundtrip",
    "exact_match",
    "f1",
    "format_pharaoh",
    "normalize_answer",
    "parse_pharaoh",
    "run_pipeline",
    "score",
    "split_sentences",
    "split_words",
    "tokenize",
    "train_ibm1",
    "translate_batch",
]
