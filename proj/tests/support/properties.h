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

// Randomized property checks. Each returns how many cases ran, how many
// violated the property and a description of the first violation.

#ifndef TARQA_TESTS_SUPPORT_PROPERTIES_H_
#define TARQA_TESTS_SUPPORT_PROPERTIES_H_

#include <cstddef>
#include <string>

#include "testing.h"

namespace tarqa::testing {

struct PropertyReport {
  size_t cases = 0;
  size_t violations = 0;
  std::string first_violation;

  void Fail(const std::string& what) {
    if (violations++ == 0) first_violation = what;
  }
  bool ok() const { return cases > 0 && violations == 0; }
};

// Random contexts, alignments, source spans and literals: every answer that
// is not dropped is a verbatim span of the target context, before and after
// cleanup, and cleanup never widens it.
PropertyReport CheckSubstringInvariant(Rng& rng, size_t instances);

// Random alignments of at most 10 words per side with a literal that cannot
// match: the retrieved span is exactly min..max of the mapped words.
PropertyReport CheckMinMaxOracle(Rng& rng, size_t instances);

// Cleanup applied twice equals cleanup applied once, on random spans.
PropertyReport CheckCleanupIdempotence(Rng& rng, size_t instances);

// EM <= F1, both in [0, 1], and F1 symmetric, on random answer pairs.
PropertyReport CheckEmNotAboveF1(Rng& rng, size_t instances);

}  // namespace tarqa::testing

#endif  // TARQA_TESTS_SUPPORT_PROPERTIES_H_
