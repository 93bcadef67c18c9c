/* Copyright 2026 The CLEME Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef CLEME_TESTS_GENERATORS_HPP_
#define CLEME_TESTS_GENERATORS_HPP_

#include <random>
#include <vector>

#include "cleme/chunker.hpp"
#include "cleme/corpus_io.hpp"

namespace gen {

using Rng = std::mt19937_64;

cleme::TokenSeq tokens(Rng& rng, std::size_t min_len, std::size_t max_len,
                       std::size_t vocab = 5);

// A valid, sorted edit set over a source of length `len`.
std::vector<cleme::Edit> edits(Rng& rng, std::size_t len, cleme::AnnotatorId id = 0,
                               double density = 0.3);

// Source plus 1..max_refs annotators with distinct, possibly sparse ids.
cleme::AnnotatedSample sample(Rng& rng, std::size_t max_refs = 4,
                              std::size_t max_len = 10);

// A hypothesis edit set that sometimes copies references slot-for-slot.
std::vector<cleme::Edit> hypothesis(Rng& rng, const cleme::AnnotatedSample& s);

}  // namespace gen

#endif  // CLEME_TESTS_GENERATORS_HPP_
