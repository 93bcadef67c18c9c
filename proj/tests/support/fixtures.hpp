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

#ifndef CLEME_TESTS_FIXTURES_HPP_
#define CLEME_TESTS_FIXTURES_HPP_

#include <array>
#include <string>

#include "cleme/align.hpp"
#include "cleme/corpus_io.hpp"

namespace fixtures {

// Three-token fragment corrected two different ways.
inline cleme::AnnotatedSample fragment() {
  cleme::AnnotatedSample s;
  s.source = {"the", "technologies", "were"};
  s.annotations[0] = {{0, 1, {}, std::nullopt, 0}, {2, 3, {"have"}, std::nullopt, 0}};
  s.annotations[1] = {{0, 1, {}, std::nullopt, 1},
                      {1, 2, {"technology"}, std::nullopt, 1},
                      {2, 3, {"has"}, std::nullopt, 1}};
  return s;
}

inline constexpr const char* kCaseSource =
    "On the other hand , if there are ways can help us to control or cure the "
    "disease , we can going .";
inline constexpr const char* kCaseHyp =
    "On the other hand , if there are ways that can help us to control and cure "
    "the disease , we can go .";
inline constexpr const char* kCaseRef1 =
    "On the other hand , if there are ways that can help us to control or cure "
    "the disease , we can go .";
inline constexpr const char* kCaseRef2 =
    "On the other hand , if there are things that can help us to control and "
    "cure the disease , we can go .";

inline cleme::AnnotatedSample case_refs() {
  cleme::AnnotatedSample s;
  s.source = cleme::tokenize(kCaseSource);
  s.annotations[0] = cleme::extract_edits(s.source, cleme::tokenize(kCaseRef1), 0);
  s.annotations[1] = cleme::extract_edits(s.source, cleme::tokenize(kCaseRef2), 1);
  return s;
}

inline std::vector<cleme::Edit> case_hyp() {
  return cleme::extract_edits(cleme::tokenize(kCaseSource), cleme::tokenize(kCaseHyp));
}

struct Triple {
  const char* metric;
  const char* system;
  double p, r, f;
};

// Corpus-level (P, R, F0.5) rows of the 13-system CoNLL-2014 results, percent.
inline constexpr std::array<Triple, 39> kPublishedTriples = {{
    {"ERRANT", "AMU", 37.79, 19.98, 32.08},
    {"ERRANT", "CAMB", 35.30, 27.77, 33.48},
    {"ERRANT", "CUUI", 38.13, 23.78, 34.02},
    {"ERRANT", "IITB", 30.11, 1.34, 5.68},
    {"ERRANT", "INPUT", 100.0, 0.00, 0.00},
    {"ERRANT", "IPN", 9.63, 2.44, 6.06},
    {"ERRANT", "NTHU", 29.21, 17.15, 25.61},
    {"ERRANT", "PKU", 29.67, 12.78, 23.46},
    {"ERRANT", "POST", 30.60, 20.38, 27.81},
    {"ERRANT", "RAC", 28.66, 13.50, 23.40},
    {"ERRANT", "SJTU", 28.49, 4.86, 14.44},
    {"ERRANT", "UFC", 72.00, 1.71, 7.81},
    {"ERRANT", "UMC", 28.66, 13.34, 23.31},
    {"CLEME-dependent", "AMU", 26.45, 20.97, 25.14},
    {"CLEME-dependent", "CAMB", 25.74, 32.84, 26.90},
    {"CLEME-dependent", "CUUI", 26.81, 24.48, 26.31},
    {"CLEME-dependent", "IITB", 19.29, 1.09, 4.45},
    {"CLEME-dependent", "INPUT", 100.0, 0.00, 0.00},
    {"CLEME-dependent", "IPN", 5.85, 2.22, 4.41},
    {"CLEME-dependent", "NTHU", 21.42, 18.23, 20.69},
    {"CLEME-dependent", "PKU", 20.06, 13.39, 18.24},
    {"CLEME-dependent", "POST", 21.07, 22.31, 21.31},
    {"CLEME-dependent", "RAC", 20.60, 13.71, 18.72},
    {"CLEME-dependent", "SJTU", 19.02, 4.45, 11.50},
    {"CLEME-dependent", "UFC", 56.40, 1.52, 6.85},
    {"CLEME-dependent", "UMC", 20.14, 14.40, 18.65},
    {"CLEME-independent", "AMU", 26.90, 25.53, 26.61},
    {"CLEME-independent", "CAMB", 26.11, 41.06, 28.16},
    {"CLEME-independent", "CUUI", 27.85, 30.71, 28.38},
    {"CLEME-independent", "IITB", 19.29, 1.25, 4.97},
    {"CLEME-independent", "INPUT", 100.0, 0.00, 0.00},
    {"CLEME-independent", "IPN", 5.85, 2.57, 4.66},
    {"CLEME-independent", "NTHU", 22.00, 22.52, 22.10},
    {"CLEME-independent", "PKU", 20.23, 16.10, 19.24},
    {"CLEME-independent", "POST", 21.50, 27.72, 22.51},
    {"CLEME-independent", "RAC", 20.69, 16.59, 19.71},
    {"CLEME-independent", "SJTU", 19.02, 5.14, 12.35},
    {"CLEME-independent", "UFC", 56.40, 1.75, 7.77},
    {"CLEME-independent", "UMC", 20.22, 17.23, 19.54},
}};

}  // namespace fixtures

#endif  // CLEME_TESTS_FIXTURES_HPP_
