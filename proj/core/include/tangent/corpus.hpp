#pragma once

#include "tangent/problem_file.hpp"

namespace tangent {

// The built-in regression corpus: the problem files under data/corpus/ are
// embedded at build time and parsed once. Sorted by id.
struct CorpusEntry {
    std::string id;
    std::string text;  // raw problem file, provenance comments included
    ProblemFile file;
};

const std::vector<CorpusEntry>& corpus_entries();

}  // namespace tangent
