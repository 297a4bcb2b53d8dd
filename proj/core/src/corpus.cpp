#include "tangent/corpus.hpp"

#include <algorithm>

namespace tangent {

namespace {

struct RawEntry {
    const char* name;
    const char* text;
};

const RawEntry kRawEntries[] = {
#include "corpus_data.inc"
};

}  // namespace

const std::vector<CorpusEntry>& corpus_entries() {
    static const std::vector<CorpusEntry> entries = [] {
        std::vector<CorpusEntry> out;
        for (const RawEntry& raw : kRawEntries) {
            CorpusEntry entry;
            entry.text = raw.text;
            entry.file = parse_problem_file(entry.text);
            entry.id = entry.file.problem.id;
            out.push_back(std::move(entry));
        }
        std::sort(out.begin(), out.end(),
                  [](const CorpusEntry& a, const CorpusEntry& b) { return a.id < b.id; });
        return out;
    }();
    return entries;
}

}  // namespace tangent
