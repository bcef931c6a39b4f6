#include "etgen/corpus.hpp"

#include "corpus_documents.hpp"

namespace etgen {

const std::vector<CorpusEntry>& corpus() {
  using namespace corpus_documents;
  static const std::vector<CorpusEntry> entries{
      {"toy", kToyProblem, kToyInstance},
      {"triangulation", kTriangulationProblem, std::nullopt},
      {"h13f", kH13fProblem, std::nullopt},
  };
  return entries;
}

std::optional<CorpusEntry> find_corpus_entry(std::string_view name) {
  for (const auto& e : corpus())
    if (e.name == name) return e;
  return std::nullopt;
}

}  // namespace etgen
