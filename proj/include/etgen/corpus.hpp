#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace etgen {

/// A bundled problem document, with a sample instance when one exists.
struct CorpusEntry {
  std::string_view name;
  std::string_view problem;
  std::optional<std::string_view> instance;
};

const std::vector<CorpusEntry>& corpus();
std::optional<CorpusEntry> find_corpus_entry(std::string_view name);

}  // namespace etgen
