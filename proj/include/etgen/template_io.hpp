#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "etgen/template.hpp"

namespace etgen {

/// Versioned text document `etgen-template 1`. Deterministic: equal
/// templates serialize to identical bytes.
std::string serialize_template(const Template& t);

/// Inverse of serialize_template; throws ParseError on malformed input.
Template deserialize_template(std::string_view document);

void save_template(const std::filesystem::path& path, const Template& t);
Template load_template(const std::filesystem::path& path);

/// Whole-file helpers shared by the document loaders.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace etgen
