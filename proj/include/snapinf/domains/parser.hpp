#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

#include "snapinf/core/domain.hpp"

namespace snapinf::domains {

class ParseError : public ConfigError {
 public:
  ParseError(const std::string& message, int line, int column);

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Parses the plain-text domain format documented in the README. Builds a
/// grid, keys, chain or blocks domain depending on the `kind` directive.
std::unique_ptr<Domain> parse_domain_file(std::string_view text);

std::unique_ptr<Domain> load_domain_file(const std::filesystem::path& path);

}  // namespace snapinf::domains
