#pragma once

// Text format for substitutions: one rule `letter -> word` per line, `#`
// starts a comment, whitespace is ignored. The alphabet is the left-hand
// letters in order of first appearance.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "subdyn/errors.hpp"
#include "subdyn/word.hpp"

namespace subdyn {

class SpecSyntaxError : public InputError {
 public:
  SpecSyntaxError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct SubstitutionSpec {
  std::string text;
  Substitution substitution;
  std::optional<std::string> name;
};

SubstitutionSpec parse_substitution_spec(std::string_view text, std::optional<std::string> name = {});
// Canonical text, one rule per line in alphabet order.
std::string render_spec(const Substitution& sub);
SubstitutionSpec load_substitution_spec(const std::string& path);

}  // namespace subdyn
