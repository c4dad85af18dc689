#include "subdyn/spec_format.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

namespace subdyn {

SpecSyntaxError::SpecSyntaxError(std::size_t line, std::size_t column, const std::string& message)
    : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

bool valid_symbol(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u > 32 && u < 127 && c != '#' && c != '-' && c != '>';
}

struct Rule {
  char lhs;
  std::string rhs;
  std::size_t line;
  std::vector<std::size_t> columns;  // column of each rhs symbol
};

}  // namespace

SubstitutionSpec parse_substitution_spec(std::string_view text, std::optional<std::string> name) {
  std::vector<Rule> rules;
  std::string symbols;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::size_t i = 0;
    auto skip = [&] {
      while (i < line.size() && is_space(line[i])) ++i;
    };
    skip();
    if (i == line.size()) continue;

    Rule rule{line[i], {}, line_no, {}};
    if (!valid_symbol(rule.lhs)) {
      throw SpecSyntaxError(line_no, i + 1, std::string("invalid letter '") + rule.lhs + "'");
    }
    ++i;
    skip();
    if (i + 1 >= line.size() || line[i] != '-' || line[i + 1] != '>') {
      throw SpecSyntaxError(line_no, i + 1, "expected '->'");
    }
    const std::size_t arrow = i + 1;
    i += 2;
    for (; i < line.size(); ++i) {
      if (is_space(line[i])) continue;
      if (!valid_symbol(line[i])) {
        throw SpecSyntaxError(line_no, i + 1, std::string("invalid symbol '") + line[i] + "'");
      }
      rule.rhs.push_back(line[i]);
      rule.columns.push_back(i + 1);
    }
    if (rule.rhs.empty()) throw SpecSyntaxError(line_no, arrow + 1, std::string("empty image for '") + rule.lhs + "'");
    if (symbols.find(rule.lhs) != std::string::npos) {
      throw SpecSyntaxError(line_no, 1, std::string("duplicate rule for '") + rule.lhs + "'");
    }
    symbols.push_back(rule.lhs);
    rules.push_back(std::move(rule));
    if (end == text.size()) break;
  }
  if (rules.empty()) throw SpecSyntaxError(line_no == 0 ? 1 : line_no, 1, "no rules");
  if (rules.size() > Alphabet::kMaxSize) throw SpecSyntaxError(rules.back().line, 1, "too many letters");

  Alphabet alphabet(symbols);
  std::vector<Word> images;
  for (const auto& rule : rules) {
    Word image;
    for (std::size_t j = 0; j < rule.rhs.size(); ++j) {
      const auto letter = alphabet.find(rule.rhs[j]);
      if (!letter) {
        throw SpecSyntaxError(rule.line, rule.columns[j], std::string("undeclared symbol '") + rule.rhs[j] + "'");
      }
      image.push_back(*letter);
    }
    images.push_back(std::move(image));
  }
  return SubstitutionSpec{std::string(text), Substitution(std::move(alphabet), std::move(images)), std::move(name)};
}

std::string render_spec(const Substitution& sub) {
  std::string out;
  for (std::size_t a = 0; a < sub.size(); ++a) {
    out += sub.alphabet().symbol(static_cast<Letter>(a));
    out += " -> ";
    out += sub.alphabet().render(sub.image(static_cast<Letter>(a)));
    out += '\n';
  }
  return out;
}

SubstitutionSpec load_substitution_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read spec file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_substitution_spec(buffer.str(), std::filesystem::path(path).stem().string());
}

}  // namespace subdyn
