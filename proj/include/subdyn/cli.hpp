#pragma once

// Command-line front end. Exit codes: 0 success, 1 negative verdict where a
// command was asked to expect a positive one, 2 input errors.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace subdyn::cli {

enum class Format { Json, Text };

struct RunConfig {
  std::size_t horizon = 100'000;  // SUBDYN_HORIZON overrides
  double tolerance = 1e-10;
  std::size_t max_subset_size = 3;
  std::size_t iterations = 10;
  Format format = Format::Json;
  std::string output;  // empty: standard output
};

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInputError = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace subdyn::cli
