#pragma once

#include <stdexcept>

namespace subdyn {

// Malformed or out-of-contract input (bad symbol, invalid seed, bad path...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input that an analysis cannot handle, e.g. a strand splitting
// requested for a substitution that is not irreducible Pisot.
class UnsupportedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace subdyn
