#pragma once

#include <string>

#include "oracles.hpp"
#include "subdyn/spec_format.hpp"
#include "subdyn/word.hpp"

namespace testing {

inline subdyn::Substitution make_sub(const oracle::Rules& r) {
  subdyn::Alphabet alphabet(r.alphabet);
  std::vector<subdyn::Word> images;
  for (const auto& img : r.images) images.push_back(alphabet.parse(img));
  return subdyn::Substitution(alphabet, images);
}

inline subdyn::Substitution sub(const char* text) { return subdyn::parse_substitution_spec(text).substitution; }

inline const oracle::Rules kFibonacci{"ab", {"ab", "a"}};
inline const oracle::Rules kTribonacci{"abc", {"ab", "ac", "a"}};
inline const oracle::Rules kThueMorse{"ab", {"ab", "ba"}};
inline const oracle::Rules kPair{"ab", {"aab", "ba"}};
inline const oracle::Rules kProximal{"ab", {"aaab", "bbab"}};
inline const oracle::Rules kUnitRoot{"ab", {"aab", "bbaab"}};

}  // namespace testing
