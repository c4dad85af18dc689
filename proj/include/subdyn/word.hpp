#pragma once

// Alphabets, finite words, abelianization and fixed-point expansion.
//
// Letters are stored by index (0..n-1) in the order the alphabet declares
// them; that order is the row/column order of every vector and matrix in the
// library. Surface symbols are single characters.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace subdyn {

using Letter = std::uint8_t;
using Word = std::vector<Letter>;
using WordView = std::span<const Letter>;

class Alphabet {
 public:
  static constexpr std::size_t kMaxSize = 255;

  // Throws InputError on an empty alphabet, duplicate symbols or more than
  // kMaxSize symbols.
  explicit Alphabet(std::string symbols);

  std::size_t size() const { return symbols_.size(); }
  const std::string& symbols() const { return symbols_; }
  char symbol(Letter letter) const { return symbols_.at(letter); }

  std::optional<Letter> find(char symbol) const;
  // Throws InputError when the symbol is not a letter of this alphabet.
  Letter letter(char symbol) const;

  Word parse(std::string_view text) const;
  std::string render(WordView word) const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::string symbols_;
};

// Signed letter-count vector. Nonnegative for images of words; differences
// of two images may be negative.
class AbelianVector {
 public:
  AbelianVector() = default;
  explicit AbelianVector(std::size_t dim) : counts_(dim, 0) {}
  explicit AbelianVector(std::vector<std::int64_t> counts) : counts_(std::move(counts)) {}

  std::size_t dim() const { return counts_.size(); }
  std::int64_t operator[](std::size_t i) const { return counts_[i]; }
  std::int64_t& operator[](std::size_t i) { return counts_[i]; }
  const std::vector<std::int64_t>& counts() const { return counts_; }

  std::int64_t total() const;
  bool is_zero() const;

  AbelianVector& operator+=(const AbelianVector& other);
  AbelianVector& operator-=(const AbelianVector& other);
  friend AbelianVector operator+(AbelianVector lhs, const AbelianVector& rhs) { return lhs += rhs; }
  friend AbelianVector operator-(AbelianVector lhs, const AbelianVector& rhs) { return lhs -= rhs; }

  auto operator<=>(const AbelianVector&) const = default;

 private:
  std::vector<std::int64_t> counts_;
};

AbelianVector abelianize(WordView word, std::size_t alphabet_size);

inline bool abelian_equivalent(WordView u, WordView v, std::size_t alphabet_size) {
  return u.size() == v.size() && abelianize(u, alphabet_size) == abelianize(v, alphabet_size);
}

class Substitution {
 public:
  // Throws InputError if the image count differs from the alphabet size, an
  // image is empty, or an image uses a letter outside the alphabet.
  Substitution(Alphabet alphabet, std::vector<Word> images);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t size() const { return images_.size(); }
  const Word& image(Letter letter) const { return images_.at(letter); }
  const std::vector<Word>& images() const { return images_; }

  // tau^power(word). Throws InputError for power 0 or foreign letters.
  Word apply(WordView word, unsigned power = 1) const;

  // The substitution tau^m (same alphabet).
  Substitution power(unsigned m) const;

  std::string render() const;

  bool operator==(const Substitution&) const = default;

 private:
  Alphabet alphabet_;
  std::vector<Word> images_;
};

inline Word apply_substitution(const Substitution& sub, WordView word, unsigned power = 1) {
  return sub.apply(word, power);
}

struct PeriodicSeed {
  Letter letter;
  unsigned period;
  bool operator==(const PeriodicSeed&) const = default;
};

// Every letter a with least m <= max_period such that tau^m(a) starts with a
// and |tau^m(a)| > 1, in letter order.
std::vector<PeriodicSeed> list_periodic_seeds(const Substitution& sub, unsigned max_period);

// Least period of `letter` as a periodic seed, if it is one within max_period.
std::optional<unsigned> seed_period(const Substitution& sub, Letter letter, unsigned max_period = 64);

// Lazily expanded one-sided periodic point of tau starting at a seed letter.
//
// The working substitution is sigma = tau^period, whose fixed point at the
// seed is the periodic point. The buffer always equals sigma(buffer[0..consumed))
// and so is a prefix of that fixed point; it only grows.
class FixedPointStream {
 public:
  // Throws InputError unless sigma(seed) begins with seed and has length > 1.
  FixedPointStream(const Substitution& sub, Letter seed, unsigned period = 1);

  const Substitution& substitution() const { return base_; }
  const Substitution& working() const { return working_; }
  Letter seed() const { return seed_; }
  unsigned period() const { return period_; }
  std::size_t alphabet_size() const { return base_.size(); }

  // View of the first `length` letters; valid until the next call that grows
  // the buffer.
  WordView expand(std::size_t length);
  Word prefix(std::size_t length) { auto view = expand(length); return Word(view.begin(), view.end()); }
  Letter at(std::size_t index) { return expand(index + 1)[index]; }

  std::size_t buffered() const { return buffer_.size(); }

 private:
  void grow_to(std::size_t length);

  Substitution base_;
  Substitution working_;
  Letter seed_;
  unsigned period_;
  Word buffer_;
  std::size_t consumed_ = 1;
};

}  // namespace subdyn
