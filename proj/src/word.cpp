#include "subdyn/word.hpp"

#include <algorithm>
#include <numeric>

#include "subdyn/errors.hpp"
#include "subdyn/kernels/kernels.hpp"

namespace subdyn {

Alphabet::Alphabet(std::string symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw InputError("alphabet must not be empty");
  if (symbols_.size() > kMaxSize) throw InputError("alphabet has more than 255 letters");
  std::string sorted = symbols_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InputError("alphabet has duplicate symbols: '" + symbols_ + "'");
  }
}

std::optional<Letter> Alphabet::find(char symbol) const {
  const auto pos = symbols_.find(symbol);
  if (pos == std::string::npos) return std::nullopt;
  return static_cast<Letter>(pos);
}

Letter Alphabet::letter(char symbol) const {
  if (auto found = find(symbol)) return *found;
  throw InputError(std::string("symbol '") + symbol + "' is not in the alphabet {" + symbols_ + "}");
}

Word Alphabet::parse(std::string_view text) const {
  Word word;
  word.reserve(text.size());
  for (char c : text) word.push_back(letter(c));
  return word;
}

std::string Alphabet::render(WordView word) const {
  std::string out;
  out.reserve(word.size());
  for (Letter l : word) out.push_back(symbol(l));
  return out;
}

std::int64_t AbelianVector::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0});
}

bool AbelianVector::is_zero() const {
  return std::all_of(counts_.begin(), counts_.end(), [](std::int64_t c) { return c == 0; });
}

AbelianVector& AbelianVector::operator+=(const AbelianVector& other) {
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_.at(i);
  return *this;
}

AbelianVector& AbelianVector::operator-=(const AbelianVector& other) {
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] -= other.counts_.at(i);
  return *this;
}

AbelianVector abelianize(WordView word, std::size_t alphabet_size) {
  AbelianVector counts(alphabet_size);
  if (alphabet_size <= 4 && word.size() >= 256) {
    const auto& k = kernels::active_kernels();
    std::size_t seen = 0;
    for (std::size_t i = 0; i < alphabet_size; ++i) {
      const auto c = k.count_byte(word.data(), word.size(), static_cast<Letter>(i));
      counts[i] = static_cast<std::int64_t>(c);
      seen += c;
    }
    if (seen != word.size()) throw InputError("word contains letters outside the alphabet");
    return counts;
  }
  for (Letter l : word) {
    if (l >= alphabet_size) throw InputError("word contains letters outside the alphabet");
    ++counts[l];
  }
  return counts;
}

Substitution::Substitution(Alphabet alphabet, std::vector<Word> images)
    : alphabet_(std::move(alphabet)), images_(std::move(images)) {
  if (images_.size() != alphabet_.size()) {
    throw InputError("substitution needs exactly one image per letter");
  }
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i].empty()) {
      throw InputError(std::string("image of '") + alphabet_.symbol(static_cast<Letter>(i)) +
                       "' is empty");
    }
    for (Letter l : images_[i]) {
      if (l >= alphabet_.size()) throw InputError("image uses a letter outside the alphabet");
    }
  }
}

Word Substitution::apply(WordView word, unsigned power) const {
  if (power == 0) throw InputError("substitution power must be at least 1");
  Word current(word.begin(), word.end());
  for (Letter l : current) {
    if (l >= images_.size()) throw InputError("word contains letters outside the alphabet");
  }
  for (unsigned p = 0; p < power; ++p) {
    std::size_t length = 0;
    for (Letter l : current) length += images_[l].size();
    Word next;
    next.reserve(length);
    for (Letter l : current) next.insert(next.end(), images_[l].begin(), images_[l].end());
    current = std::move(next);
  }
  return current;
}

Substitution Substitution::power(unsigned m) const {
  if (m == 0) throw InputError("substitution power must be at least 1");
  if (m == 1) return *this;
  std::vector<Word> images;
  images.reserve(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    const Word single{static_cast<Letter>(i)};
    images.push_back(apply(single, m));
  }
  return Substitution(alphabet_, std::move(images));
}

std::string Substitution::render() const {
  std::string out;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    out += alphabet_.symbol(static_cast<Letter>(i));
    out += " -> ";
    out += alphabet_.render(images_[i]);
    out += '\n';
  }
  return out;
}

namespace {

// First letter and length of tau^m(letter) for m = 1..max_period, without
// materializing the images.
std::optional<unsigned> least_period(const Substitution& sub, Letter letter, unsigned max_period) {
  // |tau^m(a)| >= |tau^{m-1}(a)|, and the first letter of tau^m(a) is the
  // first letter of tau(first letter of tau^{m-1}(a)).
  Letter head = letter;
  bool grew = false;
  for (unsigned m = 1; m <= max_period; ++m) {
    const Word& img = sub.image(head);
    if (img.size() > 1) grew = true;
    head = img.front();
    if (head == letter) {
      if (!grew) {
        // tau^m(a) = a. Longer multiples of m can still grow through letters
        // further right only if |tau^m(a)| > 1, which is not the case here.
        return std::nullopt;
      }
      return m;
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<PeriodicSeed> list_periodic_seeds(const Substitution& sub, unsigned max_period) {
  std::vector<PeriodicSeed> seeds;
  for (std::size_t i = 0; i < sub.size(); ++i) {
    const auto letter = static_cast<Letter>(i);
    if (auto m = least_period(sub, letter, max_period)) seeds.push_back({letter, *m});
  }
  return seeds;
}

std::optional<unsigned> seed_period(const Substitution& sub, Letter letter, unsigned max_period) {
  if (letter >= sub.size()) throw InputError("seed letter outside the alphabet");
  return least_period(sub, letter, max_period);
}

FixedPointStream::FixedPointStream(const Substitution& sub, Letter seed, unsigned period)
    : base_(sub), working_(sub.power(period == 0 ? 1 : period)), seed_(seed), period_(period) {
  if (period == 0) throw InputError("period must be at least 1");
  if (seed >= sub.size()) throw InputError("seed letter outside the alphabet");
  const Word& img = working_.image(seed);
  if (img.front() != seed || img.size() < 2) {
    throw InputError(std::string("'") + sub.alphabet().symbol(seed) +
                     "' is not a periodic seed of period " + std::to_string(period) +
                     " (its image must begin with it and have length > 1)");
  }
  buffer_ = img;
}

void FixedPointStream::grow_to(std::size_t length) {
  // Doubling schedule keeps the amortized cost linear in the output length.
  const std::size_t target = std::max(length, 2 * buffer_.size());
  while (buffer_.size() < target) {
    const Word& img = working_.image(buffer_[consumed_]);
    buffer_.insert(buffer_.end(), img.begin(), img.end());
    ++consumed_;
  }
}

WordView FixedPointStream::expand(std::size_t length) {
  if (length > buffer_.size()) grow_to(length);
  return WordView(buffer_.data(), length);
}

}  // namespace subdyn
