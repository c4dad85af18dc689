#include "subdyn/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "subdyn/errors.hpp"

namespace subdyn {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("integer matrix overflow");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("integer matrix overflow");
  return out;
}

}  // namespace

IntMatrix::IntMatrix(std::size_t n, std::vector<std::int64_t> row_major)
    : n_(n), data_(std::move(row_major)) {
  if (data_.size() != n * n) throw std::invalid_argument("matrix data has the wrong size");
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix id(n);
  for (std::size_t i = 0; i < n; ++i) id(i, i) = 1;
  return id;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("matrix size mismatch");
  IntMatrix c(a.n_);
  for (std::size_t i = 0; i < a.n_; ++i) {
    for (std::size_t k = 0; k < a.n_; ++k) {
      const std::int64_t aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < a.n_; ++j) c(i, j) = checked_add(c(i, j), checked_mul(aik, b(k, j)));
    }
  }
  return c;
}

AbelianVector IntMatrix::operator*(const AbelianVector& v) const {
  if (v.dim() != n_) throw std::invalid_argument("vector size mismatch");
  AbelianVector out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < n_; ++j) acc = checked_add(acc, checked_mul((*this)(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

IntMatrix IntMatrix::power(unsigned k) const {
  IntMatrix result = identity(n_);
  IntMatrix base = *this;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

IntMatrix abelianization_matrix(const Substitution& sub) {
  const std::size_t n = sub.size();
  IntMatrix m(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (Letter l : sub.image(static_cast<Letter>(j))) ++m(l, j);
  }
  return m;
}

Primitivity is_primitive(const IntMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return {};
  std::vector<std::uint8_t> pattern(n * n), current(n * n), next(n * n);
  for (std::size_t i = 0; i < n * n; ++i) pattern[i] = m.data()[i] > 0;
  current = pattern;
  const std::size_t bound = (n - 1) * (n - 1) + 1;
  for (std::size_t k = 1; k <= bound; ++k) {
    if (std::all_of(current.begin(), current.end(), [](std::uint8_t v) { return v != 0; })) {
      return {true, static_cast<unsigned>(k)};
    }
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 0; l < n; ++l) {
        if (!current[i * n + l]) continue;
        for (std::size_t j = 0; j < n; ++j) next[i * n + j] |= pattern[l * n + j];
      }
    }
    current.swap(next);
  }
  return {};
}

IntPolynomial characteristic_polynomial(const IntMatrix& m) {
  // Faddeev-LeVerrier: N_1 = I, c_{n-k} = -tr(M N_k)/k, N_{k+1} = M N_k + c_{n-k} I.
  // Every division by k is exact over the integers.
  const std::size_t n = m.size();
  std::vector<BigInt> coeffs(n + 1, 0);
  coeffs[n] = 1;
  std::vector<BigInt> a(n * n), nk(n * n, 0), prod(n * n);
  for (std::size_t i = 0; i < n * n; ++i) a[i] = m.data()[i];
  for (std::size_t i = 0; i < n; ++i) nk[i * n + i] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        BigInt acc = 0;
        for (std::size_t l = 0; l < n; ++l) acc += a[i * n + l] * nk[l * n + j];
        prod[i * n + j] = acc;
      }
    }
    BigInt trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += prod[i * n + i];
    const BigInt c = -trace / static_cast<long>(k);
    coeffs[n - k] = c;
    nk = prod;
    for (std::size_t i = 0; i < n; ++i) nk[i * n + i] += c;
  }
  return IntPolynomial(std::move(coeffs));
}

std::string to_string(PisotVerdict verdict) {
  switch (verdict) {
    case PisotVerdict::Yes: return "yes";
    case PisotVerdict::No: return "no";
    case PisotVerdict::Indeterminate: return "indeterminate";
  }
  return "?";
}

std::string to_string(UnitCircle where) {
  switch (where) {
    case UnitCircle::Inside: return "inside";
    case UnitCircle::On: return "on";
    case UnitCircle::Outside: return "outside";
    case UnitCircle::Undetermined: return "undetermined";
  }
  return "?";
}

PerronData perron_data(const IntMatrix& m, double tolerance) {
  const std::size_t n = m.size();
  std::vector<long double> v(n, 1.0L / std::sqrt(static_cast<long double>(n))), mv(n);
  long double low = 0, high = std::numeric_limits<long double>::infinity();
  unsigned iter = 0;
  constexpr unsigned kMaxIterations = 1'000'000;
  for (; iter < kMaxIterations; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      long double acc = 0;
      for (std::size_t j = 0; j < n; ++j) acc += static_cast<long double>(m(i, j)) * v[j];
      mv[i] = acc;
    }
    low = std::numeric_limits<long double>::infinity();
    high = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] <= 0) {
        low = 0;
        high = std::numeric_limits<long double>::infinity();
        break;
      }
      const long double ratio = mv[i] / v[i];
      low = std::min(low, ratio);
      high = std::max(high, ratio);
    }
    long double norm = 0;
    for (long double x : mv) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0) break;
    const bool done = high - low <= tolerance * std::max(1.0L, high);
    for (std::size_t i = 0; i < n; ++i) v[i] = mv[i] / norm;
    if (done) break;
  }
  PerronData out;
  out.iterations = iter;
  out.bracket_low = static_cast<double>(low);
  out.bracket_high = static_cast<double>(high);
  const long double mid = (low + high) / 2;
  out.dilation = static_cast<double>(mid);
  // Half-width of the bracket plus rounding in the last iteration.
  out.dilation_error = static_cast<double>((high - low) / 2 +
                                           64 * n * std::numeric_limits<long double>::epsilon() * high) +
                       std::numeric_limits<double>::epsilon() * out.dilation;
  out.vector.assign(v.begin(), v.end());
  long double residual = 0;
  for (std::size_t i = 0; i < n; ++i) {
    long double acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc += static_cast<long double>(m(i, j)) * v[j];
    const long double d = acc - mid * v[i];
    residual += d * d;
  }
  out.residual = static_cast<double>(std::sqrt(residual));
  return out;
}

namespace {

UnitCircle locate(const RootEnclosure& r) {
  if (r.exact) {
    const long double mod = std::abs(r.center);
    if (mod < 1) return UnitCircle::Inside;
    if (mod == 1) return UnitCircle::On;
    return UnitCircle::Outside;
  }
  if (r.modulus_upper() < 1) return UnitCircle::Inside;
  if (r.modulus_lower() > 1) return UnitCircle::Outside;
  return UnitCircle::Undetermined;
}

// Spectrum rule over a list of roots that contains the dominant one.
PisotVerdict spectrum_rule(const std::vector<RootReport>& roots) {
  int outside = 0, undetermined = 0, on = 0;
  for (const auto& r : roots) {
    switch (r.where) {
      case UnitCircle::Outside: ++outside; break;
      case UnitCircle::Undetermined: ++undetermined; break;
      case UnitCircle::On: ++on; break;
      case UnitCircle::Inside: break;
    }
  }
  if (outside >= 2 || on > 0) return PisotVerdict::No;
  if (undetermined > 0) return PisotVerdict::Indeterminate;
  return outside == 1 ? PisotVerdict::Yes : PisotVerdict::No;
}

std::vector<RootReport> locate_all(const IntPolynomial& poly) {
  std::vector<RootReport> out;
  for (const auto& e : enclose_roots(poly)) out.push_back({e, locate(e)});
  std::sort(out.begin(), out.end(), [](const RootReport& a, const RootReport& b) {
    const auto ma = std::abs(a.enclosure.center), mb = std::abs(b.enclosure.center);
    if (ma != mb) return ma > mb;
    if (a.enclosure.center.real() != b.enclosure.center.real()) return a.enclosure.center.real() > b.enclosure.center.real();
    return a.enclosure.center.imag() > b.enclosure.center.imag();
  });
  return out;
}

PisotVerdict dilation_is_pisot(const ClassificationReport& report, double dilation) {
  if (!report.factorization.complete) return PisotVerdict::Indeterminate;
  // The irreducible factor vanishing at the dilation (relative residual).
  const IntPolynomial* best = nullptr;
  long double best_score = std::numeric_limits<long double>::infinity();
  for (const auto& f : report.factorization.factors) {
    const std::complex<long double> z(dilation, 0);
    const long double score = std::abs(f.evaluate(z)) / std::max(1.0L, f.absolute_evaluate(dilation));
    if (score < best_score) {
      best_score = score;
      best = &f;
    }
  }
  if (best == nullptr) return PisotVerdict::Indeterminate;
  return spectrum_rule(locate_all(*best));
}

}  // namespace

ClassificationReport classify_matrix(const IntMatrix& m, double tolerance) {
  if (!(tolerance > 0)) throw InputError("tolerance must be positive");
  ClassificationReport report;
  report.tolerance = tolerance;
  report.primitivity = is_primitive(m);
  report.char_poly = characteristic_polynomial(m);
  const auto verdict = test_irreducible(report.char_poly);
  report.irreducible = verdict.irreducible;
  report.irreducibility_certified = verdict.certified;
  report.irreducibility_method = verdict.method;
  report.factorization = factor_monic(report.char_poly);
  report.roots = locate_all(report.char_poly);
  if (!report.primitive()) return report;

  report.perron = perron_data(m, tolerance);
  report.pisot_type = spectrum_rule(report.roots);
  report.dilation_pisot = dilation_is_pisot(report, report.perron->dilation);
  report.irreducible_pisot =
      report.irreducible && report.irreducibility_certified && *report.pisot_type == PisotVerdict::Yes;
  return report;
}

ClassificationReport classify(const Substitution& sub, double tolerance) {
  return classify_matrix(abelianization_matrix(sub), tolerance);
}

}  // namespace subdyn
