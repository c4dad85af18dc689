#include "subdyn/polynomial.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <numeric>

#include "subdyn/errors.hpp"

namespace subdyn {

using boost::multiprecision::cpp_rational;

IntPolynomial::IntPolynomial(std::vector<BigInt> ascending) : coeffs_(std::move(ascending)) { trim(); }

IntPolynomial IntPolynomial::monomial(const BigInt& coeff, std::size_t degree) {
  std::vector<BigInt> c(degree + 1, 0);
  c[degree] = coeff;
  return IntPolynomial(std::move(c));
}

void IntPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const BigInt& IntPolynomial::coefficient(std::size_t i) const {
  static const BigInt zero = 0;
  return i < coeffs_.size() ? coeffs_[i] : zero;
}

BigInt IntPolynomial::evaluate(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<long double> IntPolynomial::evaluate(std::complex<long double> z) const {
  std::complex<long double> acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * z + static_cast<long double>(*it);
  }
  return acc;
}

long double IntPolynomial::absolute_evaluate(long double radius) const {
  long double acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * radius + std::fabs(static_cast<long double>(*it));
  }
  return acc;
}

IntPolynomial IntPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return IntPolynomial();
  std::vector<BigInt> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return IntPolynomial(std::move(d));
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coefficient(i) + b.coefficient(i);
  return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coefficient(i) - b.coefficient(i);
  return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return IntPolynomial();
  std::vector<BigInt> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return IntPolynomial(std::move(c));
}

std::optional<IntPolynomial> IntPolynomial::divide_exact(const IntPolynomial& divisor) const {
  if (!divisor.is_monic()) throw std::invalid_argument("divide_exact needs a monic divisor");
  if (is_zero()) return IntPolynomial();
  if (degree() < divisor.degree()) return std::nullopt;
  std::vector<BigInt> rem = coeffs_;
  const auto dd = static_cast<std::size_t>(divisor.degree());
  std::vector<BigInt> quot(rem.size() - dd, 0);
  for (std::size_t k = quot.size(); k-- > 0;) {
    const BigInt q = rem[k + dd];
    quot[k] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) rem[k + j] -= q * divisor.coeffs_[j];
  }
  for (std::size_t j = 0; j < dd; ++j) {
    if (rem[j] != 0) return std::nullopt;
  }
  return IntPolynomial(std::move(quot));
}

std::string IntPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const BigInt& c = coeffs_[i];
    if (c == 0) continue;
    const bool negative = c < 0;
    const BigInt mag = negative ? BigInt(-c) : c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (mag != 1 || i == 0) out += mag.str();
    if (i >= 1) out += "x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

namespace {

std::vector<RootEnclosure> numeric_enclosures(const IntPolynomial& poly);

const BigInt kDivisorEnumerationLimit = BigInt(1000000000000LL);

std::vector<BigInt> positive_divisors(const BigInt& value) {
  BigInt n = abs(value);
  std::vector<BigInt> small, large;
  for (BigInt d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

IntPolynomial linear(const BigInt& root) { return IntPolynomial({-root, BigInt(1)}); }

}  // namespace

std::vector<BigInt> integer_roots(const IntPolynomial& monic) {
  if (!monic.is_monic()) throw std::invalid_argument("integer_roots needs a monic polynomial");
  std::vector<BigInt> roots;
  IntPolynomial rest = monic;
  while (rest.degree() >= 1 && rest.coefficient(0) == 0) {
    roots.push_back(0);
    rest = *rest.divide_exact(linear(0));
  }
  if (rest.degree() < 1) return roots;

  std::vector<BigInt> candidates;
  if (abs(rest.coefficient(0)) <= kDivisorEnumerationLimit) {
    for (const BigInt& d : positive_divisors(rest.coefficient(0))) {
      candidates.push_back(d);
      candidates.push_back(-d);
    }
  } else {
    // Integer roots are real roots; probe integers next to numeric roots.
    for (const auto& r : numeric_enclosures(rest)) {
      if (std::fabs(r.center.imag()) > 0.5L + r.radius) continue;
      const long double re = r.center.real();
      for (long double probe : {std::floor(re), std::ceil(re)}) candidates.push_back(BigInt(static_cast<long long>(probe)));
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const BigInt& c : candidates) {
    while (rest.degree() >= 1 && rest.evaluate(c) == 0) {
      roots.push_back(c);
      rest = *rest.divide_exact(linear(c));
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// --- arithmetic modulo a small prime --------------------------------------

namespace {

using ModPoly = std::vector<std::uint64_t>;  // ascending, trimmed

void mod_trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1) result = result * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return result;
}

ModPoly mod_rem(ModPoly a, const ModPoly& b, std::uint64_t p) {
  mod_trim(a);
  const std::uint64_t inv = mod_pow(b.back(), p - 2, p);
  while (a.size() >= b.size()) {
    const std::uint64_t factor = a.back() * inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) {
      a[shift + j] = (a[shift + j] + p - factor * b[j] % p) % p;
    }
    mod_trim(a);
  }
  return a;
}

ModPoly mod_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  ModPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  return mod_rem(std::move(c), f, p);
}

ModPoly mod_powmod(ModPoly base, std::uint64_t exp, const ModPoly& f, std::uint64_t p) {
  ModPoly result{1};
  base = mod_rem(base, f, p);
  while (exp > 0) {
    if (exp & 1) result = mod_mulmod(result, base, f, p);
    base = mod_mulmod(base, base, f, p);
    exp >>= 1;
  }
  return result;
}

ModPoly mod_gcd(ModPoly a, ModPoly b, std::uint64_t p) {
  mod_trim(a);
  mod_trim(b);
  while (!b.empty()) {
    ModPoly r = mod_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

bool irreducible_mod_p(const IntPolynomial& monic, unsigned p) {
  const int n = monic.degree();
  if (n < 1) return false;
  ModPoly f(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    BigInt r = monic.coefficient(static_cast<std::size_t>(i)) % p;
    if (r < 0) r += p;
    f[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(r);
  }
  if (f.back() == 0) return false;
  if (n == 1) return true;
  // No irreducible factor of degree d <= n/2 iff gcd(x^(p^d) - x, f) = 1.
  ModPoly h{0, 1};
  for (int d = 1; d <= n / 2; ++d) {
    h = mod_powmod(h, p, f, p);
    ModPoly diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    mod_trim(diff);
    if (diff.empty()) return false;
    if (mod_gcd(f, diff, p).size() > 1) return false;
  }
  return true;
}

// --- Kronecker ------------------------------------------------------------

namespace {

IntPolynomial interpolate_monic(const std::vector<BigInt>& xs, const std::vector<BigInt>& ys,
                                bool& ok) {
  // Newton divided differences over Q, then expand.
  const std::size_t m = xs.size();
  std::vector<cpp_rational> table(ys.begin(), ys.end());
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = m - 1; i >= level; --i) {
      table[i] = (table[i] - table[i - 1]) / cpp_rational(xs[i] - xs[i - level]);
    }
  }
  std::vector<cpp_rational> poly{table[m - 1]};
  for (std::size_t k = m - 1; k-- > 0;) {
    std::vector<cpp_rational> next(poly.size() + 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * cpp_rational(xs[k]);
    }
    next[0] += table[k];
    poly = std::move(next);
  }
  std::vector<BigInt> coeffs;
  ok = true;
  for (const auto& c : poly) {
    if (denominator(c) != 1) {
      ok = false;
      return IntPolynomial();
    }
    coeffs.push_back(numerator(c));
  }
  return IntPolynomial(std::move(coeffs));
}

std::optional<IntPolynomial> search_degree(const IntPolynomial& f, int d) {
  struct Point {
    BigInt x;
    BigInt value;
    std::vector<BigInt> divisors;
  };
  std::vector<Point> pool;
  for (int k = 0; pool.size() < static_cast<std::size_t>(4 * (d + 1)) && k < 200; ++k) {
    const BigInt x = (k % 2 == 0) ? BigInt(k / 2) : BigInt(-(k + 1) / 2);
    const BigInt v = f.evaluate(x);
    if (v == 0) return linear(x);
    if (abs(v) > kDivisorEnumerationLimit) continue;
    pool.push_back({x, v, {}});
  }
  if (pool.size() < static_cast<std::size_t>(d + 1)) {
    throw std::runtime_error("kronecker: polynomial values too large to factor exhaustively");
  }
  for (auto& pt : pool) pt.divisors = positive_divisors(pt.value);
  std::stable_sort(pool.begin(), pool.end(),
                   [](const Point& a, const Point& b) { return a.divisors.size() < b.divisors.size(); });
  pool.resize(static_cast<std::size_t>(d + 1));

  std::vector<BigInt> xs;
  for (const auto& pt : pool) xs.push_back(pt.x);
  // Lagrange weights: leading coeff of interpolant = sum y_k / w_k.
  std::vector<BigInt> weights(xs.size(), 1);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j != k) weights[k] *= xs[k] - xs[j];
    }
  }

  const std::size_t free_points = static_cast<std::size_t>(d);
  std::vector<std::size_t> choice(free_points, 0);  // index into signed divisor list
  auto signed_divisor = [&](std::size_t point, std::size_t idx) {
    const auto& divs = pool[point].divisors;
    const BigInt& dv = divs[idx / 2];
    return (idx % 2 == 0) ? dv : BigInt(-dv);
  };
  std::vector<BigInt> ys(xs.size());
  while (true) {
    cpp_rational lead = 0;
    for (std::size_t k = 0; k < free_points; ++k) {
      ys[k] = signed_divisor(k, choice[k]);
      lead += cpp_rational(ys[k]) / cpp_rational(weights[k]);  // two-argument form rejects negative denominators
    }
    // Monic: y_d / w_d = 1 - lead.
    const cpp_rational last = (cpp_rational(1) - lead) * cpp_rational(weights[free_points]);
    if (denominator(last) == 1) {
      const BigInt yd = numerator(last);
      if (yd != 0 && pool[free_points].value % yd == 0) {
        ys[free_points] = yd;
        bool ok = false;
        IntPolynomial g = interpolate_monic(xs, ys, ok);
        if (ok && g.degree() == d && g.is_monic() && f.divide_exact(g)) return g;
      }
    }
    std::size_t k = 0;
    while (k < free_points) {
      if (++choice[k] < 2 * pool[k].divisors.size()) break;
      choice[k] = 0;
      ++k;
    }
    if (k == free_points) break;
  }
  return std::nullopt;
}

constexpr unsigned kScreenPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                                      53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

bool modular_screen(const IntPolynomial& f) {
  for (unsigned p : kScreenPrimes) {
    if (irreducible_mod_p(f, p)) return true;
  }
  return false;
}

}  // namespace

std::optional<IntPolynomial> kronecker_factor(const IntPolynomial& monic) {
  if (!monic.is_monic()) throw std::invalid_argument("kronecker_factor needs a monic polynomial");
  for (int d = 1; d <= monic.degree() / 2; ++d) {
    if (auto g = search_degree(monic, d)) return g;
  }
  return std::nullopt;
}

Factorization factor_monic(const IntPolynomial& monic, int max_kronecker_degree) {
  if (!monic.is_monic()) throw std::invalid_argument("factor_monic needs a monic polynomial");
  Factorization out;
  IntPolynomial rest = monic;
  for (const BigInt& r : integer_roots(monic)) {
    out.factors.push_back(linear(r));
    rest = *rest.divide_exact(linear(r));
  }
  std::vector<IntPolynomial> pending;
  if (rest.degree() >= 1) pending.push_back(rest);
  while (!pending.empty()) {
    IntPolynomial g = std::move(pending.back());
    pending.pop_back();
    if (g.degree() <= 1 || modular_screen(g)) {
      out.factors.push_back(std::move(g));
      continue;
    }
    if (g.degree() > max_kronecker_degree) {
      out.complete = false;
      out.factors.push_back(std::move(g));
      continue;
    }
    if (auto h = kronecker_factor(g)) {
      pending.push_back(*g.divide_exact(*h));
      pending.push_back(std::move(*h));
    } else {
      out.factors.push_back(std::move(g));
    }
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const IntPolynomial& a, const IntPolynomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.coefficients() < b.coefficients();
  });
  return out;
}

IrreducibilityVerdict test_irreducible(const IntPolynomial& monic, int max_kronecker_degree) {
  if (!monic.is_monic()) throw std::invalid_argument("test_irreducible needs a monic polynomial");
  if (monic.degree() < 1) return {false, true, "constant"};
  if (monic.degree() == 1) return {true, true, "linear"};
  if (!integer_roots(monic).empty()) return {false, true, "rational root"};
  for (unsigned p : kScreenPrimes) {
    if (irreducible_mod_p(monic, p)) return {true, true, "irreducible mod " + std::to_string(p)};
  }
  if (monic.degree() <= max_kronecker_degree) {
    return {!kronecker_factor(monic).has_value(), true, "kronecker"};
  }
  return {false, false, "inconclusive"};
}

// --- numeric roots --------------------------------------------------------

long double RootEnclosure::modulus_lower() const {
  return std::max(0.0L, std::abs(center) - radius);
}

long double RootEnclosure::modulus_upper() const { return std::abs(center) + radius; }

namespace {

constexpr long double kEps = std::numeric_limits<long double>::epsilon();

std::vector<std::complex<long double>> aberth(const IntPolynomial& p) {
  const int n = p.degree();
  std::vector<std::complex<long double>> z(static_cast<std::size_t>(n));
  if (n == 0) return z;
  const IntPolynomial dp = p.derivative();
  // Start on a circle of radius |c0|^(1/n), slightly rotated off the axes.
  long double r = std::pow(std::fabs(static_cast<long double>(p.coefficient(0))), 1.0L / n);
  if (!(r > 0) || !std::isfinite(r)) r = 1;
  const long double pi = std::acos(-1.0L);
  for (int k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = std::polar(r, 2 * pi * k / n + 0.4L);

  for (int iter = 0; iter < 2000; ++iter) {
    long double worst = 0;
    for (std::size_t k = 0; k < z.size(); ++k) {
      const auto pv = p.evaluate(z[k]);
      const auto dv = dp.evaluate(z[k]);
      if (pv == std::complex<long double>(0)) continue;
      const auto ratio = pv / dv;
      std::complex<long double> sum = 0;
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != k) sum += 1.0L / (z[k] - z[j]);
      }
      const auto step = ratio / (1.0L - ratio * sum);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[k] -= step;
      worst = std::max(worst, std::abs(step) / std::max(1.0L, std::abs(z[k])));
    }
    if (worst < 8 * kEps) break;
  }
  return z;
}

}  // namespace

namespace {

std::vector<RootEnclosure> numeric_enclosures(const IntPolynomial& poly) {
  std::vector<RootEnclosure> out;
  const int n = poly.degree();
  if (n < 1) return out;
  const IntPolynomial dpoly = poly.derivative();
  for (auto z : aberth(poly)) {
    const long double mod = std::abs(z);
    // Rounding of Horner's rule is bounded by ~2n eps sum |c_i| |z|^i.
    const long double slack = 4 * (n + 1) * kEps;
    const long double pv = std::abs(poly.evaluate(z)) + slack * poly.absolute_evaluate(mod);
    const long double dv = std::abs(dpoly.evaluate(z)) - slack * dpoly.absolute_evaluate(mod);
    const long double radius =
        dv > 0 ? n * pv / dv : std::numeric_limits<long double>::infinity();
    out.push_back({z, radius, false});
  }
  return out;
}

}  // namespace

std::vector<RootEnclosure> enclose_roots(const IntPolynomial& monic) {
  if (!monic.is_monic()) throw std::invalid_argument("enclose_roots needs a monic polynomial");
  std::vector<RootEnclosure> out;
  IntPolynomial rest = monic;
  for (const BigInt& r : integer_roots(monic)) {
    out.push_back({std::complex<long double>(static_cast<long double>(r), 0), 0, true});
    rest = *rest.divide_exact(linear(r));
  }
  for (auto& e : numeric_enclosures(rest)) out.push_back(e);
  return out;
}

}  // namespace subdyn
