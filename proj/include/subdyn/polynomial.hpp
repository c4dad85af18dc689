#pragma once

// Exact integer polynomials: evaluation, division, rational roots,
// irreducibility tests and a small Kronecker factorizer, plus certified
// numeric root enclosures.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "subdyn/bigint.hpp"

namespace subdyn {

class IntPolynomial {
 public:
  IntPolynomial() = default;
  // Coefficients in ascending order of degree; trailing zeros are trimmed.
  explicit IntPolynomial(std::vector<BigInt> ascending);

  static IntPolynomial monomial(const BigInt& coeff, std::size_t degree);

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }
  const BigInt& coefficient(std::size_t i) const;
  const BigInt& leading() const { return coeffs_.back(); }

  BigInt evaluate(const BigInt& x) const;
  std::complex<long double> evaluate(std::complex<long double> z) const;
  // Sum |c_i| |z|^i, used to bound rounding error of evaluate(z).
  long double absolute_evaluate(long double radius) const;
  IntPolynomial derivative() const;

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  bool operator==(const IntPolynomial&) const = default;

  // Exact division by a monic divisor; nullopt when the remainder is nonzero.
  std::optional<IntPolynomial> divide_exact(const IntPolynomial& monic_divisor) const;

  // e.g. "x^2 - x - 1".
  std::string to_string() const;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

// Integer roots of a monic polynomial with multiplicity, ascending.
std::vector<BigInt> integer_roots(const IntPolynomial& monic);

// True when the polynomial is irreducible modulo the prime p (degree must be
// preserved mod p). Irreducible mod p implies irreducible over Q.
bool irreducible_mod_p(const IntPolynomial& monic, unsigned p);

// A monic factor of degree 1..deg/2 found by Kronecker's method, or nullopt
// if none exists. Exhaustive; intended for small degrees.
std::optional<IntPolynomial> kronecker_factor(const IntPolynomial& monic);

// Factorization of a monic polynomial into monic irreducible factors (with
// repetition), ascending by degree. Rational roots first, then Kronecker
// splitting for the remaining cofactor of degree <= max_kronecker_degree.
// `complete` is false if some cofactor was too large to split exhaustively
// and its irreducibility could not be certified by a modular screen.
struct Factorization {
  std::vector<IntPolynomial> factors;
  bool complete = true;
};
Factorization factor_monic(const IntPolynomial& monic, int max_kronecker_degree = 6);

// Whether the monic polynomial is irreducible over Q, and whether that verdict
// is certified (false only for large inconclusive cases).
struct IrreducibilityVerdict {
  bool irreducible;
  bool certified;
  std::string method;
};
IrreducibilityVerdict test_irreducible(const IntPolynomial& monic, int max_kronecker_degree = 6);

// A root with a disk that certifiably contains a root of the polynomial.
// Exact integer roots carry radius 0.
struct RootEnclosure {
  std::complex<long double> center;
  long double radius;
  bool exact;

  long double modulus_lower() const;
  long double modulus_upper() const;
};

// All roots (with multiplicity) of a monic polynomial. Integer roots are
// extracted exactly; the remaining ones are approximated by Aberth iteration
// and enclosed with the bound deg * |p(z)| / |p'(z)|.
std::vector<RootEnclosure> enclose_roots(const IntPolynomial& monic);

}  // namespace subdyn
