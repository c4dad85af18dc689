#pragma once

// Abelianization matrix of a substitution and its exact/numeric analysis:
// primitivity, characteristic polynomial, irreducibility over Q, Pisot
// classification and Perron data.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subdyn/polynomial.hpp"
#include "subdyn/word.hpp"

namespace subdyn {

// Square integer matrix, row-major. Arithmetic throws std::overflow_error
// instead of wrapping.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), data_(n * n, 0) {}
  IntMatrix(std::size_t n, std::vector<std::int64_t> row_major);
  static IntMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const std::vector<std::int64_t>& data() const { return data_; }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  AbelianVector operator*(const AbelianVector& v) const;
  IntMatrix power(unsigned k) const;
  IntMatrix transpose() const;

  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> data_;
};

// M[i][j] = |tau(j)|_i.
IntMatrix abelianization_matrix(const Substitution& sub);

struct Primitivity {
  bool primitive = false;
  // Least k with M^k > 0 entrywise.
  std::optional<unsigned> exponent;
};

// Checks k up to the Wielandt bound (n-1)^2 + 1.
Primitivity is_primitive(const IntMatrix& m);

// det(xI - M), exact (Faddeev-LeVerrier over the integers).
IntPolynomial characteristic_polynomial(const IntMatrix& m);

enum class PisotVerdict { Yes, No, Indeterminate };
std::string to_string(PisotVerdict verdict);

enum class UnitCircle { Inside, On, Outside, Undetermined };
std::string to_string(UnitCircle where);

struct RootReport {
  RootEnclosure enclosure;
  UnitCircle where;
};

struct PerronData {
  double dilation;
  // |dilation - true value| <= dilation_error (Collatz-Wielandt bracket).
  double dilation_error;
  double bracket_low;
  double bracket_high;
  std::vector<double> vector;  // unit 2-norm, strictly positive
  double residual;             // ||M w - dilation w||_2
  unsigned iterations;
};

struct ClassificationReport {
  Primitivity primitivity;
  IntPolynomial char_poly;
  bool irreducible = false;
  bool irreducibility_certified = true;
  std::string irreducibility_method;
  Factorization factorization;
  std::vector<RootReport> roots;

  // Only for primitive substitutions.
  std::optional<PerronData> perron;
  // Spectrum rule: exactly one root outside the unit disk, all others
  // certified inside.
  std::optional<PisotVerdict> pisot_type;
  // Whether the dilation itself is a Pisot number (conjugates = the other
  // roots of the irreducible factor containing it).
  std::optional<PisotVerdict> dilation_pisot;
  bool irreducible_pisot = false;

  double tolerance = 0;
  bool primitive() const { return primitivity.primitive; }
};

ClassificationReport classify(const Substitution& sub, double tolerance = 1e-10);
ClassificationReport classify_matrix(const IntMatrix& m, double tolerance = 1e-10);

// Power iteration with a Collatz-Wielandt stopping rule. For a primitive
// matrix, or any nonnegative matrix whose power iteration converges.
PerronData perron_data(const IntMatrix& m, double tolerance = 1e-10);

}  // namespace subdyn
