#pragma once
// Exact integer polynomials in the Conway variable z.

#include <gmpxx.h>

#include "pconway/errors.hpp"

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace pconway {

using BigInt = mpz_class;

/// Dense polynomial with arbitrary-precision coefficients, lowest degree
/// first. The highest stored coefficient is always nonzero, so the zero
/// polynomial has no coefficients at all.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coefficients);
  IntPolynomial(std::initializer_list<long> coefficients);

  static IntPolynomial constant(const BigInt& c);
  static IntPolynomial monomial(const BigInt& c, std::size_t degree);
  static IntPolynomial z() { return monomial(1, 1); }

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree of the leading term; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  /// Lowest degree carrying a nonzero coefficient; -1 for zero.
  long valuation() const;
  /// Coefficient of z^k (zero beyond the stored range).
  BigInt coefficient(std::size_t k) const;
  const std::vector<BigInt>& coefficients() const { return coeffs_; }

  IntPolynomial operator-() const;
  IntPolynomial& operator+=(const IntPolynomial& rhs);
  IntPolynomial& operator-=(const IntPolynomial& rhs);

  /// Multiplication by z^k.
  IntPolynomial shifted(std::size_t k) const;

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  void normalize();
  std::vector<BigInt> coeffs_;
};

IntPolynomial poly_add(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial poly_sub(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial poly_mul(const IntPolynomial& a, const IntPolynomial& b);

/// Reduces every coefficient to its representative in [0, p).
/// Throws std::invalid_argument when p < 2.
IntPolynomial poly_mod(const IntPolynomial& a, long p);

inline IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  return poly_add(a, b);
}
inline IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
  return poly_sub(a, b);
}
inline IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  return poly_mul(a, b);
}

/// Renders as "1 - 2*z^2 + z^4", ascending degree; zero renders as "0".
std::string to_string(const IntPolynomial& p);

/// Inverse of to_string. Accepts terms in any order and repeated degrees;
/// whitespace is insignificant.
IntPolynomial parse_polynomial(std::string_view text);

// ---------------------------------------------------------------------------
// Conway normal form
// ---------------------------------------------------------------------------

/// z^(n-1) * (a_0 + a_2 z^2 + ... + a_2m z^2m).
struct ConwayNormalForm {
  int component_count = 1;
  /// a_0, a_2, ..., a_2m; empty for the zero polynomial.
  std::vector<BigInt> even_coefficients;

  /// a_{2i}; zero past the stored range.
  BigInt a(std::size_t i) const {
    return i < even_coefficients.size() ? even_coefficients[i] : BigInt(0);
  }
  IntPolynomial reconstruct() const;
};

ConwayNormalForm to_normal_form(const IntPolynomial& poly, int component_count);

}  // namespace pconway
