#include "pconway/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace pconway {

IntPolynomial::IntPolynomial(std::vector<BigInt> coefficients)
    : coeffs_(std::move(coefficients)) {
  normalize();
}

IntPolynomial::IntPolynomial(std::initializer_list<long> coefficients) {
  coeffs_.reserve(coefficients.size());
  for (long c : coefficients) coeffs_.emplace_back(c);
  normalize();
}

IntPolynomial IntPolynomial::constant(const BigInt& c) {
  return IntPolynomial(std::vector<BigInt>{c});
}

IntPolynomial IntPolynomial::monomial(const BigInt& c, std::size_t degree) {
  std::vector<BigInt> v(degree + 1);
  v[degree] = c;
  return IntPolynomial(std::move(v));
}

void IntPolynomial::normalize() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

long IntPolynomial::valuation() const {
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (sgn(coeffs_[k]) != 0) return static_cast<long>(k);
  return -1;
}

BigInt IntPolynomial::coefficient(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : BigInt(0);
}

IntPolynomial IntPolynomial::operator-() const {
  IntPolynomial r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  normalize();
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  normalize();
  return *this;
}

IntPolynomial IntPolynomial::shifted(std::size_t k) const {
  if (is_zero()) return {};
  std::vector<BigInt> v(k + coeffs_.size());
  std::copy(coeffs_.begin(), coeffs_.end(), v.begin() + static_cast<std::ptrdiff_t>(k));
  return IntPolynomial(std::move(v));
}

IntPolynomial poly_add(const IntPolynomial& a, const IntPolynomial& b) {
  IntPolynomial r = a;
  r += b;
  return r;
}

IntPolynomial poly_sub(const IntPolynomial& a, const IntPolynomial& b) {
  IntPolynomial r = a;
  r -= b;
  return r;
}

IntPolynomial poly_mul(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& x = a.coefficients();
  const auto& y = b.coefficients();
  std::vector<BigInt> v(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) v[i + j] += x[i] * y[j];
  }
  return IntPolynomial(std::move(v));
}

IntPolynomial poly_mod(const IntPolynomial& a, long p) {
  if (p < 2) throw std::invalid_argument("poly_mod: modulus must be >= 2");
  const BigInt m(p);
  std::vector<BigInt> v(a.coefficients().size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    mpz_fdiv_r(v[k].get_mpz_t(), a.coefficients()[k].get_mpz_t(), m.get_mpz_t());
  }
  return IntPolynomial(std::move(v));
}

std::string to_string(const IntPolynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  const auto& c = p.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (sgn(c[k]) == 0) continue;
    BigInt mag = abs(c[k]);
    if (first) {
      if (sgn(c[k]) < 0) out << '-';
    } else {
      out << (sgn(c[k]) < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << '*';
    out << 'z';
    if (k > 1) out << '^' << k;
  }
  return out.str();
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view s) {
    for (char ch : s)
      if (!std::isspace(static_cast<unsigned char>(ch))) text_.push_back(ch);
  }

  IntPolynomial parse() {
    if (text_.empty()) fail("empty input");
    IntPolynomial result;
    bool first = true;
    while (pos_ < text_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      result += term(sign);
    }
    return result;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& what) const {
    throw PolynomialParseError("polynomial parse error at offset " + std::to_string(pos_) +
                               ": " + what);
  }

  BigInt number() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return BigInt(text_.substr(start, pos_ - start));
  }

  IntPolynomial term(int sign) {
    BigInt coeff = 1;
    bool has_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = number();
      has_coeff = true;
    }
    std::size_t degree = 0;
    if (has_coeff && peek() == '*') {
      ++pos_;
      if (peek() != 'z') fail("expected 'z' after '*'");
    }
    if (peek() == 'z') {
      ++pos_;
      degree = 1;
      if (peek() == '^') {
        ++pos_;
        BigInt d = number();
        if (!d.fits_ulong_p()) fail("degree too large");
        degree = d.get_ui();
      }
    } else if (!has_coeff) {
      fail("expected a coefficient or 'z'");
    }
    return IntPolynomial::monomial(sign * coeff, degree);
  }

  std::string text_;
  std::size_t pos_ = 0;
};

}  // namespace

IntPolynomial parse_polynomial(std::string_view text) { return PolyParser(text).parse(); }

IntPolynomial ConwayNormalForm::reconstruct() const {
  std::vector<BigInt> v;
  if (even_coefficients.empty()) return {};
  v.resize(static_cast<std::size_t>(component_count - 1) + 2 * even_coefficients.size());
  for (std::size_t i = 0; i < even_coefficients.size(); ++i)
    v[static_cast<std::size_t>(component_count - 1) + 2 * i] = even_coefficients[i];
  return IntPolynomial(std::move(v));
}

ConwayNormalForm to_normal_form(const IntPolynomial& poly, int component_count) {
  if (component_count < 1)
    throw std::invalid_argument("to_normal_form: component count must be positive");
  ConwayNormalForm nf;
  nf.component_count = component_count;
  const auto shift = static_cast<std::size_t>(component_count - 1);
  const auto& c = poly.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (sgn(c[k]) == 0) continue;
    if (k < shift || (k - shift) % 2 != 0) {
      throw ParityError("term of degree " + std::to_string(k) +
                        " is incompatible with " + std::to_string(component_count) +
                        " components");
    }
  }
  for (std::size_t k = shift; k < c.size(); k += 2) nf.even_coefficients.push_back(c[k]);
  while (!nf.even_coefficients.empty() && sgn(nf.even_coefficients.back()) == 0)
    nf.even_coefficients.pop_back();
  return nf;
}

}  // namespace pconway
