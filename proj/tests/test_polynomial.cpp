#include "doctest.h"

#include <random>

#include "pconway/polynomial.hpp"

using namespace pconway;

namespace {

IntPolynomial random_poly(std::mt19937_64& rng) {
  std::vector<BigInt> c(rng() % 7);
  for (auto& v : c) v = static_cast<long>(rng() % 41) - 20;
  if (rng() % 5 == 0 && !c.empty()) c.back() *= BigInt("123456789012345678901234567890");
  return IntPolynomial(c);
}

}  // namespace

TEST_CASE("construction trims trailing zeros") {
  CHECK(IntPolynomial{0, 0, 0}.is_zero());
  CHECK(IntPolynomial{1, 0, 0}.degree() == 0);
  CHECK(IntPolynomial{}.degree() == -1);
  CHECK(IntPolynomial{0, 0, 3}.valuation() == 2);
  CHECK(IntPolynomial::monomial(5, 3) == IntPolynomial{0, 0, 0, 5});
  CHECK(IntPolynomial::monomial(0, 3).is_zero());
  CHECK(IntPolynomial{1, 2}.coefficient(7) == 0);
}

TEST_CASE("arithmetic") {
  const IntPolynomial a{1, 0, 1};
  const IntPolynomial b{1, 0, -1};
  CHECK(a + b == IntPolynomial{2});
  CHECK(a - b == IntPolynomial{0, 0, 2});
  CHECK(a * b == IntPolynomial{1, 0, 0, 0, -1});
  CHECK((a - a).is_zero());
  CHECK(-a == IntPolynomial{-1, 0, -1});
  CHECK(a.shifted(2) == IntPolynomial{0, 0, 1, 0, 1});
  CHECK(IntPolynomial{}.shifted(4).is_zero());
}

TEST_CASE("coefficients do not overflow") {
  IntPolynomial p{1, 1};
  for (int i = 0; i < 7; ++i) p = p * p;  // (1 + z)^128
  CHECK(p.coefficient(64) == BigInt("23951146041928082866135587776380551750"));
}

TEST_CASE("mod p uses nonnegative representatives") {
  CHECK(poly_mod(IntPolynomial{-1, 3, 4}, 3) == IntPolynomial{2, 0, 1});
  CHECK(poly_mod(IntPolynomial{3, 6}, 3).is_zero());
  CHECK_THROWS_AS(poly_mod(IntPolynomial{1}, 1), std::invalid_argument);
}

TEST_CASE("rendering") {
  CHECK(to_string(IntPolynomial{}) == "0");
  CHECK(to_string(IntPolynomial{0, 1}) == "z");
  CHECK(to_string(IntPolynomial{1, 0, -2, 0, 1}) == "1 - 2*z^2 + z^4");
  CHECK(to_string(IntPolynomial{-1, 0, 0, -3}) == "-1 - 3*z^3");
  CHECK(to_string(IntPolynomial{0, 2, 0, 1}) == "2*z + z^3");
}

TEST_CASE("parsing") {
  CHECK(parse_polynomial("1 + z^2") == IntPolynomial{1, 0, 1});
  CHECK(parse_polynomial(" z^3+2*z ") == IntPolynomial{0, 2, 0, 1});
  CHECK(parse_polynomial("-z") == IntPolynomial{0, -1});
  CHECK(parse_polynomial("0").is_zero());
  CHECK(parse_polynomial("z - z").is_zero());
  CHECK(parse_polynomial("3*z^2 + z^2") == IntPolynomial{0, 0, 4});
  CHECK_THROWS_AS(parse_polynomial(""), PolynomialParseError);
  CHECK_THROWS_AS(parse_polynomial("1 +"), PolynomialParseError);
  CHECK_THROWS_AS(parse_polynomial("x^2"), PolynomialParseError);
  CHECK_THROWS_AS(parse_polynomial("z^-1"), PolynomialParseError);
}

TEST_CASE("ring axioms and round trip on random polynomials") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 300; ++t) {
    const auto a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - b) + b == a);
    CHECK(parse_polynomial(to_string(a)) == a);
    CHECK(poly_mod(a + b, 5) == poly_mod(poly_mod(a, 5) + poly_mod(b, 5), 5));
  }
}

TEST_CASE("Conway normal form") {
  const auto hopf = to_normal_form(IntPolynomial{0, 1}, 2);
  CHECK(hopf.a(0) == 1);
  CHECK(hopf.even_coefficients.size() == 1);

  const auto trefoil = to_normal_form(IntPolynomial{1, 0, 1}, 1);
  CHECK(trefoil.a(0) == 1);
  CHECK(trefoil.a(1) == 1);
  CHECK(trefoil.a(2) == 0);

  const auto t24 = to_normal_form(IntPolynomial{0, 2, 0, 1}, 2);
  CHECK(t24.a(0) == 2);
  CHECK(t24.a(1) == 1);
  CHECK(t24.reconstruct() == IntPolynomial{0, 2, 0, 1});

  const auto zero = to_normal_form(IntPolynomial{}, 3);
  CHECK(zero.even_coefficients.empty());
  CHECK(zero.a(0) == 0);
  CHECK(zero.reconstruct().is_zero());

  // Three components with valuation 4: a_0 = 0, a_2 = 5.
  const auto borromean_like = to_normal_form(IntPolynomial{0, 0, 0, 0, 5}, 3);
  CHECK(borromean_like.a(0) == 0);
  CHECK(borromean_like.a(1) == 5);
}

TEST_CASE("Conway normal form rejects impossible degrees") {
  CHECK_THROWS_AS(to_normal_form(IntPolynomial{0, 1}, 1), ParityError);
  CHECK_THROWS_AS(to_normal_form(IntPolynomial{1}, 2), ParityError);
  CHECK_THROWS_AS(to_normal_form(IntPolynomial{0, 0, 1}, 4), ParityError);
}
