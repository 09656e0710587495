#include "pconway/linking.hpp"

#include <stdexcept>

#include "pconway/skein.hpp"

namespace pconway {

LinkingMatrix::LinkingMatrix(std::vector<std::vector<BigInt>> entries)
    : entries_(std::move(entries)) {
  const std::size_t n = entries_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (entries_[i].size() != n) throw std::invalid_argument("linking matrix must be square");
    for (std::size_t j = 0; j < i; ++j)
      if (entries_[i][j] != entries_[j][i])
        throw std::invalid_argument("linking matrix must be symmetric");
  }
  for (std::size_t i = 0; i < n; ++i) {
    BigInt sum = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) sum += entries_[i][j];
    entries_[i][i] = -sum;
  }
}

bool LinkingMatrix::is_zero() const {
  for (const auto& row : entries_)
    for (const auto& v : row)
      if (sgn(v) != 0) return false;
  return true;
}

LinkingMatrix build_linking_matrix(const LinkDiagram& d) {
  const auto lab = components(d);
  const auto n = static_cast<std::size_t>(lab.count);
  std::vector<std::vector<long>> twice(n, std::vector<long>(n, 0));
  for (const auto& c : d.crossings()) {
    const auto u = static_cast<std::size_t>(lab.component_of(c.under_in()));
    const auto o = static_cast<std::size_t>(lab.component_of(c.over_in()));
    if (u == o) continue;
    twice[u][o] += c.sign;
    twice[o][u] += c.sign;
  }
  std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (twice[i][j] % 2 != 0) throw ValidationError("odd crossing count between two components");
      m[i][j] = twice[i][j] / 2;
    }
  return LinkingMatrix(std::move(m));
}

BigInt determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m[k][k]) == 0) {
      std::size_t r = k + 1;
      while (r < n && sgn(m[r][k]) == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

BigInt cofactor(const LinkingMatrix& m, std::size_t i, std::size_t j) {
  const std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument("cofactor of an empty matrix");
  if (i >= n || j >= n) throw std::out_of_range("cofactor index out of range");
  std::vector<std::vector<BigInt>> minor;
  minor.reserve(n - 1);
  for (std::size_t r = 0; r < n; ++r) {
    if (r == i) continue;
    std::vector<BigInt> row;
    row.reserve(n - 1);
    for (std::size_t c = 0; c < n; ++c)
      if (c != j) row.push_back(m(r, c));
    minor.push_back(std::move(row));
  }
  BigInt det = determinant(std::move(minor));
  return (i + j) % 2 == 0 ? det : BigInt(-det);
}

BigInt a0_from_matrix(const LinkingMatrix& m) {
  if (m.size() == 0) throw std::invalid_argument("a0_from_matrix needs at least one component");
  if (m.size() == 1) return 1;
  BigInt c = cofactor(m, 0, 0);
  return (m.size() - 1) % 2 == 0 ? c : BigInt(-c);
}

LevineReport check_levine(const LinkDiagram& d) { return check_levine(d, conway(d)); }

LevineReport check_levine(const LinkDiagram& d, const IntPolynomial& conway_poly) {
  LevineReport r;
  const auto lm = build_linking_matrix(d);
  r.components = static_cast<int>(lm.size());
  r.algebraically_split = lm.is_zero();
  r.conway = conway_poly;
  r.conway_is_zero = conway_poly.is_zero();
  if (!r.algebraically_split) return r;
  const auto bound = static_cast<long>(2 * r.components - 2);
  r.divisible = conway_poly.is_zero() || conway_poly.valuation() >= bound;
  r.leading_quotient_term = conway_poly.coefficient(static_cast<std::size_t>(bound));
  return r;
}

}  // namespace pconway
