#pragma once
// Linking matrices, their cofactors, and the a_0 / divisibility checks
// that tie them to the Conway polynomial.

#include <cstddef>
#include <vector>

#include "pconway/diagram.hpp"
#include "pconway/polynomial.hpp"

namespace pconway {

/// Symmetric n x n matrix with pairwise linking numbers off the diagonal
/// and l_ii = -sum_{j != i} l_ij, so every row sums to zero.
class LinkingMatrix {
 public:
  LinkingMatrix() = default;
  /// Builds the matrix from off-diagonal data; the diagonal is recomputed.
  explicit LinkingMatrix(std::vector<std::vector<BigInt>> entries);

  std::size_t size() const { return entries_.size(); }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return entries_[i][j]; }
  const std::vector<std::vector<BigInt>>& rows() const { return entries_; }
  bool is_zero() const;

 private:
  std::vector<std::vector<BigInt>> entries_;
};

LinkingMatrix build_linking_matrix(const LinkDiagram& d);

/// Exact determinant by fraction-free Bareiss elimination.
BigInt determinant(std::vector<std::vector<BigInt>> m);

/// (-1)^(i+j) det(m without row i and column j). Throws on n = 0.
BigInt cofactor(const LinkingMatrix& m, std::size_t i, std::size_t j);

/// (-1)^(n-1) * cofactor(m, 0, 0); 1 for a single component. The sign turns
/// the cofactor of the negated Laplacian into the spanning-tree sum.
BigInt a0_from_matrix(const LinkingMatrix& m);

struct LevineReport {
  int components = 0;
  bool algebraically_split = false;
  /// Set only when split.
  bool divisible = false;
  bool conway_is_zero = false;
  /// Coefficient of z^(2n-2) in the Conway polynomial (split links only).
  BigInt leading_quotient_term = 0;
  IntPolynomial conway;
};

/// Computes the Conway polynomial with default engine options.
LevineReport check_levine(const LinkDiagram& d);
/// Same, with a precomputed Conway polynomial.
LevineReport check_levine(const LinkDiagram& d, const IntPolynomial& conway_poly);

}  // namespace pconway
