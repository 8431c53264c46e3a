#pragma once

// Nonnegative integer solutions of a homogeneous system A z = 0: membership,
// the Hilbert basis of the solution monoid, a decomposition of the solution
// set into disjoint simple linear sets, and its generating function.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cogrowth/bigint.hpp"
#include "cogrowth/nrational.hpp"
#include "cogrowth/series.hpp"

namespace cogrowth {

using IntVector = std::vector<BigInt>;

class DioSystem {
 public:
  /// Throws std::invalid_argument unless there is at least one row and one
  /// column and all rows have the same width.
  explicit DioSystem(std::vector<IntVector> rows);

  std::size_t rows() const noexcept { return matrix_.size(); }
  std::size_t cols() const noexcept { return matrix_.front().size(); }
  const BigInt& at(std::size_t r, std::size_t c) const { return matrix_.at(r).at(c); }
  const std::vector<IntVector>& matrix() const noexcept { return matrix_; }

  IntVector image(std::span<const BigInt> z) const;

  friend bool operator==(const DioSystem&, const DioSystem&) = default;

 private:
  std::vector<IntVector> matrix_;
};

/// L(base; periods) = { base + sum n_i periods_i : n_i in N }.
struct LinearSet {
  IntVector base;
  std::vector<IntVector> periods;

  /// Periods linearly independent over Q.
  bool is_simple() const;
  /// Requires a simple set.
  bool contains(std::span<const BigInt> z) const;
  /// `base=<v> periods=<u;u;...>`
  std::string to_string() const;

  friend bool operator==(const LinearSet&, const LinearSet&) = default;
};

struct SemilinearDecomposition {
  std::size_t dimension = 0;
  std::vector<LinearSet> parts;
  /// Largest total degree up to which disjointness and completeness were checked.
  std::size_t verified_degree = 0;
};

/// Throws std::invalid_argument on a length mismatch.
bool z_membership(const DioSystem& sys, std::span<const BigInt> z);
bool z_membership(const DioSystem& sys, std::span<const Exponent> z);

/// Minimal nonzero solutions, sorted.
std::vector<IntVector> hilbert_basis(const DioSystem& sys);

/// Primitive generators of the extreme rays of the solution cone, sorted.
std::vector<IntVector> extreme_rays(const DioSystem& sys);

/// Disjoint simple linear sets whose union is the solution set. The result
/// is checked against enumerate_solutions up to `verify_degree`; a failed
/// check throws std::logic_error.
SemilinearDecomposition simple_decomposition(const DioSystem& sys, std::size_t verify_degree = 12);

/// Sum over parts of x^base prod_i 1/(1 - x^period_i). Throws
/// std::invalid_argument on a part that is not simple.
NRationalExpr nrational_of(const SemilinearDecomposition& dec);

/// All solutions with coordinate sum at most `degree_cap`, sorted.
std::vector<IntVector> enumerate_solutions(const DioSystem& sys, std::size_t degree_cap);

std::string format_vector(std::span<const BigInt> v);

}  // namespace cogrowth
