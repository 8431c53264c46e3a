#pragma once

// Sparse multivariate power series with exact integer coefficients, stored up
// to a truncation. A truncation is a downward-closed set of exponent vectors
// described by per-variable caps and weighted-degree caps
// (sum_i w_i e_i <= cap, w_i >= 0). Plain total-degree truncation is the
// special case of a single all-ones weight vector. Because the kept set is
// downward closed, sums and products of truncated series are exact on every
// kept monomial.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cogrowth/bigint.hpp"

namespace cogrowth {

using Exponent = std::uint32_t;
using Monomial = std::vector<Exponent>;

inline constexpr Exponent kUnbounded = std::numeric_limits<Exponent>::max();

struct WeightedCap {
  std::vector<Exponent> weights;
  Exponent cap = kUnbounded;

  friend bool operator==(const WeightedCap&, const WeightedCap&) = default;
  friend auto operator<=>(const WeightedCap&, const WeightedCap&) = default;
};

class Truncation {
 public:
  /// Keeps every monomial.
  Truncation() = default;
  static Truncation total_degree(std::size_t vars, Exponent cap);
  /// Per-variable caps, one per variable.
  static Truncation box(std::vector<Exponent> caps);

  bool admits(std::span<const Exponent> m) const noexcept;
  /// True when finitely many monomials over `vars` variables are kept.
  bool is_finite(std::size_t vars) const noexcept;
  bool is_unbounded() const noexcept { return box_.empty() && linear_.empty(); }

  /// Intersection of the kept sets.
  Truncation meet(const Truncation& other) const;

  /// Largest k with (k, ..., k) kept over `vars` variables.
  Exponent diagonal_reach(std::size_t vars) const noexcept;
  /// Largest exponent of variable `v` alone that is kept.
  Exponent variable_cap(std::size_t v) const noexcept;

  /// Image under identifying variable j with variable i (j removed).
  Truncation identify(std::size_t i, std::size_t j) const;
  /// Relabels variables into a space of `vars` variables; old variable k
  /// becomes `mapping[k]`. New variables are unconstrained.
  Truncation embed(std::size_t vars, std::span<const std::size_t> mapping) const;

  const std::vector<Exponent>& box_caps() const noexcept { return box_; }
  const std::vector<WeightedCap>& weighted_caps() const noexcept { return linear_; }

  std::string to_string() const;

  friend bool operator==(const Truncation&, const Truncation&) = default;

 private:
  void normalize();

  std::vector<Exponent> box_;
  std::vector<WeightedCap> linear_;
};

class TruncatedSeries {
 public:
  using Term = std::pair<Monomial, BigInt>;

  explicit TruncatedSeries(std::size_t vars, Truncation truncation = {});

  static TruncatedSeries constant(std::size_t vars, BigInt c, Truncation truncation = {});
  static TruncatedSeries monomial(Monomial m, BigInt c = 1, Truncation truncation = {});
  static TruncatedSeries variable(std::size_t vars, std::size_t v, Truncation truncation = {});
  /// Terms are summed; monomials outside the truncation are dropped.
  static TruncatedSeries from_terms(std::size_t vars, std::vector<Term> terms,
                                    Truncation truncation = {});
  /// Takes terms that are already sorted, distinct, nonzero and kept.
  static TruncatedSeries from_canonical(std::size_t vars, std::vector<Term> terms, Truncation truncation);

  std::size_t var_count() const noexcept { return vars_; }
  const Truncation& truncation() const noexcept { return truncation_; }
  /// Sorted by monomial, no zero coefficients.
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  BigInt coefficient(std::span<const Exponent> m) const;
  /// Pointer into the term table, or nullptr.
  const BigInt* find(std::span<const Exponent> m) const;
  BigInt constant_term() const;
  bool has_negative_coefficient() const;

  TruncatedSeries truncated(const Truncation& extra) const;

  /// Sorted `e1,e2,...: c` lines.
  std::string to_string() const;

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  std::size_t vars_;
  Truncation truncation_;
  std::vector<Term> terms_;
};

/// Result truncation is the meet of the inputs'. Throw std::invalid_argument
/// on a variable-count mismatch.
TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries scale(const TruncatedSeries& a, const BigInt& c);

inline TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) { return add(a, b); }
inline TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return sub(a, b); }
inline TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) { return mul(a, b); }

/// 1/(1 - h) expanded as sum_k h^k within h's truncation. Throws
/// std::invalid_argument when h has a nonzero constant term, or when the
/// truncation keeps infinitely many monomials and h is nonzero.
TruncatedSeries quasi_inverse(const TruncatedSeries& h);

/// Keeps the terms whose exponents of variables i and j agree and removes
/// variable j (0-based, i < j).
TruncatedSeries primitive_diagonal(const TruncatedSeries& f, std::size_t i, std::size_t j);

/// Univariate series sum_k a(k,...,k) z^k. The result is truncated at the
/// largest k the input truncation keeps exactly, so no unfaithful coefficient
/// is ever reported.
TruncatedSeries complete_diagonal(const TruncatedSeries& f);

/// Coefficients c_0..c_{reach} of a univariate series, reach being its degree cap.
/// Throws std::invalid_argument when the series is not univariate or unbounded
/// without an explicit `max_degree`.
std::vector<BigInt> univariate_coefficients(const TruncatedSeries& f,
                                            Exponent max_degree = kUnbounded);

/// For f over (x_1..x_p, z) with z last: the coefficient of z^l is the sum of
/// the coefficients of x^k z^l over all k with member(k). Throws
/// std::invalid_argument when the truncation could have dropped a term with
/// z-degree at most `max_degree`.
std::vector<BigInt> filtered_diagonal_sum(const TruncatedSeries& f,
                                          const std::function<bool(std::span<const Exponent>)>& member,
                                          Exponent max_degree);

/// One factor of a product whose complete diagonal is wanted. Local variable
/// k of `series` is global variable `variables[k]`.
struct DiagonalFactor {
  const TruncatedSeries* series = nullptr;
  std::vector<std::size_t> variables;
};

/// Coefficients 0..max_degree of the complete diagonal of the product of the
/// factors over `global_vars` variables, without forming the product. Each
/// factor must keep the whole box [0, max_degree]^vars, which makes every
/// returned coefficient exact; otherwise std::invalid_argument.
std::vector<BigInt> product_diagonal(std::span<const DiagonalFactor> factors,
                                     std::size_t global_vars, Exponent max_degree);

/// Relabels `f` into `vars` variables.
TruncatedSeries embed(const TruncatedSeries& f, std::size_t vars, std::span<const std::size_t> mapping);

}  // namespace cogrowth
