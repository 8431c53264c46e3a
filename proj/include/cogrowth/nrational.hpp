#pragma once

// Expressions for N-rational series: polynomials with nonnegative integer
// coefficients closed under +, x and the quasi-inverse 1/(1 - h), h(0) = 0.
// Nodes are immutable and shared, so expressions built by substitution are
// DAGs; evaluation visits each shared node once.

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cogrowth/series.hpp"

namespace cogrowth {

class NRationalExpr {
 public:
  enum class Kind { Polynomial, Sum, Product, QuasiInverse };

  struct Node;

  /// The zero polynomial.
  explicit NRationalExpr(std::size_t vars);

  /// Throws std::invalid_argument on a negative coefficient.
  static NRationalExpr polynomial(std::size_t vars, std::vector<TruncatedSeries::Term> terms);
  static NRationalExpr constant(std::size_t vars, BigInt c);
  static NRationalExpr monomial(Monomial m);

  static NRationalExpr sum(const NRationalExpr& a, const NRationalExpr& b);
  static NRationalExpr product(const NRationalExpr& a, const NRationalExpr& b);
  /// 1/(1 - h). Throws std::invalid_argument unless h(0) = 0.
  static NRationalExpr quasi_inverse(const NRationalExpr& h);

  std::size_t var_count() const noexcept;
  Kind kind() const noexcept;
  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  /// Value at the origin.
  const BigInt& constant_term() const noexcept;
  std::span<const NRationalExpr> children() const noexcept;
  /// Terms of a Polynomial node (empty otherwise).
  const std::vector<TruncatedSeries::Term>& poly_terms() const noexcept;

  /// Number of distinct nodes in the DAG.
  std::size_t node_count() const;

  /// `names` gives one name per variable; defaults to x1, x2, ...
  std::string to_string(std::span<const std::string> names = {}) const;

  const Node* node() const noexcept { return node_.get(); }

 private:
  explicit NRationalExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Expands `e` inside `truncation`. All coefficients are nonnegative by
/// construction. Throws std::invalid_argument if a quasi-inverse cannot be
/// expanded inside the truncation.
TruncatedSeries eval_nrational(const NRationalExpr& e, const Truncation& truncation);
TruncatedSeries eval_nrational(const NRationalExpr& e, Exponent total_degree_cap);

/// Sum/product over a list; empty lists give 0 and 1.
NRationalExpr sum_of(std::size_t vars, std::span<const NRationalExpr> parts);
NRationalExpr product_of(std::size_t vars, std::span<const NRationalExpr> parts);

/// Relabels into `vars` variables (variable k becomes mapping[k]).
NRationalExpr embed(const NRationalExpr& e, std::size_t vars, std::span<const std::size_t> mapping);

}  // namespace cogrowth
