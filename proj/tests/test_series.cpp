#include <doctest.h>

#include "cogrowth/nrational.hpp"
#include "cogrowth/series.hpp"
#include "support.hpp"

using namespace cogrowth;

namespace {

using Terms = std::vector<TruncatedSeries::Term>;

TruncatedSeries poly(std::size_t vars, Terms terms, Truncation t = {}) {
  return TruncatedSeries::from_terms(vars, std::move(terms), std::move(t));
}

std::vector<BigInt> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("truncations") {
  const Truncation t = Truncation::total_degree(2, 3);
  CHECK(t.admits(Monomial{1, 2}));
  CHECK_FALSE(t.admits(Monomial{2, 2}));
  CHECK(t.is_finite(2));
  CHECK(t.diagonal_reach(2) == 1);
  CHECK(Truncation().is_unbounded());
  CHECK_FALSE(Truncation::box({kUnbounded, 3}).is_finite(2));
  const Truncation m = Truncation::box({2, 5}).meet(Truncation::total_degree(2, 4));
  CHECK(m.admits(Monomial{2, 2}));
  CHECK_FALSE(m.admits(Monomial{3, 0}));
  CHECK_FALSE(m.admits(Monomial{1, 4}));
  CHECK(m.variable_cap(1) == 4);
  CHECK(Truncation::box({3, 3}).diagonal_reach(2) == 3);
}

TEST_CASE("add and mul") {
  const TruncatedSeries x = TruncatedSeries::variable(2, 0);
  const TruncatedSeries y = TruncatedSeries::variable(2, 1);
  const TruncatedSeries one = TruncatedSeries::constant(2, 1);
  CHECK((one + x) + (one - x) == TruncatedSeries::constant(2, 2));
  CHECK((one + x) * (one + y) == poly(2, {{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}}));

  const Truncation t5 = Truncation::total_degree(1, 5);
  Terms geo;
  for (Exponent k = 0; k <= 5; ++k) geo.push_back({{k}, 1});
  const TruncatedSeries g = poly(1, geo, t5);
  CHECK(univariate_coefficients(g * g) == ints({1, 2, 3, 4, 5, 6}));
  CHECK((g * g).truncation() == t5);

  CHECK(poly(1, {{{7}, 3}}, t5).is_zero());
  CHECK(poly(1, {{{1}, 3}, {{1}, -3}}).is_zero());
  CHECK_THROWS_AS(x + TruncatedSeries::variable(3, 0), std::invalid_argument);
  CHECK(scale(x, -2).coefficient(Monomial{1, 0}) == -2);
  CHECK((x - y).has_negative_coefficient());
}

TEST_CASE("quasi_inverse") {
  const Truncation t4 = Truncation::total_degree(1, 4);
  CHECK(quasi_inverse(TruncatedSeries(1, t4)) == TruncatedSeries::constant(1, 1, t4));
  CHECK(univariate_coefficients(quasi_inverse(TruncatedSeries::variable(1, 0, t4))) == ints({1, 1, 1, 1, 1}));
  const Truncation t3 = Truncation::total_degree(2, 3);
  const auto xy = TruncatedSeries::variable(2, 0, t3) + TruncatedSeries::variable(2, 1, t3);
  CHECK(quasi_inverse(xy).coefficient(Monomial{1, 2}) == 3);
  CHECK_THROWS_AS(quasi_inverse(TruncatedSeries::constant(1, 1, t4)), std::invalid_argument);
  CHECK_THROWS_AS(quasi_inverse(TruncatedSeries::variable(1, 0)), std::invalid_argument);
  // A box with one finite side still expands a series in that variable.
  const auto z = TruncatedSeries::variable(2, 1, Truncation::box({kUnbounded, 3}));
  CHECK(quasi_inverse(z).size() == 4);
}

TEST_CASE("diagonals") {
  const auto xy = poly(2, {{{1, 1}, 1}});
  CHECK(primitive_diagonal(xy, 0, 1) == poly(1, {{{1}, 1}}));
  CHECK(primitive_diagonal(poly(2, {{{1, 0}, 1}, {{0, 1}, 1}}), 0, 1).is_zero());

  const Truncation box = Truncation::box({6, 6});
  const auto x = TruncatedSeries::variable(2, 0, box);
  const auto y = TruncatedSeries::variable(2, 1, box);
  const auto both = quasi_inverse(x) * quasi_inverse(y);
  CHECK(univariate_coefficients(primitive_diagonal(both, 0, 1), 6) == ints({1, 1, 1, 1, 1, 1, 1}));
  CHECK(univariate_coefficients(complete_diagonal(both)) == ints({1, 1, 1, 1, 1, 1, 1}));

  const auto binom = quasi_inverse(x + y);
  CHECK(univariate_coefficients(complete_diagonal(binom)) == ints({1, 2, 6, 20, 70, 252, 924}));
  for (Exponent k = 0; k <= 5; ++k) CHECK(binom.coefficient(Monomial{k, k}) == testing::binomial(2 * k, k));

  // Total degree 6 keeps (k, k) only for k <= 3.
  const Truncation td = Truncation::total_degree(2, 6);
  const auto tdiag = complete_diagonal(quasi_inverse(TruncatedSeries::variable(2, 0, td) + TruncatedSeries::variable(2, 1, td)));
  CHECK(univariate_coefficients(tdiag) == ints({1, 2, 6, 20}));

  const auto uni = poly(1, {{{0}, 2}, {{3}, 5}}, Truncation::total_degree(1, 4));
  CHECK(complete_diagonal(uni) == uni);
}

TEST_CASE("filtered_diagonal_sum") {
  // f over (x1, x2, z)
  const Truncation t = Truncation::box({kUnbounded, kUnbounded, 3});
  const auto f = poly(3, {{{0, 0, 0}, 1}, {{1, 0, 1}, 2}, {{0, 1, 1}, 3}, {{1, 1, 2}, 4}, {{0, 0, 2}, 5}}, t);
  CHECK(filtered_diagonal_sum(f, [](auto) { return true; }, 3) == ints({1, 5, 9, 0}));
  CHECK(filtered_diagonal_sum(f, [](auto k) { return k[0] == 0 && k[1] == 0; }, 3) == ints({1, 0, 5, 0}));
  CHECK(filtered_diagonal_sum(f, [](auto k) { return k[0] == k[1]; }, 2) == ints({1, 0, 9}));
  const auto g = poly(3, {}, Truncation::total_degree(3, 3));
  CHECK_THROWS_AS(filtered_diagonal_sum(g, [](auto) { return true; }, 3), std::invalid_argument);
}

TEST_CASE("product_diagonal rejects an unfaithful factor") {
  const auto p = poly(2, {{{1, 1}, 1}}, Truncation::total_degree(2, 3));
  const std::vector<std::size_t> vars{0, 1};
  const std::vector<DiagonalFactor> factors{{&p, vars}};
  CHECK_THROWS_AS(product_diagonal(factors, 2, 3), std::invalid_argument);
  CHECK(product_diagonal(factors, 2, 1) == ints({0, 1}));
}

TEST_CASE("property: ring axioms") {
  const auto failure = testing::check_ring_axioms(200);
  CHECK_MESSAGE(!failure, failure.value_or(""));
}

TEST_CASE("property: diagonal commutation") {
  const auto failure = testing::check_diagonal_commutation(200);
  CHECK_MESSAGE(!failure, failure.value_or(""));
}

TEST_CASE("property: quasi_inverse solves q = 1 + h q") {
  auto gen = testing::rng("quasi-inverse");
  for (int k = 0; k < 100; ++k) {
    const Truncation t = Truncation::total_degree(2, 5);
    auto h = testing::random_series(gen, 2, 5, 3, 3, 3, t);
    h = h - TruncatedSeries::constant(2, h.constant_term(), t);
    const auto q = quasi_inverse(h);
    CHECK(q == TruncatedSeries::constant(2, 1, t) + h * q);
  }
}
