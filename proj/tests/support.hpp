#pragma once

// Shared pieces of the test programs: the run seed, brute-force oracles that
// do not go through the library's evaluators, and the randomized property
// checks used by both the unit suites and the acceptance runner.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "cogrowth/automata.hpp"
#include "cogrowth/bigint.hpp"
#include "cogrowth/group_model.hpp"
#include "cogrowth/series.hpp"

namespace cogrowth::testing {

/// Set by --seed; defaults to a fixed value so runs are reproducible.
std::uint64_t seed();
void set_seed(std::uint64_t s);

/// Removes `--seed N` / `--seed=N` from argv, storing the value. Returns the new argc.
int consume_seed_flag(int argc, char** argv);

/// Generator derived from the run seed and a per-test salt.
std::mt19937_64 rng(std::string_view salt);

BigInt binomial(unsigned n, unsigned k);

/// Trivial words of each length 0..N in Z^n on a, a^-1, b, b^-1, ...
std::vector<BigInt> abelian_walks(std::size_t n, std::size_t N);
/// Same for F_m, by stack reduction.
std::vector<BigInt> free_walks(std::size_t m, std::size_t N);
/// Infinite dihedral group on r, r^-1, s acting on Z by x+1, x-1, -x.
std::vector<BigInt> dihedral_walks(std::size_t N);
/// Trivial words of R for a group datum, walking the coset table with its
/// own copy of the H arithmetic.
std::vector<BigInt> table_walks(const GroupDatum& g, const Dfa& language, std::size_t N);

/// Built-in data used by the randomized checks.
std::vector<GroupDatum> sample_groups();
/// Random word over `symbols` letters.
Word random_word(std::mt19937_64& gen, std::size_t symbols, std::size_t len);
/// Random total automaton with 1..max_states states over `alphabet`.
Dfa random_dfa(std::mt19937_64& gen, const std::vector<std::string>& alphabet, std::size_t max_states);
/// Random series with coefficients in [-lo, hi].
TruncatedSeries random_series(std::mt19937_64& gen, std::size_t vars, std::size_t terms, Exponent max_exp,
                              int lo, int hi, const Truncation& t);

/// Each check returns a description of the first counterexample, if any.
std::optional<std::string> check_phi_mu_law(std::size_t trials);
std::optional<std::string> check_word_splitting(std::size_t trials);
std::optional<std::string> check_ring_axioms(std::size_t trials);
std::optional<std::string> check_diagonal_commutation(std::size_t trials);
std::optional<std::string> check_pruned_dp(std::size_t trials, std::size_t max_len);

}  // namespace cogrowth::testing
