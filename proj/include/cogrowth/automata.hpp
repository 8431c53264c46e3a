#pragma once

// Deterministic finite automata over named alphabets. Words are sequences of
// 0-based symbol indices into the automaton's alphabet.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cogrowth/bigint.hpp"
#include "cogrowth/group_model.hpp"
#include "cogrowth/nrational.hpp"

namespace cogrowth {

using State = std::size_t;
using Word = std::vector<std::size_t>;

class Dfa {
 public:
  /// `delta[q][a]` is the image of state q on symbol a; must be total.
  /// Throws std::invalid_argument on shape errors or out-of-range states.
  Dfa(std::vector<std::string> alphabet, std::size_t states, State start, std::vector<bool> accepting,
      std::vector<std::vector<State>> delta);

  /// Missing transitions go to a fresh non-accepting dead state, added only
  /// when some transition is missing.
  static Dfa from_partial(std::vector<std::string> alphabet, std::size_t states, State start,
                          std::vector<bool> accepting, const std::vector<std::vector<std::optional<State>>>& delta);

  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  std::size_t symbol_count() const noexcept { return alphabet_.size(); }
  std::size_t state_count() const noexcept { return accepting_.size(); }
  State start() const noexcept { return start_; }
  bool is_accepting(State q) const { return accepting_.at(q); }
  State next(State q, std::size_t symbol) const { return delta_.at(q).at(symbol); }

  std::optional<std::size_t> find_symbol(std::string_view name) const;
  /// Space-separated symbol names. Throws std::invalid_argument on an unknown symbol.
  Word parse_word(std::string_view text) const;
  std::string format_word(std::span<const std::size_t> word) const;

 private:
  std::vector<std::string> alphabet_;
  State start_;
  std::vector<bool> accepting_;
  std::vector<std::vector<State>> delta_;
};

/// Throws std::invalid_argument on a symbol outside the alphabet.
bool run(const Dfa& d, std::span<const std::size_t> word);

Dfa dfa_all_words(std::vector<std::string> alphabet);
/// Words with no factor a a' for an involution pair (a, a'). States: start
/// plus one per last letter. Throws std::invalid_argument when some letter
/// has no inverse.
Dfa dfa_reduced_words(std::vector<std::string> alphabet, std::span<const std::optional<std::size_t>> involution);
Dfa dfa_reduced_words(const GroupDatum& g);
/// Same transitions, accepting set flipped.
Dfa complement(const Dfa& d);

/// Reachable part of the product automaton. Throws std::invalid_argument
/// when the alphabets differ.
Dfa product_intersection(const Dfa& a, const Dfa& b);

/// Automaton over `alphabet` accepting u iff d accepts letter_map(u), with
/// letter_map[k] the symbol of d that letter k maps to. Throws
/// std::invalid_argument when some letter is unmapped.
Dfa inverse_letter_hom(const Dfa& d, std::vector<std::string> alphabet, std::span<const std::size_t> letter_map);

/// Index of the coset-labelled letter for generator i read from coset j.
inline std::size_t sigma_index(std::size_t i, Coset j, std::size_t d) { return i * d + (j - 1); }
/// Names `x@j` in sigma_index order.
std::vector<std::string> sigma_names(const GroupDatum& g);

/// One state per coset plus a rejecting sink when d > 1. The letter for
/// (i, j) moves state j to the coset the table gives and every other state
/// to the sink. Start and only accepting state: coset 1.
Dfa phi_automaton(const GroupDatum& g);

/// Expression over one variable per symbol plus a final length variable z;
/// the coefficient of x^k z^l counts accepted words of length l whose letter
/// multiset is k. States are eliminated in ascending order.
NRationalExpr automaton_to_nrational(const Dfa& d);

/// Accepted-word counts for lengths 0..max_len.
std::vector<BigInt> count_words(const Dfa& d, std::size_t max_len);

/// Every word of length `len` over `symbols` letters, lexicographically.
std::vector<Word> all_words(std::size_t symbols, std::size_t len);

}  // namespace cogrowth
