#pragma once

// Context-free grammars, their derivation-tree counts, and the letter-count
// series F_S obtained as the fixed point of the polynomial system
// F_A = sum over rules A -> w of (prod of x_a z per terminal) (prod of F_B).

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cogrowth/bigint.hpp"
#include "cogrowth/series.hpp"

namespace cogrowth {

struct GrammarSymbol {
  bool terminal = true;
  std::size_t index = 0;

  friend bool operator==(const GrammarSymbol&, const GrammarSymbol&) = default;
  friend auto operator<=>(const GrammarSymbol&, const GrammarSymbol&) = default;
};

struct Production {
  std::size_t lhs = 0;
  std::vector<GrammarSymbol> body;  // empty for an epsilon rule

  friend bool operator==(const Production&, const Production&) = default;
};

class Cfg {
 public:
  /// Throws std::invalid_argument on duplicate or clashing names, an
  /// out-of-range start, or an undeclared symbol in a rule.
  Cfg(std::vector<std::string> terminals, std::vector<std::string> nonterminals, std::size_t start,
      std::vector<Production> rules);

  const std::vector<std::string>& terminals() const noexcept { return terminals_; }
  const std::vector<std::string>& nonterminals() const noexcept { return nonterminals_; }
  std::size_t start() const noexcept { return start_; }
  const std::vector<Production>& rules() const noexcept { return rules_; }

  std::optional<std::size_t> find_terminal(std::string_view name) const;
  std::optional<std::size_t> find_nonterminal(std::string_view name) const;
  /// Space-separated terminal names. Throws std::invalid_argument on an unknown terminal.
  std::vector<std::size_t> parse_word(std::string_view text) const;
  std::string format_rule(const Production& p) const;

 private:
  std::vector<std::string> terminals_;
  std::vector<std::string> nonterminals_;
  std::size_t start_;
  std::vector<Production> rules_;
};

/// S -> eps and S -> g S g^-1 S for each of the 2m signed generators, with
/// terminals named as in free_group(m). Produces exactly the trivial words of
/// F_m but is ambiguous: a a^-1 a a^-1 has two trees.
/// Throws std::invalid_argument if m < 1.
Cfg free_cancellation_grammar(std::size_t m);

/// Unambiguous grammar for the trivial words of F_m by first return to the
/// identity. Nonterminal T_x derives the closed walks that never leave through
/// the edge labelled x:
///   S   -> eps | g T_{g^-1} g^-1 S
///   T_x -> eps | y T_{y^-1} y^-1 T_x     (y != x)
/// Throws std::invalid_argument if m < 1.
Cfg free_trivial_grammar(std::size_t m);

/// F_S over one variable per terminal plus z (last), exact for z-degree up to
/// `max_len`. Coefficients count derivation trees. Throws std::runtime_error
/// when the iteration does not stabilize (for instance, infinitely many trees
/// share a yield).
TruncatedSeries grammar_series(const Cfg& g, Exponent max_len);

/// Number of derivation trees of `word` from the start symbol. Throws
/// std::runtime_error when that number is infinite.
BigInt count_derivations(const Cfg& g, std::span<const std::size_t> word);

}  // namespace cogrowth
