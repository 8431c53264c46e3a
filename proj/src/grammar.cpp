#include "cogrowth/grammar.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

#include "cogrowth/group_model.hpp"

namespace cogrowth {

Cfg::Cfg(std::vector<std::string> terminals, std::vector<std::string> nonterminals, std::size_t start,
         std::vector<Production> rules)
    : terminals_(std::move(terminals)),
      nonterminals_(std::move(nonterminals)),
      start_(start),
      rules_(std::move(rules)) {
  std::set<std::string> names;
  for (const auto& t : terminals_)
    if (!names.insert(t).second) throw std::invalid_argument("grammar: duplicate symbol " + t);
  for (const auto& n : nonterminals_)
    if (!names.insert(n).second) throw std::invalid_argument("grammar: duplicate symbol " + n);
  if (start_ >= nonterminals_.size()) throw std::invalid_argument("grammar: start symbol is not a nonterminal");
  for (const auto& r : rules_) {
    if (r.lhs >= nonterminals_.size()) throw std::invalid_argument("grammar: rule head out of range");
    for (const auto& s : r.body)
      if (s.index >= (s.terminal ? terminals_.size() : nonterminals_.size()))
        throw std::invalid_argument("grammar: undeclared symbol in rule body");
  }
}

std::optional<std::size_t> Cfg::find_terminal(std::string_view name) const {
  for (std::size_t i = 0; i < terminals_.size(); ++i)
    if (terminals_[i] == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> Cfg::find_nonterminal(std::string_view name) const {
  for (std::size_t i = 0; i < nonterminals_.size(); ++i)
    if (nonterminals_[i] == name) return i;
  return std::nullopt;
}

std::vector<std::size_t> Cfg::parse_word(std::string_view text) const {
  std::vector<std::size_t> w;
  std::istringstream is{std::string(text)};
  std::string tok;
  while (is >> tok) {
    auto t = find_terminal(tok);
    if (!t) throw std::invalid_argument("unknown terminal '" + tok + "'");
    w.push_back(*t);
  }
  return w;
}

std::string Cfg::format_rule(const Production& p) const {
  std::string out = nonterminals_.at(p.lhs) + " ->";
  if (p.body.empty()) return out + " eps";
  for (const auto& s : p.body) out += " " + (s.terminal ? terminals_.at(s.index) : nonterminals_.at(s.index));
  return out;
}

Cfg free_cancellation_grammar(std::size_t m) {
  if (m < 1) throw std::invalid_argument("free_cancellation_grammar: need m >= 1");
  const GroupDatum f = free_group(m);
  std::vector<Production> rules{{0, {}}};
  for (std::size_t g = 0; g < f.generator_count(); ++g) {
    const std::size_t inv = *f.involution(g);
    rules.push_back({0, {{true, g}, {false, 0}, {true, inv}, {false, 0}}});
  }
  return Cfg(f.generator_names(), {"S"}, 0, std::move(rules));
}

Cfg free_trivial_grammar(std::size_t m) {
  if (m < 1) throw std::invalid_argument("free_trivial_grammar: need m >= 1");
  const GroupDatum f = free_group(m);
  const std::size_t k = f.generator_count();
  // Nonterminal 0 is S, nonterminal 1 + x is T_x.
  std::vector<std::string> names{"S"};
  for (std::size_t x = 0; x < k; ++x) names.push_back("T_" + f.generator_name(x));
  std::vector<Production> rules{{0, {}}};
  for (std::size_t g = 0; g < k; ++g) {
    const std::size_t inv = *f.involution(g);
    rules.push_back({0, {{true, g}, {false, 1 + inv}, {true, inv}, {false, 0}}});
  }
  for (std::size_t x = 0; x < k; ++x) {
    rules.push_back({1 + x, {}});
    for (std::size_t y = 0; y < k; ++y) {
      if (y == x) continue;
      const std::size_t inv = *f.involution(y);
      rules.push_back({1 + x, {{true, y}, {false, 1 + inv}, {true, inv}, {false, 1 + x}}});
    }
  }
  return Cfg(f.generator_names(), std::move(names), 0, std::move(rules));
}

TruncatedSeries grammar_series(const Cfg& g, Exponent max_len) {
  const std::size_t k = g.terminals().size();
  const std::size_t vars = k + 1;
  const std::size_t nts = g.nonterminals().size();
  std::vector<Exponent> caps(vars, kUnbounded);
  caps[k] = max_len;
  const Truncation t = Truncation::box(caps);

  std::vector<TruncatedSeries> terminal_factor;
  for (std::size_t a = 0; a < k; ++a) {
    Monomial m(vars, 0);
    m[a] = 1;
    m[k] = 1;
    terminal_factor.push_back(TruncatedSeries::monomial(std::move(m), 1, t));
  }
  const TruncatedSeries one = TruncatedSeries::constant(vars, 1, t);

  // A tree whose yield has length l and no repeated (nonterminal, span) pair
  // along a path has height at most (l + 1) * |N|.
  const std::size_t rounds = (std::size_t{max_len} + 2) * (nts + 1) + 2;
  std::vector<TruncatedSeries> F(nts, TruncatedSeries(vars, t));
  for (std::size_t round = 0; round < rounds; ++round) {
    std::vector<TruncatedSeries> next(nts, TruncatedSeries(vars, t));
    for (const auto& r : g.rules()) {
      TruncatedSeries term = one;
      for (const auto& s : r.body) {
        term = mul(term, s.terminal ? terminal_factor[s.index] : F[s.index]);
        if (term.is_zero()) break;
      }
      next[r.lhs] = add(next[r.lhs], term);
    }
    if (next == F) return F[g.start()];
    F = std::move(next);
  }
  throw std::runtime_error("grammar_series: fixed-point iteration did not stabilize");
}

BigInt count_derivations(const Cfg& g, std::span<const std::size_t> word) {
  const std::size_t L = word.size();
  const std::size_t nts = g.nonterminals().size();
  // N[A][i][j]: trees from A with yield word[i, j).
  std::vector<std::vector<std::vector<BigInt>>> N(
      nts, std::vector<std::vector<BigInt>>(L + 1, std::vector<BigInt>(L + 1)));

  auto body_count = [&](const Production& r, std::size_t i, std::size_t j) {
    std::vector<BigInt> ways(j - i + 1);
    ways[0] = 1;
    for (const auto& s : r.body) {
      std::vector<BigInt> next(j - i + 1);
      for (std::size_t p = i; p <= j; ++p) {
        const BigInt& w = ways[p - i];
        if (w == 0) continue;
        if (s.terminal) {
          if (p < j && word[p] == s.index) next[p + 1 - i] += w;
        } else {
          for (std::size_t q = p; q <= j; ++q)
            if (N[s.index][p][q] != 0) next[q - i] += w * N[s.index][p][q];
        }
      }
      ways = std::move(next);
    }
    return ways[j - i];
  };

  auto solve_span = [&](std::size_t i, std::size_t j) {
    // Same-span dependencies form chains of length at most |N| unless a cycle
    // carries weight, in which case the counts grow without bound.
    for (std::size_t round = 0;; ++round) {
      std::vector<BigInt> next(nts);
      for (const auto& r : g.rules()) next[r.lhs] += body_count(r, i, j);
      bool same = true;
      for (std::size_t a = 0; a < nts; ++a) same = same && next[a] == N[a][i][j];
      if (same) return;
      if (round > nts + 1) throw std::runtime_error("count_derivations: infinitely many derivation trees");
      for (std::size_t a = 0; a < nts; ++a) N[a][i][j] = next[a];
    }
  };

  solve_span(0, 0);
  for (std::size_t i = 1; i <= L; ++i)
    for (std::size_t a = 0; a < nts; ++a) N[a][i][i] = N[a][0][0];
  for (std::size_t len = 1; len <= L; ++len)
    for (std::size_t i = 0; i + len <= L; ++i) solve_span(i, i + len);
  return N[g.start()][0][L];
}

}  // namespace cogrowth
