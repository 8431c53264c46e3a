#include "cogrowth/automata.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cogrowth {

Dfa::Dfa(std::vector<std::string> alphabet, std::size_t states, State start, std::vector<bool> accepting,
         std::vector<std::vector<State>> delta)
    : alphabet_(std::move(alphabet)), start_(start), accepting_(std::move(accepting)), delta_(std::move(delta)) {
  if (states == 0) throw std::invalid_argument("dfa needs at least one state");
  if (accepting_.size() != states || delta_.size() != states)
    throw std::invalid_argument("dfa: accepting/delta size differs from state count");
  if (start_ >= states) throw std::invalid_argument("dfa: start state out of range");
  for (const auto& row : delta_) {
    if (row.size() != alphabet_.size()) throw std::invalid_argument("dfa: transition row is not total");
    for (State q : row)
      if (q >= states) throw std::invalid_argument("dfa: transition target out of range");
  }
  for (std::size_t a = 0; a < alphabet_.size(); ++a)
    for (std::size_t b = a + 1; b < alphabet_.size(); ++b)
      if (alphabet_[a] == alphabet_[b]) throw std::invalid_argument("dfa: duplicate symbol " + alphabet_[a]);
}

Dfa Dfa::from_partial(std::vector<std::string> alphabet, std::size_t states, State start, std::vector<bool> accepting,
                      const std::vector<std::vector<std::optional<State>>>& delta) {
  if (delta.size() != states) throw std::invalid_argument("dfa: delta size differs from state count");
  bool missing = false;
  for (const auto& row : delta) {
    if (row.size() != alphabet.size()) throw std::invalid_argument("dfa: transition row has wrong width");
    missing = missing || std::any_of(row.begin(), row.end(), [](const auto& q) { return !q; });
  }
  const State dead = states;
  const std::size_t total = states + (missing ? 1 : 0);
  std::vector<std::vector<State>> full(total, std::vector<State>(alphabet.size(), dead));
  for (std::size_t q = 0; q < states; ++q)
    for (std::size_t a = 0; a < alphabet.size(); ++a)
      if (delta[q][a]) full[q][a] = *delta[q][a];
  accepting.resize(total, false);
  return Dfa(std::move(alphabet), total, start, std::move(accepting), std::move(full));
}

std::optional<std::size_t> Dfa::find_symbol(std::string_view name) const {
  for (std::size_t a = 0; a < alphabet_.size(); ++a)
    if (alphabet_[a] == name) return a;
  return std::nullopt;
}

Word Dfa::parse_word(std::string_view text) const {
  Word w;
  std::istringstream is{std::string(text)};
  std::string tok;
  while (is >> tok) {
    auto a = find_symbol(tok);
    if (!a) throw std::invalid_argument("unknown symbol '" + tok + "'");
    w.push_back(*a);
  }
  return w;
}

std::string Dfa::format_word(std::span<const std::size_t> word) const {
  std::string out;
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (k) out += ' ';
    out += alphabet_.at(word[k]);
  }
  return out;
}

bool run(const Dfa& d, std::span<const std::size_t> word) {
  State q = d.start();
  for (std::size_t a : word) {
    if (a >= d.symbol_count()) throw std::invalid_argument("run: symbol outside the alphabet");
    q = d.next(q, a);
  }
  return d.is_accepting(q);
}

Dfa dfa_all_words(std::vector<std::string> alphabet) {
  const std::size_t k = alphabet.size();
  return Dfa(std::move(alphabet), 1, 0, {true}, {std::vector<State>(k, 0)});
}

Dfa dfa_reduced_words(std::vector<std::string> alphabet, std::span<const std::optional<std::size_t>> involution) {
  const std::size_t k = alphabet.size();
  if (involution.size() != k) throw std::invalid_argument("reduced words: involution size mismatch");
  for (std::size_t a = 0; a < k; ++a)
    if (!involution[a] || *involution[a] >= k)
      throw std::invalid_argument("reduced words: letter " + alphabet[a] + " has no inverse");
  // State 0: empty word; state a+1: last letter a; state k+1: dead.
  const std::size_t dead = k + 1;
  std::vector<std::vector<State>> delta(k + 2, std::vector<State>(k));
  for (std::size_t q = 0; q <= k; ++q)
    for (std::size_t a = 0; a < k; ++a) delta[q][a] = (q > 0 && *involution[q - 1] == a) ? dead : a + 1;
  std::fill(delta[dead].begin(), delta[dead].end(), dead);
  std::vector<bool> accepting(k + 2, true);
  accepting[dead] = false;
  return Dfa(std::move(alphabet), k + 2, 0, std::move(accepting), std::move(delta));
}

Dfa dfa_reduced_words(const GroupDatum& g) {
  std::vector<std::optional<std::size_t>> inv;
  for (std::size_t i = 0; i < g.generator_count(); ++i) inv.push_back(g.involution(i));
  return dfa_reduced_words(g.generator_names(), inv);
}

Dfa complement(const Dfa& d) {
  std::vector<bool> accepting(d.state_count());
  std::vector<std::vector<State>> delta(d.state_count(), std::vector<State>(d.symbol_count()));
  for (State q = 0; q < d.state_count(); ++q) {
    accepting[q] = !d.is_accepting(q);
    for (std::size_t a = 0; a < d.symbol_count(); ++a) delta[q][a] = d.next(q, a);
  }
  return Dfa(d.alphabet(), d.state_count(), d.start(), std::move(accepting), std::move(delta));
}

Dfa product_intersection(const Dfa& a, const Dfa& b) {
  if (a.alphabet() != b.alphabet()) throw std::invalid_argument("product_intersection: alphabets differ");
  const std::size_t k = a.symbol_count();
  std::map<std::pair<State, State>, State> index;
  std::vector<std::pair<State, State>> pairs;
  auto intern = [&](std::pair<State, State> p) {
    auto [it, fresh] = index.emplace(p, pairs.size());
    if (fresh) pairs.push_back(p);
    return it->second;
  };
  intern({a.start(), b.start()});
  std::vector<std::vector<State>> delta;
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    std::vector<State> row(k);
    for (std::size_t s = 0; s < k; ++s) {
      auto [p, r] = pairs[q];
      row[s] = intern({a.next(p, s), b.next(r, s)});
    }
    delta.push_back(std::move(row));
  }
  std::vector<bool> accepting(pairs.size());
  for (std::size_t q = 0; q < pairs.size(); ++q)
    accepting[q] = a.is_accepting(pairs[q].first) && b.is_accepting(pairs[q].second);
  return Dfa(a.alphabet(), pairs.size(), 0, std::move(accepting), std::move(delta));
}

Dfa inverse_letter_hom(const Dfa& d, std::vector<std::string> alphabet, std::span<const std::size_t> letter_map) {
  if (letter_map.size() != alphabet.size()) throw std::invalid_argument("inverse_letter_hom: letter map is not total");
  for (std::size_t k = 0; k < letter_map.size(); ++k)
    if (letter_map[k] >= d.symbol_count())
      throw std::invalid_argument("inverse_letter_hom: letter " + alphabet[k] + " is unmapped");
  std::vector<std::vector<State>> delta(d.state_count(), std::vector<State>(alphabet.size()));
  std::vector<bool> accepting(d.state_count());
  for (State q = 0; q < d.state_count(); ++q) {
    accepting[q] = d.is_accepting(q);
    for (std::size_t k = 0; k < alphabet.size(); ++k) delta[q][k] = d.next(q, letter_map[k]);
  }
  return Dfa(std::move(alphabet), d.state_count(), d.start(), std::move(accepting), std::move(delta));
}

std::vector<std::string> sigma_names(const GroupDatum& g) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < g.generator_count(); ++i)
    for (Coset j = 1; j <= g.coset_count(); ++j) names.push_back(g.generator_name(i) + "@" + std::to_string(j));
  return names;
}

Dfa phi_automaton(const GroupDatum& g) {
  const std::size_t d = g.coset_count();
  const std::size_t s = g.generator_count();
  const bool sink = d > 1 || [&] {
    for (std::size_t i = 0; i < s; ++i)
      if (!g.cell_if(i, 1)) return true;
    return false;
  }();
  const std::size_t states = d + (sink ? 1 : 0);
  const State dead = d;
  std::vector<std::vector<State>> delta(states, std::vector<State>(s * d, dead));
  for (std::size_t i = 0; i < s; ++i)
    for (Coset j = 1; j <= d; ++j)
      if (const auto& c = g.cell_if(i, j)) delta[j - 1][sigma_index(i, j, d)] = c->next - 1;
  std::vector<bool> accepting(states, false);
  accepting[0] = true;
  return Dfa(sigma_names(g), states, 0, std::move(accepting), std::move(delta));
}

namespace {

// States that lie on some path from the start to an accepting state.
std::vector<bool> useful_states(const Dfa& d) {
  const std::size_t n = d.state_count();
  std::vector<bool> reach(n, false), coreach(n, false);
  std::vector<State> stack{d.start()};
  reach[d.start()] = true;
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (std::size_t a = 0; a < d.symbol_count(); ++a) {
      State r = d.next(q, a);
      if (!reach[r]) {
        reach[r] = true;
        stack.push_back(r);
      }
    }
  }
  for (State q = 0; q < n; ++q) coreach[q] = d.is_accepting(q);
  for (bool changed = true; changed;) {
    changed = false;
    for (State q = 0; q < n; ++q) {
      if (coreach[q]) continue;
      for (std::size_t a = 0; a < d.symbol_count(); ++a)
        if (coreach[d.next(q, a)]) {
          coreach[q] = changed = true;
          break;
        }
    }
  }
  std::vector<bool> useful(n);
  for (State q = 0; q < n; ++q) useful[q] = reach[q] && coreach[q];
  return useful;
}

}  // namespace

NRationalExpr automaton_to_nrational(const Dfa& d) {
  const std::size_t k = d.symbol_count();
  const std::size_t vars = k + 1;
  const std::size_t n = d.state_count();
  const auto useful = useful_states(d);
  if (!useful[d.start()]) return NRationalExpr(vars);

  // F_q = c_q + sum_r E[q][r] F_r over useful states.
  std::vector<NRationalExpr> c(n, NRationalExpr(vars));
  std::vector<std::vector<NRationalExpr>> E(n, std::vector<NRationalExpr>(n, NRationalExpr(vars)));
  for (State q = 0; q < n; ++q) {
    if (!useful[q]) continue;
    if (d.is_accepting(q)) c[q] = NRationalExpr::constant(vars, 1);
    std::vector<std::vector<TruncatedSeries::Term>> edges(n);
    for (std::size_t a = 0; a < k; ++a) {
      State r = d.next(q, a);
      if (!useful[r]) continue;
      Monomial m(vars, 0);
      m[a] = 1;
      m[k] = 1;
      edges[r].emplace_back(std::move(m), 1);
    }
    for (State r = 0; r < n; ++r)
      if (!edges[r].empty()) E[q][r] = NRationalExpr::polynomial(vars, std::move(edges[r]));
  }

  std::vector<bool> live = useful;
  for (State e = 0; e < n; ++e) {
    if (e == d.start() || !useful[e]) continue;
    live[e] = false;
    const NRationalExpr star = NRationalExpr::quasi_inverse(E[e][e]);
    for (State q = 0; q < n; ++q) {
      if (!live[q] || E[q][e].is_zero()) continue;
      const NRationalExpr lead = NRationalExpr::product(E[q][e], star);
      c[q] = NRationalExpr::sum(c[q], NRationalExpr::product(lead, c[e]));
      for (State r = 0; r < n; ++r) {
        if (!live[r] || E[e][r].is_zero()) continue;
        E[q][r] = NRationalExpr::sum(E[q][r], NRationalExpr::product(lead, E[e][r]));
      }
      E[q][e] = NRationalExpr(vars);
    }
  }
  const State s = d.start();
  return NRationalExpr::product(NRationalExpr::quasi_inverse(E[s][s]), c[s]);
}

std::vector<BigInt> count_words(const Dfa& d, std::size_t max_len) {
  std::vector<BigInt> out(max_len + 1);
  std::vector<BigInt> at(d.state_count());
  at[d.start()] = 1;
  for (std::size_t len = 0;; ++len) {
    for (State q = 0; q < d.state_count(); ++q)
      if (d.is_accepting(q)) out[len] += at[q];
    if (len == max_len) break;
    std::vector<BigInt> next(d.state_count());
    for (State q = 0; q < d.state_count(); ++q) {
      if (at[q] == 0) continue;
      for (std::size_t a = 0; a < d.symbol_count(); ++a) next[d.next(q, a)] += at[q];
    }
    at = std::move(next);
  }
  return out;
}

std::vector<Word> all_words(std::size_t symbols, std::size_t len) {
  std::vector<Word> out;
  if (symbols == 0) {
    if (len == 0) out.emplace_back();
    return out;
  }
  Word w(len, 0);
  for (;;) {
    out.push_back(w);
    std::size_t p = len;
    while (p > 0 && w[p - 1] + 1 == symbols) w[--p] = 0;
    if (p == 0) break;
    ++w[p - 1];
  }
  return out;
}

}  // namespace cogrowth
