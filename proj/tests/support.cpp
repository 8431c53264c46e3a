#include "support.hpp"

#include <cstdlib>
#include <cstring>
#include <functional>
#include <map>
#include <sstream>

#include "cogrowth/engine.hpp"

namespace cogrowth::testing {

namespace {

std::uint64_t g_seed = 20240601;

template <class T>
std::string show(const std::vector<T>& v) {
  std::ostringstream os;
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
  return os.str();
}

}  // namespace

std::uint64_t seed() { return g_seed; }
void set_seed(std::uint64_t s) { g_seed = s; }

int consume_seed_flag(int argc, char** argv) {
  int out = 1;
  for (int k = 1; k < argc; ++k) {
    const char* a = argv[k];
    if (std::strncmp(a, "--seed=", 7) == 0) {
      set_seed(std::strtoull(a + 7, nullptr, 10));
    } else if (std::strcmp(a, "--seed") == 0 && k + 1 < argc) {
      set_seed(std::strtoull(argv[++k], nullptr, 10));
    } else {
      argv[out++] = argv[k];
    }
  }
  argv[out] = nullptr;
  return out;
}

std::mt19937_64 rng(std::string_view salt) {
  std::uint32_t h = 2166136261u;  // FNV-1a, stable across platforms
  for (unsigned char ch : salt) h = (h ^ ch) * 16777619u;
  std::seed_seq seq{static_cast<std::uint32_t>(g_seed), static_cast<std::uint32_t>(g_seed >> 32), h};
  return std::mt19937_64(seq);
}

BigInt binomial(unsigned n, unsigned k) {
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<BigInt> abelian_walks(std::size_t n, std::size_t N) {
  std::map<std::vector<long>, BigInt> layer{{std::vector<long>(n, 0), 1}};
  std::vector<BigInt> out;
  for (std::size_t len = 0; len <= N; ++len) {
    auto it = layer.find(std::vector<long>(n, 0));
    out.push_back(it == layer.end() ? BigInt(0) : it->second);
    std::map<std::vector<long>, BigInt> next;
    for (const auto& [v, c] : layer)
      for (std::size_t axis = 0; axis < n; ++axis)
        for (long step : {1L, -1L}) {
          auto w = v;
          w[axis] += step;
          next[w] += c;
        }
    layer = std::move(next);
  }
  return out;
}

std::vector<BigInt> free_walks(std::size_t m, std::size_t N) {
  // Walks on the 2m-regular tree, tracked by distance from the root.
  std::vector<BigInt> at(N + 2, 0);
  at[0] = 1;
  std::vector<BigInt> out;
  for (std::size_t len = 0; len <= N; ++len) {
    out.push_back(at[0]);
    std::vector<BigInt> next(N + 2, 0);
    for (std::size_t d = 0; d <= N; ++d) {
      if (at[d] == 0) continue;
      if (d == 0) {
        next[1] += at[0] * static_cast<unsigned>(2 * m);
      } else {
        next[d - 1] += at[d];
        next[d + 1] += at[d] * static_cast<unsigned>(2 * m - 1);
      }
    }
    at = std::move(next);
  }
  return out;
}

std::vector<BigInt> dihedral_walks(std::size_t N) {
  // x -> sign * x + offset
  std::map<std::pair<int, long>, BigInt> layer{{{1, 0}, 1}};
  std::vector<BigInt> out;
  for (std::size_t len = 0; len <= N; ++len) {
    auto it = layer.find({1, 0});
    out.push_back(it == layer.end() ? BigInt(0) : it->second);
    std::map<std::pair<int, long>, BigInt> next;
    for (const auto& [f, c] : layer) {
      const auto [sign, offset] = f;
      next[{sign, offset + 1}] += c;   // then r
      next[{sign, offset - 1}] += c;   // then r^-1
      next[{-sign, -offset}] += c;     // then s
    }
    layer = std::move(next);
  }
  return out;
}

std::vector<BigInt> table_walks(const GroupDatum& g, const Dfa& language, std::size_t N) {
  const std::size_t n = g.abelian_rank();
  std::vector<BigInt> out(N + 1, 0);
  std::vector<long> vec(n, 0);
  std::vector<FreeLetter> stack;
  std::function<void(std::size_t, State, Coset)> walk = [&](std::size_t len, State q, Coset coset) {
    if (language.is_accepting(q) && coset == 1 && stack.empty()) {
      bool zero = true;
      for (long v : vec) zero = zero && v == 0;
      if (zero) out[len] += 1;
    }
    if (len == N) return;
    for (std::size_t x = 0; x < g.generator_count(); ++x) {
      const CocycleCell& cell = g.cell(x, coset);
      for (std::size_t a = 0; a < n; ++a) vec[a] += cell.h.abelian[a];
      std::vector<FreeLetter> popped;
      std::size_t pushed = 0;
      for (FreeLetter l : cell.h.free.letters()) {
        if (!stack.empty() && stack.back() == -l) {
          popped.push_back(stack.back());
          stack.pop_back();
        } else {
          stack.push_back(l);
          ++pushed;
        }
      }
      walk(len + 1, language.next(q, x), cell.next);
      stack.resize(stack.size() - pushed);
      for (auto it = popped.rbegin(); it != popped.rend(); ++it) stack.push_back(*it);
      for (std::size_t a = 0; a < n; ++a) vec[a] -= cell.h.abelian[a];
    }
  };
  walk(0, language.start(), 1);
  return out;
}

std::vector<GroupDatum> sample_groups() {
  return {free_abelian(1), free_abelian(2), free_group(1), free_group(2),
          bs_group(1),     bs_group(2),     bs_group(3),   dihedral_infinite()};
}

Word random_word(std::mt19937_64& gen, std::size_t symbols, std::size_t len) {
  std::uniform_int_distribution<std::size_t> pick(0, symbols - 1);
  Word w(len);
  for (auto& x : w) x = pick(gen);
  return w;
}

Dfa random_dfa(std::mt19937_64& gen, const std::vector<std::string>& alphabet, std::size_t max_states) {
  const std::size_t states = std::uniform_int_distribution<std::size_t>(1, max_states)(gen);
  std::uniform_int_distribution<std::size_t> pick(0, states - 1);
  std::bernoulli_distribution coin(0.6);
  std::vector<bool> accepting(states);
  for (std::size_t q = 0; q < states; ++q) accepting[q] = coin(gen);
  std::vector<std::vector<State>> delta(states, std::vector<State>(alphabet.size()));
  for (auto& row : delta)
    for (auto& t : row) t = pick(gen);
  return Dfa(alphabet, states, 0, std::move(accepting), std::move(delta));
}

TruncatedSeries random_series(std::mt19937_64& gen, std::size_t vars, std::size_t terms, Exponent max_exp,
                              int lo, int hi, const Truncation& t) {
  std::uniform_int_distribution<Exponent> e(0, max_exp);
  std::uniform_int_distribution<int> c(-lo, hi);
  std::vector<TruncatedSeries::Term> ts;
  for (std::size_t k = 0; k < terms; ++k) {
    Monomial m(vars);
    for (auto& x : m) x = e(gen);
    ts.emplace_back(std::move(m), c(gen));
  }
  return TruncatedSeries::from_terms(vars, std::move(ts), t);
}

std::optional<std::string> check_phi_mu_law(std::size_t trials) {
  auto gen = rng("phi-mu");
  const auto groups = sample_groups();
  for (std::size_t k = 0; k < trials; ++k) {
    const GroupDatum& g = groups[gen() % groups.size()];
    const SigmaAlphabet sigma = sigma_alphabet(g);
    const Dfa phi = phi_automaton(g);
    const Word w = random_word(gen, g.generator_count(), gen() % 13);
    const Word u = phi_encode(g, w);
    if (mu_decode(sigma, u) != w) return g.id() + ": mu(phi(w)) != w for w = " + g.format_word(w);
    if (run(phi, u) != (evaluate(g, w).coset == 1))
      return g.id() + ": phi automaton disagrees with the coset of " + g.format_word(w);
  }
  return std::nullopt;
}

std::optional<std::string> check_word_splitting(std::size_t trials) {
  auto gen = rng("splitting");
  const auto groups = sample_groups();
  for (std::size_t k = 0; k < trials; ++k) {
    const GroupDatum& g = groups[gen() % groups.size()];
    const Word u = random_word(gen, g.generator_count(), gen() % 9);
    const Word v = random_word(gen, g.generator_count(), gen() % 9);
    Word uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    if (evaluate(g, uv) != evaluate_from(g, evaluate(g, u), v))
      return g.id() + ": evaluation does not split at " + g.format_word(u) + " | " + g.format_word(v);
  }
  return std::nullopt;
}

std::optional<std::string> check_ring_axioms(std::size_t trials) {
  auto gen = rng("ring");
  for (std::size_t k = 0; k < trials; ++k) {
    const Truncation t = (k % 2) ? Truncation::total_degree(3, 6) : Truncation::box({3, 4, 2});
    const auto a = random_series(gen, 3, 6, 4, 5, 5, t);
    const auto b = random_series(gen, 3, 6, 4, 5, 5, t);
    const auto c = random_series(gen, 3, 6, 4, 5, 5, t);
    const auto one = TruncatedSeries::constant(3, 1, t);
    const auto zero = TruncatedSeries(3, t);
    const auto fail = [&](const char* law) {
      return std::string(law) + " fails for a = {" + a.to_string() + "} b = {" + b.to_string() + "} c = {" +
             c.to_string() + "}";
    };
    if (a + b != b + a) return fail("commutativity of +");
    if ((a + b) + c != a + (b + c)) return fail("associativity of +");
    if (a * b != b * a) return fail("commutativity of *");
    if ((a * b) * c != a * (b * c)) return fail("associativity of *");
    if (a * (b + c) != a * b + a * c) return fail("distributivity");
    if (a - a != zero) return fail("additive inverse");
    if (a * one != a || a + zero != a) return fail("identities");
  }
  return std::nullopt;
}

std::optional<std::string> check_diagonal_commutation(std::size_t trials) {
  auto gen = rng("diagonal");
  for (std::size_t k = 0; k < trials; ++k) {
    const Exponent D = 2 + static_cast<Exponent>(gen() % 4);
    const Truncation t = Truncation::box({D, D, D});
    const auto f = random_series(gen, 3, 20, D, 4, 6, t);
    const auto a = univariate_coefficients(primitive_diagonal(primitive_diagonal(f, 0, 1), 0, 1), D);
    const auto b = univariate_coefficients(primitive_diagonal(primitive_diagonal(f, 1, 2), 0, 1), D);
    const auto c = univariate_coefficients(complete_diagonal(f), D);
    if (a != b) return "primitive diagonals do not commute on {" + f.to_string() + "}";
    if (a != c) return "complete diagonal differs from iterated primitive on {" + f.to_string() + "}";

    const auto p = random_series(gen, 2, 8, D, 3, 3, Truncation::box({D, D}));
    const auto q = random_series(gen, 2, 8, D, 3, 3, Truncation::box({D, D}));
    const std::vector<std::size_t> pv{0, 1}, qv{1, 2};
    const std::vector<DiagonalFactor> factors{{&p, pv}, {&q, qv}};
    const auto joined = product_diagonal(factors, 3, D);
    const auto direct = univariate_coefficients(complete_diagonal(embed(p, 3, pv) * embed(q, 3, qv)), D);
    if (joined != direct)
      return "product diagonal " + show(joined) + " != diagonal of product " + show(direct) + " for p = {" +
             p.to_string() + "} q = {" + q.to_string() + "}";
  }
  return std::nullopt;
}

std::optional<std::string> check_pruned_dp(std::size_t trials, std::size_t max_len) {
  auto gen = rng("pruned-dp");
  const auto groups = sample_groups();
  for (std::size_t k = 0; k < trials; ++k) {
    const GroupDatum& g = groups[gen() % groups.size()];
    const std::size_t N = gen() % (max_len + 1);
    const Dfa R = (k % 3 == 0)   ? dfa_all_words(g.generator_names())
                  : (k % 3 == 1) ? dfa_reduced_words(g)
                                 : random_dfa(gen, g.generator_names(), 3);
    EngineOptions unpruned;
    unpruned.prune = false;
    const auto a = cogrowth_dp(g, R, N).coefficients;
    const auto b = cogrowth_dp(g, R, N, unpruned).coefficients;
    if (a != b) return g.id() + " N=" + std::to_string(N) + ": pruned " + show(a) + " vs unpruned " + show(b);
  }
  return std::nullopt;
}

}  // namespace cogrowth::testing
