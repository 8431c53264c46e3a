#include "cogrowth/engine.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace cogrowth {

SigmaAlphabet sigma_alphabet(const GroupDatum& g) {
  SigmaAlphabet sigma;
  sigma.cosets = g.coset_count();
  sigma.names = sigma_names(g);
  for (std::size_t i = 0; i < g.generator_count(); ++i)
    for (Coset j = 1; j <= g.coset_count(); ++j) {
      const CocycleCell& c = g.cell(i, j);
      sigma.letters.push_back({i, j, c.h, c.next});
      sigma.mu.push_back(i);
    }
  return sigma;
}

Word phi_encode(const GroupDatum& g, std::span<const std::size_t> w) {
  Word out;
  Coset c = 1;
  for (std::size_t i : w) {
    if (i >= g.generator_count()) throw std::invalid_argument("phi_encode: generator index out of range");
    out.push_back(sigma_index(i, c, g.coset_count()));
    c = g.cell(i, c).next;
  }
  return out;
}

GenWord mu_decode(const SigmaAlphabet& sigma, std::span<const std::size_t> u) {
  GenWord out;
  for (std::size_t a : u) {
    if (a >= sigma.size()) throw std::invalid_argument("mu_decode: letter out of range");
    out.push_back(sigma.mu[a]);
  }
  return out;
}

DioSystem sigma_system(const SigmaAlphabet& sigma) {
  const std::size_t p = sigma.size();
  const std::size_t n = p ? sigma.letters.front().h.abelian.size() : 0;
  std::vector<IntVector> rows(std::max<std::size_t>(n, 1), IntVector(p, 0));
  for (std::size_t c = 0; c < p; ++c)
    for (std::size_t r = 0; r < n; ++r) rows[r][c] = sigma.letters[c].h.abelian[r];
  return DioSystem(std::move(rows));
}

namespace {

void require_language(const GroupDatum& g, const Dfa& language) {
  if (language.alphabet() != g.generator_names())
    throw std::invalid_argument("language alphabet differs from the generators of " + g.id());
}

}  // namespace

Dfa l_r_automaton(const GroupDatum& g, const Dfa& language) {
  require_language(g, language);
  const SigmaAlphabet sigma = sigma_alphabet(g);
  return product_intersection(phi_automaton(g), inverse_letter_hom(language, sigma.names, sigma.mu));
}

bool d_r_membership(const GroupDatum& g, const Dfa& language, std::span<const std::size_t> u) {
  const Dfa lr = l_r_automaton(g, language);
  const SigmaAlphabet sigma = sigma_alphabet(g);
  FreeWord acc;
  for (std::size_t a : u) {
    if (a >= sigma.size()) return false;
    for (FreeLetter l : sigma.letters[a].h.free.letters()) acc.push_back(l);
  }
  return run(lr, u) && acc.empty();
}

std::string format_report(const CogrowthReport& r) {
  std::ostringstream os;
  os << "# group=" << r.group_id << " language=" << r.language_id << " engine=" << r.engine
     << " faithful=" << r.faithful_degree << '\n';
  for (std::size_t n = 0; n < r.coefficients.size() && n <= r.faithful_degree; ++n)
    os << n << '\t' << r.coefficients[n] << '\n';
  return os.str();
}

// ---------------------------------------------------------------- oracle

namespace {

class OracleWalk {
 public:
  OracleWalk(const GroupDatum& g, const Dfa& language, std::size_t N)
      : g_(g), r_(language), N_(N), vec_(g.abelian_rank(), 0), counts_(N + 1, 0) {}

  std::vector<BigInt> run() {
    visit(0, 1, r_.start());
    return {counts_.begin(), counts_.end()};
  }

 private:
  void visit(std::size_t depth, Coset coset, State q) {
    if (coset == 1 && r_.is_accepting(q) && stack_.empty() &&
        std::all_of(vec_.begin(), vec_.end(), [](std::int64_t v) { return v == 0; }))
      ++counts_[depth];
    if (depth == N_) return;
    for (std::size_t i = 0; i < g_.generator_count(); ++i) {
      const CocycleCell& cell = g_.cell(i, coset);
      for (std::size_t c = 0; c < vec_.size(); ++c) vec_[c] += cell.h.abelian[c];
      const std::size_t mark = log_.size();
      for (FreeLetter l : cell.h.free.letters()) {
        if (!stack_.empty() && stack_.back() == -l) {
          log_.push_back(stack_.back());
          stack_.pop_back();
        } else {
          stack_.push_back(l);
          log_.push_back(0);
        }
      }
      visit(depth + 1, cell.next, r_.next(q, i));
      while (log_.size() > mark) {
        if (log_.back() == 0) {
          stack_.pop_back();
        } else {
          stack_.push_back(log_.back());
        }
        log_.pop_back();
      }
      for (std::size_t c = 0; c < vec_.size(); ++c) vec_[c] -= cell.h.abelian[c];
    }
  }

  const GroupDatum& g_;
  const Dfa& r_;
  std::size_t N_;
  std::vector<std::int64_t> vec_;
  std::vector<FreeLetter> stack_;
  std::vector<FreeLetter> log_;  // 0: a push to undo, otherwise the popped letter
  std::vector<std::uint64_t> counts_;
};

}  // namespace

CogrowthReport cogrowth_oracle(const GroupDatum& g, const Dfa& language, std::size_t N,
                               const EngineOptions& options) {
  require_language(g, language);
  return {g.id(), options.language_id, "oracle", OracleWalk(g, language, N).run(), N};
}

// ------------------------------------------------------------ layered DP

namespace {

using Key = std::vector<std::int64_t>;

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::size_t h = 0x84222325cbf29ce4ull;
    for (auto v : k) h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

using Layer = std::unordered_map<Key, BigInt, KeyHash>;

constexpr std::size_t kNever = std::numeric_limits<std::size_t>::max();

// Lower bounds on the letters still needed to return to the identity.
struct Bounds {
  std::vector<std::size_t> to_accept;
  std::size_t max_free = 0;
  std::vector<std::int64_t> max_abs;
  bool shared = false;  // some letter moves both the free and the abelian part

  Bounds(const Dfa& lr, const SigmaAlphabet& sigma, std::size_t n) : max_abs(n, 0) {
    const std::size_t Q = lr.state_count();
    to_accept.assign(Q, kNever);
    std::vector<std::vector<State>> preds(Q);
    for (State q = 0; q < Q; ++q)
      for (std::size_t a = 0; a < lr.symbol_count(); ++a) preds[lr.next(q, a)].push_back(q);
    std::deque<State> queue;
    for (State q = 0; q < Q; ++q)
      if (lr.is_accepting(q)) {
        to_accept[q] = 0;
        queue.push_back(q);
      }
    while (!queue.empty()) {
      State q = queue.front();
      queue.pop_front();
      for (State p : preds[q])
        if (to_accept[p] == kNever) {
          to_accept[p] = to_accept[q] + 1;
          queue.push_back(p);
        }
    }
    for (const auto& l : sigma.letters) {
      max_free = std::max(max_free, l.h.free.size());
      bool moves_vec = false;
      for (std::size_t c = 0; c < n; ++c) {
        max_abs[c] = std::max(max_abs[c], l.h.abelian[c] < 0 ? -l.h.abelian[c] : l.h.abelian[c]);
        moves_vec = moves_vec || l.h.abelian[c] != 0;
      }
      shared = shared || (moves_vec && !l.h.free.empty());
    }
  }

  static std::size_t ceil_div(std::size_t a, std::size_t b) {
    if (a == 0) return 0;
    if (b == 0) return kNever;
    return (a + b - 1) / b;
  }

  std::size_t free_need(std::size_t free_len) const { return ceil_div(free_len, max_free); }

  std::size_t vec_need(std::span<const std::int64_t> v) const {
    std::size_t need = 0;
    for (std::size_t c = 0; c < v.size(); ++c)
      need = std::max(need, ceil_div(static_cast<std::size_t>(v[c] < 0 ? -v[c] : v[c]), max_abs[c]));
    return need;
  }

  std::size_t need(State q, std::size_t free_need_v, std::size_t vec_need_v) const {
    std::size_t group = 0;
    if (free_need_v == kNever || vec_need_v == kNever) {
      group = kNever;
    } else {
      group = shared ? std::max(free_need_v, vec_need_v) : free_need_v + vec_need_v;
    }
    return std::max(to_accept[q], group);
  }
};

void apply_free(Key& key, std::size_t offset, const FreeWord& w) {
  for (FreeLetter l : w.letters()) {
    if (key.size() > offset && key.back() == -l) {
      key.pop_back();
    } else {
      key.push_back(l);
    }
  }
}

void add_to(Layer& layer, Key&& key, const BigInt& count) {
  auto it = layer.find(key);
  if (it == layer.end()) {
    layer.emplace(std::move(key), count);
  } else {
    it->second += count;
  }
}

}  // namespace

CogrowthReport cogrowth_dp(const GroupDatum& g, const Dfa& language, std::size_t N, const EngineOptions& options) {
  const Dfa lr = l_r_automaton(g, language);
  const SigmaAlphabet sigma = sigma_alphabet(g);
  const std::size_t n = g.abelian_rank();
  const Bounds bounds(lr, sigma, n);
  const std::size_t free_at = 1 + n;

  // Key: L_R state, Z^n vector, reduced free word.
  std::vector<BigInt> coeffs(N + 1);
  Layer layer;
  Key start(1 + n, 0);
  start[0] = static_cast<std::int64_t>(lr.start());
  layer.emplace(std::move(start), 1);
  for (std::size_t ell = 0;; ++ell) {
    for (const auto& [key, count] : layer) {
      if (key.size() == free_at && lr.is_accepting(static_cast<State>(key[0])) &&
          std::all_of(key.begin() + 1, key.end(), [](std::int64_t v) { return v == 0; }))
        coeffs[ell] += count;
    }
    if (ell == N) break;
    const std::size_t remaining = N - ell - 1;
    Layer next;
    for (const auto& [key, count] : layer) {
      const State q = static_cast<State>(key[0]);
      for (std::size_t a = 0; a < sigma.size(); ++a) {
        const SigmaLetter& letter = sigma.letters[a];
        Key k = key;
        const State q2 = lr.next(q, a);
        k[0] = static_cast<std::int64_t>(q2);
        for (std::size_t c = 0; c < n; ++c) k[1 + c] += letter.h.abelian[c];
        apply_free(k, free_at, letter.h.free);
        if (options.prune) {
          const std::size_t need = bounds.need(q2, bounds.free_need(k.size() - free_at),
                                               bounds.vec_need(std::span<const std::int64_t>(k).subspan(1, n)));
          if (need > remaining) continue;
        }
        add_to(next, std::move(k), count);
      }
    }
    if (next.size() > options.max_configurations)
      throw BudgetExceeded("cogrowth_dp: configuration budget exceeded at length " + std::to_string(ell + 1));
    layer = std::move(next);
  }
  return {g.id(), options.language_id, options.prune ? "dp" : "dp-unpruned", std::move(coeffs), N};
}

TruncatedSeries d_r_series(const GroupDatum& g, const Dfa& language, std::size_t N, const EngineOptions& options) {
  const Dfa lr = l_r_automaton(g, language);
  const SigmaAlphabet sigma = sigma_alphabet(g);
  const std::size_t p = sigma.size();
  const Bounds bounds(lr, sigma, g.abelian_rank());
  const std::size_t free_at = 1 + p;

  std::vector<Exponent> caps(p + 1, kUnbounded);
  caps[p] = static_cast<Exponent>(N);
  std::vector<TruncatedSeries::Term> terms;

  // Key: L_R state, letter counts, reduced free word.
  Layer layer;
  Key start(1 + p, 0);
  start[0] = static_cast<std::int64_t>(lr.start());
  layer.emplace(std::move(start), 1);
  for (std::size_t ell = 0;; ++ell) {
    for (const auto& [key, count] : layer) {
      if (key.size() != free_at || !lr.is_accepting(static_cast<State>(key[0]))) continue;
      Monomial m(p + 1);
      for (std::size_t a = 0; a < p; ++a) m[a] = static_cast<Exponent>(key[1 + a]);
      m[p] = static_cast<Exponent>(ell);
      terms.emplace_back(std::move(m), count);
    }
    if (ell == N) break;
    const std::size_t remaining = N - ell - 1;
    Layer next;
    for (const auto& [key, count] : layer) {
      const State q = static_cast<State>(key[0]);
      for (std::size_t a = 0; a < p; ++a) {
        Key k = key;
        const State q2 = lr.next(q, a);
        k[0] = static_cast<std::int64_t>(q2);
        k[1 + a] += 1;
        apply_free(k, free_at, sigma.letters[a].h.free);
        if (options.prune && bounds.need(q2, bounds.free_need(k.size() - free_at), 0) > remaining) continue;
        add_to(next, std::move(k), count);
      }
    }
    if (next.size() > options.max_configurations)
      throw BudgetExceeded("d_r_series: configuration budget exceeded at length " + std::to_string(ell + 1));
    layer = std::move(next);
  }
  return TruncatedSeries::from_terms(p + 1, std::move(terms), Truncation::box(std::move(caps)));
}

// ------------------------------------------------------- series pipelines

namespace {

TruncatedSeries pair_factor(std::size_t D) {
  const auto xy = NRationalExpr::quasi_inverse(NRationalExpr::monomial({1, 1}));
  return eval_nrational(xy, Truncation::box({static_cast<Exponent>(D), static_cast<Exponent>(D)}));
}

// Diagonal of first(x, z) * prod_j pair(x_j, y_j) * last(y) with x, y of
// size p and z last.
std::vector<BigInt> joined_diagonal(const TruncatedSeries& first, const TruncatedSeries& pair,
                                    const TruncatedSeries& last, std::size_t p, std::size_t D) {
  std::vector<DiagonalFactor> factors;
  DiagonalFactor f{&first, {}};
  for (std::size_t j = 0; j < p; ++j) f.variables.push_back(j);
  f.variables.push_back(2 * p);
  factors.push_back(std::move(f));
  for (std::size_t j = 0; j < p; ++j) factors.push_back({&pair, {j, p + j}});
  DiagonalFactor l{&last, {}};
  for (std::size_t j = 0; j < p; ++j) l.variables.push_back(p + j);
  factors.push_back(std::move(l));
  return product_diagonal(factors, 2 * p + 1, static_cast<Exponent>(D));
}

std::size_t default_literal_degree(std::size_t p, std::size_t N) {
  std::size_t D = 0;
  while (D < N) {
    double size = 1;
    for (std::size_t j = 0; j < p; ++j) size *= static_cast<double>(D + 2);
    if (size > static_cast<double>(1u << 20)) break;
    ++D;
  }
  return D;
}

Truncation cube(std::size_t vars, std::size_t D) {
  return Truncation::box(std::vector<Exponent>(vars, static_cast<Exponent>(D)));
}

}  // namespace

TheoremAPaths theorem_a_paths(const GroupDatum& g, const Dfa& language, std::size_t N, std::size_t literal_degree,
                              const EngineOptions& options) {
  if (literal_degree > N) throw std::invalid_argument("theorem_a_paths: literal degree exceeds N");
  const SigmaAlphabet sigma = sigma_alphabet(g);
  const std::size_t p = sigma.size();
  const DioSystem sys = sigma_system(sigma);
  const TruncatedSeries gs = d_r_series(g, language, N, options);

  TheoremAPaths out;
  out.filtered = filtered_diagonal_sum(
      gs, [&](std::span<const Exponent> k) { return z_membership(sys, k); }, static_cast<Exponent>(N));

  const std::size_t D = literal_degree;
  const TruncatedSeries g_cut = gs.truncated(cube(p + 1, D));
  const SemilinearDecomposition dec = simple_decomposition(sys, D);
  const TruncatedSeries fz = eval_nrational(nrational_of(dec), cube(p, D));
  out.literal = joined_diagonal(g_cut, pair_factor(D), fz, p, D);
  return out;
}

CogrowthReport theorem_a_pipeline(const GroupDatum& g, const Dfa& language, std::size_t N,
                                  const EngineOptions& options) {
  const std::size_t p = g.generator_count() * g.coset_count();
  const std::size_t D = std::min(options.literal_degree.value_or(default_literal_degree(p, N)), N);
  TheoremAPaths paths = theorem_a_paths(g, language, N, D, options);
  for (std::size_t l = 0; l <= D; ++l)
    if (paths.literal[l] != paths.filtered[l])
      throw std::logic_error("theorem_a_pipeline: literal diagonal differs from the filtered sum at length " +
                             std::to_string(l));
  return {g.id(), options.language_id, "theorem-a", std::move(paths.filtered), N};
}

TheoremBFactors theorem_b_factors(const GroupDatum& g, const Dfa& language, std::size_t N) {
  if (g.free_rank() != 0) throw std::invalid_argument("theorem_b_pipeline needs a virtually abelian datum (m = 0)");
  const Dfa lr = l_r_automaton(g, language);
  const SigmaAlphabet sigma = sigma_alphabet(g);
  const std::size_t p = sigma.size();
  const DioSystem sys = sigma_system(sigma);

  NRationalExpr lang = automaton_to_nrational(lr);
  std::vector<Exponent> caps(p + 1, kUnbounded);
  caps[p] = static_cast<Exponent>(N);
  TruncatedSeries ls = eval_nrational(lang, Truncation::box(std::move(caps)));

  SemilinearDecomposition dec = simple_decomposition(sys, N);
  NRationalExpr sol = nrational_of(dec);
  TruncatedSeries ss = eval_nrational(sol, cube(p, N));

  return {std::move(lang), std::move(sol), std::move(ls), std::move(ss), pair_factor(N), std::move(dec)};
}

CogrowthReport theorem_b_pipeline(const GroupDatum& g, const Dfa& language, std::size_t N,
                                  const EngineOptions& options) {
  const TheoremBFactors f = theorem_b_factors(g, language, N);
  for (const TruncatedSeries* s : {&f.language_series, &f.solution_series, &f.pair_series})
    if (s->has_negative_coefficient()) throw std::logic_error("theorem_b_pipeline: negative intermediate coefficient");
  const std::size_t p = g.generator_count() * g.coset_count();
  std::vector<BigInt> coeffs = joined_diagonal(f.language_series, f.pair_series, f.solution_series, p, N);
  for (const auto& c : coeffs)
    if (c < 0) throw std::logic_error("theorem_b_pipeline: negative diagonal coefficient");
  return {g.id(), options.language_id, "theorem-b", std::move(coeffs), N};
}

}  // namespace cogrowth
