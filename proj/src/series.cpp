#include "cogrowth/series.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace cogrowth {

namespace {

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (Exponent e : m) {
      h ^= e + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

using Accumulator = std::unordered_map<Monomial, BigInt, MonomialHash>;

std::vector<TruncatedSeries::Term> finalize(Accumulator&& acc) {
  std::vector<TruncatedSeries::Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) out.emplace_back(m, std::move(c));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

void accumulate(Accumulator& acc, const Monomial& m, const BigInt& c) {
  auto it = acc.find(m);
  if (it == acc.end()) {
    acc.emplace(m, c);
  } else {
    it->second += c;
  }
}

std::uint64_t weighted(const std::vector<Exponent>& w, std::span<const Exponent> m) {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < m.size(); ++i) s += std::uint64_t{w[i]} * m[i];
  return s;
}

}  // namespace

// ---------------------------------------------------------------- Truncation

Truncation Truncation::total_degree(std::size_t vars, Exponent cap) {
  Truncation t;
  if (cap != kUnbounded) t.linear_.push_back({std::vector<Exponent>(vars, 1), cap});
  t.normalize();
  return t;
}

Truncation Truncation::box(std::vector<Exponent> caps) {
  Truncation t;
  t.box_ = std::move(caps);
  t.normalize();
  return t;
}

void Truncation::normalize() {
  std::vector<WeightedCap> kept;
  for (auto& c : linear_) {
    if (c.cap == kUnbounded) continue;
    std::size_t nonzero = 0, where = 0;
    for (std::size_t i = 0; i < c.weights.size(); ++i)
      if (c.weights[i] != 0) {
        ++nonzero;
        where = i;
      }
    if (nonzero == 0) continue;
    if (nonzero == 1) {
      if (box_.empty()) box_.assign(c.weights.size(), kUnbounded);
      box_[where] = std::min(box_[where], c.cap / c.weights[where]);
      continue;
    }
    kept.push_back(std::move(c));
  }
  std::sort(kept.begin(), kept.end());
  linear_.clear();
  for (auto& c : kept) {
    if (!linear_.empty() && linear_.back().weights == c.weights) {
      linear_.back().cap = std::min(linear_.back().cap, c.cap);
    } else {
      linear_.push_back(std::move(c));
    }
  }
  if (std::all_of(box_.begin(), box_.end(), [](Exponent e) { return e == kUnbounded; })) box_.clear();
}

bool Truncation::admits(std::span<const Exponent> m) const noexcept {
  if (!box_.empty())
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] > box_[i]) return false;
  for (const auto& c : linear_)
    if (weighted(c.weights, m) > c.cap) return false;
  return true;
}

bool Truncation::is_finite(std::size_t vars) const noexcept {
  for (std::size_t v = 0; v < vars; ++v)
    if (variable_cap(v) == kUnbounded) return false;
  return true;
}

Exponent Truncation::variable_cap(std::size_t v) const noexcept {
  Exponent best = box_.empty() ? kUnbounded : box_[v];
  for (const auto& c : linear_)
    if (c.weights[v] != 0) best = std::min(best, c.cap / c.weights[v]);
  return best;
}

Exponent Truncation::diagonal_reach(std::size_t vars) const noexcept {
  Exponent best = kUnbounded;
  for (std::size_t v = 0; v < vars && !box_.empty(); ++v) best = std::min(best, box_[v]);
  for (const auto& c : linear_) {
    std::uint64_t sum = std::accumulate(c.weights.begin(), c.weights.end(), std::uint64_t{0});
    if (sum != 0) best = std::min<std::uint64_t>(best, c.cap / sum);
  }
  return best;
}

Truncation Truncation::meet(const Truncation& other) const {
  Truncation t = *this;
  if (!other.box_.empty()) {
    if (t.box_.empty()) {
      t.box_ = other.box_;
    } else {
      if (t.box_.size() != other.box_.size()) throw std::invalid_argument("truncation variable mismatch");
      for (std::size_t i = 0; i < t.box_.size(); ++i) t.box_[i] = std::min(t.box_[i], other.box_[i]);
    }
  }
  t.linear_.insert(t.linear_.end(), other.linear_.begin(), other.linear_.end());
  t.normalize();
  return t;
}

Truncation Truncation::identify(std::size_t i, std::size_t j) const {
  Truncation t = *this;
  if (!t.box_.empty()) {
    t.box_[i] = std::min(t.box_[i], t.box_[j]);
    t.box_.erase(t.box_.begin() + static_cast<std::ptrdiff_t>(j));
  }
  for (auto& c : t.linear_) {
    c.weights[i] += c.weights[j];
    c.weights.erase(c.weights.begin() + static_cast<std::ptrdiff_t>(j));
  }
  t.normalize();
  return t;
}

Truncation Truncation::embed(std::size_t vars, std::span<const std::size_t> mapping) const {
  Truncation t;
  if (!box_.empty()) {
    t.box_.assign(vars, kUnbounded);
    for (std::size_t k = 0; k < mapping.size(); ++k) t.box_[mapping[k]] = box_[k];
  }
  for (const auto& c : linear_) {
    WeightedCap w{std::vector<Exponent>(vars, 0), c.cap};
    for (std::size_t k = 0; k < mapping.size(); ++k) w.weights[mapping[k]] = c.weights[k];
    t.linear_.push_back(std::move(w));
  }
  t.normalize();
  return t;
}

std::string Truncation::to_string() const {
  if (is_unbounded()) return "none";
  std::ostringstream os;
  auto cap = [](Exponent e) { return e == kUnbounded ? std::string("inf") : std::to_string(e); };
  if (!box_.empty()) {
    os << "box=";
    for (std::size_t i = 0; i < box_.size(); ++i) os << (i ? "," : "") << cap(box_[i]);
  }
  for (const auto& c : linear_) {
    os << (os.tellp() > 0 ? " " : "") << "weighted=";
    for (std::size_t i = 0; i < c.weights.size(); ++i) os << (i ? "," : "") << c.weights[i];
    os << "<=" << c.cap;
  }
  return os.str();
}

// ----------------------------------------------------------- TruncatedSeries

TruncatedSeries::TruncatedSeries(std::size_t vars, Truncation truncation)
    : vars_(vars), truncation_(std::move(truncation)) {}

TruncatedSeries TruncatedSeries::constant(std::size_t vars, BigInt c, Truncation truncation) {
  return from_terms(vars, {{Monomial(vars, 0), std::move(c)}}, std::move(truncation));
}

TruncatedSeries TruncatedSeries::monomial(Monomial m, BigInt c, Truncation truncation) {
  const std::size_t vars = m.size();
  return from_terms(vars, {{std::move(m), std::move(c)}}, std::move(truncation));
}

TruncatedSeries TruncatedSeries::variable(std::size_t vars, std::size_t v, Truncation truncation) {
  Monomial m(vars, 0);
  m.at(v) = 1;
  return monomial(std::move(m), 1, std::move(truncation));
}

TruncatedSeries TruncatedSeries::from_terms(std::size_t vars, std::vector<Term> terms,
                                            Truncation truncation) {
  TruncatedSeries s(vars, std::move(truncation));
  Accumulator acc;
  for (auto& [m, c] : terms) {
    if (m.size() != vars) throw std::invalid_argument("monomial length differs from variable count");
    if (s.truncation_.admits(m)) accumulate(acc, m, c);
  }
  s.terms_ = finalize(std::move(acc));
  return s;
}

TruncatedSeries TruncatedSeries::from_canonical(std::size_t vars, std::vector<Term> terms,
                                                Truncation truncation) {
  TruncatedSeries s(vars, std::move(truncation));
  s.terms_ = std::move(terms);
  return s;
}

const BigInt* TruncatedSeries::find(std::span<const Exponent> m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, std::span<const Exponent> key) {
    return std::lexicographical_compare(t.first.begin(), t.first.end(), key.begin(), key.end());
  });
  if (it == terms_.end() || !std::equal(it->first.begin(), it->first.end(), m.begin(), m.end())) return nullptr;
  return &it->second;
}

BigInt TruncatedSeries::coefficient(std::span<const Exponent> m) const {
  const BigInt* c = find(m);
  return c ? *c : BigInt{0};
}

BigInt TruncatedSeries::constant_term() const { return coefficient(Monomial(vars_, 0)); }

bool TruncatedSeries::has_negative_coefficient() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.second < 0; });
}

TruncatedSeries TruncatedSeries::truncated(const Truncation& extra) const {
  TruncatedSeries s(vars_, truncation_.meet(extra));
  for (const auto& t : terms_)
    if (s.truncation_.admits(t.first)) s.terms_.push_back(t);
  return s;
}

std::string TruncatedSeries::to_string() const {
  std::ostringstream os;
  for (const auto& [m, c] : terms_) {
    for (std::size_t i = 0; i < m.size(); ++i) os << (i ? "," : "") << m[i];
    os << ": " << c << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------- arithmetic

namespace {

void require_same_vars(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.var_count() != b.var_count()) throw std::invalid_argument("series variable count mismatch");
}

TruncatedSeries combine(const TruncatedSeries& a, const TruncatedSeries& b, bool negate) {
  require_same_vars(a, b);
  Truncation t = a.truncation().meet(b.truncation());
  Accumulator acc;
  for (const auto& [m, c] : a.terms())
    if (t.admits(m)) accumulate(acc, m, c);
  for (const auto& [m, c] : b.terms())
    if (t.admits(m)) accumulate(acc, m, negate ? BigInt(-c) : c);
  return TruncatedSeries::from_canonical(a.var_count(), finalize(std::move(acc)), std::move(t));
}

// Multiplies into an accumulator, restricted to `t`.
void multiply_into(Accumulator& acc, const TruncatedSeries& a, const TruncatedSeries& b, const Truncation& t) {
  Monomial buf(a.var_count());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = ma[i] + mb[i];
      if (!t.admits(buf)) continue;
      auto it = acc.find(buf);
      if (it == acc.end()) {
        acc.emplace(buf, ca * cb);
      } else {
        it->second += ca * cb;
      }
    }
  }
}

}  // namespace

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) { return combine(a, b, false); }
TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b) { return combine(a, b, true); }

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_vars(a, b);
  Truncation t = a.truncation().meet(b.truncation());
  Accumulator acc;
  multiply_into(acc, a, b, t);
  return TruncatedSeries::from_canonical(a.var_count(), finalize(std::move(acc)), std::move(t));
}

TruncatedSeries scale(const TruncatedSeries& a, const BigInt& c) {
  std::vector<TruncatedSeries::Term> terms;
  for (const auto& [m, v] : a.terms()) terms.emplace_back(m, v * c);
  return TruncatedSeries::from_terms(a.var_count(), std::move(terms), a.truncation());
}

namespace {

// Bound on the number of factors any nonzero product of terms of `h` can have
// inside `t`: a cap under which every term of h has positive weight.
std::optional<Exponent> power_bound(const TruncatedSeries& h, const Truncation& t) {
  std::optional<Exponent> best;
  const auto& box = t.box_caps();
  for (std::size_t v = 0; v < box.size(); ++v) {
    if (box[v] == kUnbounded) continue;
    bool all = std::all_of(h.terms().begin(), h.terms().end(), [&](const auto& term) { return term.first[v] > 0; });
    if (all) best = std::min(best.value_or(kUnbounded), box[v]);
  }
  for (const auto& c : t.weighted_caps()) {
    bool all = std::all_of(h.terms().begin(), h.terms().end(),
                           [&](const auto& term) { return weighted(c.weights, term.first) > 0; });
    if (all) best = std::min(best.value_or(kUnbounded), c.cap);
  }
  if (!best && t.is_finite(h.var_count())) {
    std::uint64_t sum = 0;
    for (std::size_t v = 0; v < h.var_count(); ++v) sum += t.variable_cap(v);
    best = static_cast<Exponent>(std::min<std::uint64_t>(sum, kUnbounded - 1));
  }
  return best;
}

}  // namespace

TruncatedSeries quasi_inverse(const TruncatedSeries& h) {
  if (h.constant_term() != 0) throw std::invalid_argument("quasi_inverse: constant term must be zero");
  const std::size_t vars = h.var_count();
  const Truncation& t = h.truncation();
  TruncatedSeries one = TruncatedSeries::constant(vars, 1, t);
  if (h.is_zero()) return one;
  if (!power_bound(h, t))
    throw std::invalid_argument("quasi_inverse: truncation does not bound the powers of h");

  Accumulator total;
  accumulate(total, Monomial(vars, 0), 1);
  TruncatedSeries power = one;
  for (;;) {
    power = mul(power, h);
    if (power.is_zero()) break;
    for (const auto& [m, c] : power.terms()) accumulate(total, m, c);
  }
  return TruncatedSeries::from_canonical(vars, finalize(std::move(total)), t);
}

// ----------------------------------------------------------------- diagonals

TruncatedSeries primitive_diagonal(const TruncatedSeries& f, std::size_t i, std::size_t j) {
  if (!(i < j && j < f.var_count())) throw std::invalid_argument("primitive_diagonal: need i < j < var count");
  std::vector<TruncatedSeries::Term> terms;
  for (const auto& [m, c] : f.terms()) {
    if (m[i] != m[j]) continue;
    Monomial r = m;
    r.erase(r.begin() + static_cast<std::ptrdiff_t>(j));
    terms.emplace_back(std::move(r), c);
  }
  return TruncatedSeries::from_terms(f.var_count() - 1, std::move(terms), f.truncation().identify(i, j));
}

TruncatedSeries complete_diagonal(const TruncatedSeries& f) {
  const std::size_t p = f.var_count();
  if (p == 0) throw std::invalid_argument("complete_diagonal: series has no variables");
  const Exponent reach = f.truncation().diagonal_reach(p);
  std::vector<TruncatedSeries::Term> terms;
  for (const auto& [m, c] : f.terms()) {
    if (std::all_of(m.begin(), m.end(), [&](Exponent e) { return e == m[0]; }) && m[0] <= reach)
      terms.push_back({Monomial{m[0]}, c});
  }
  return TruncatedSeries::from_terms(1, std::move(terms), Truncation::total_degree(1, reach));
}

std::vector<BigInt> univariate_coefficients(const TruncatedSeries& f, Exponent max_degree) {
  if (f.var_count() != 1) throw std::invalid_argument("univariate_coefficients: series is not univariate");
  Exponent degree = std::min(f.truncation().variable_cap(0), max_degree);
  if (degree == kUnbounded) {
    degree = 0;
    for (const auto& [m, c] : f.terms()) degree = std::max(degree, m[0]);
  }
  std::vector<BigInt> out(std::size_t{degree} + 1);
  for (const auto& [m, c] : f.terms())
    if (m[0] <= degree) out[m[0]] = c;
  return out;
}

std::vector<BigInt> filtered_diagonal_sum(const TruncatedSeries& f,
                                          const std::function<bool(std::span<const Exponent>)>& member,
                                          Exponent max_degree) {
  const std::size_t vars = f.var_count();
  if (vars == 0) throw std::invalid_argument("filtered_diagonal_sum: need a z variable");
  const std::size_t z = vars - 1;
  const Truncation& t = f.truncation();
  bool x_free = true;
  for (std::size_t v = 0; v < z; ++v) x_free = x_free && t.variable_cap(v) == kUnbounded;
  for (const auto& c : t.weighted_caps())
    for (std::size_t v = 0; v < z; ++v) x_free = x_free && c.weights[v] == 0;
  if (!x_free || t.variable_cap(z) < max_degree)
    throw std::invalid_argument("filtered_diagonal_sum: truncation is not exact up to the requested z-degree");

  std::vector<BigInt> out(std::size_t{max_degree} + 1);
  for (const auto& [m, c] : f.terms()) {
    if (m[z] > max_degree) continue;
    if (member(std::span<const Exponent>(m.data(), z))) out[m[z]] += c;
  }
  return out;
}

TruncatedSeries embed(const TruncatedSeries& f, std::size_t vars, std::span<const std::size_t> mapping) {
  if (mapping.size() != f.var_count()) throw std::invalid_argument("embed: mapping size mismatch");
  std::vector<bool> used(vars, false);
  for (auto v : mapping) {
    if (v >= vars || used[v]) throw std::invalid_argument("embed: mapping must be injective into range");
    used[v] = true;
  }
  std::vector<TruncatedSeries::Term> terms;
  for (const auto& [m, c] : f.terms()) {
    Monomial r(vars, 0);
    for (std::size_t k = 0; k < m.size(); ++k) r[mapping[k]] = m[k];
    terms.emplace_back(std::move(r), c);
  }
  return TruncatedSeries::from_terms(vars, std::move(terms), f.truncation().embed(vars, mapping));
}

// ------------------------------------------------------ diagonal of products

std::vector<BigInt> product_diagonal(std::span<const DiagonalFactor> factors, std::size_t global_vars,
                                     Exponent max_degree) {
  const std::size_t r_count = factors.size();
  std::vector<std::ptrdiff_t> first(global_vars, -1), last(global_vars, -1);
  for (std::size_t r = 0; r < r_count; ++r) {
    const auto& f = factors[r];
    if (!f.series || f.series->var_count() != f.variables.size())
      throw std::invalid_argument("product_diagonal: factor variable map mismatch");
    if (!f.series->truncation().admits(Monomial(f.variables.size(), max_degree)))
      throw std::invalid_argument("product_diagonal: factor truncation is not exact up to the requested degree");
    for (auto v : f.variables) {
      if (v >= global_vars) throw std::invalid_argument("product_diagonal: variable out of range");
      if (first[v] < 0) first[v] = static_cast<std::ptrdiff_t>(r);
      last[v] = static_cast<std::ptrdiff_t>(r);
    }
  }
  const bool all_covered = std::all_of(first.begin(), first.end(), [](auto x) { return x >= 0; });

  // Active variables between factors: seen but not yet finished.
  std::vector<std::vector<std::size_t>> active(r_count + 1);
  for (std::size_t r = 0; r < r_count; ++r)
    for (std::size_t v = 0; v < global_vars; ++v)
      if (first[v] >= 0 && first[v] <= static_cast<std::ptrdiff_t>(r) && last[v] > static_cast<std::ptrdiff_t>(r))
        active[r + 1].push_back(v);

  struct Plan {
    std::vector<std::size_t> completing_local;          // local variables finishing here
    std::vector<std::ptrdiff_t> completing_prior_slot;  // slot in previous state, -1 if new
    std::vector<std::ptrdiff_t> next_prior_slot;        // for each next active var: slot in previous state
    std::vector<std::ptrdiff_t> next_local;             // for each next active var: local index, -1 if absent
    std::unordered_map<Monomial, std::vector<std::size_t>, MonomialHash> index;
  };
  std::vector<Plan> plans(r_count);
  for (std::size_t r = 0; r < r_count; ++r) {
    const auto& f = factors[r];
    Plan& plan = plans[r];
    auto slot_in = [](const std::vector<std::size_t>& list, std::size_t v) -> std::ptrdiff_t {
      auto it = std::find(list.begin(), list.end(), v);
      return it == list.end() ? -1 : it - list.begin();
    };
    for (std::size_t k = 0; k < f.variables.size(); ++k)
      if (last[f.variables[k]] == static_cast<std::ptrdiff_t>(r)) {
        plan.completing_local.push_back(k);
        plan.completing_prior_slot.push_back(slot_in(active[r], f.variables[k]));
      }
    for (auto v : active[r + 1]) {
      plan.next_prior_slot.push_back(slot_in(active[r], v));
      auto it = std::find(f.variables.begin(), f.variables.end(), v);
      plan.next_local.push_back(it == f.variables.end() ? -1 : it - f.variables.begin());
    }
    const auto& terms = f.series->terms();
    for (std::size_t t = 0; t < terms.size(); ++t) {
      Monomial key;
      for (auto k : plan.completing_local) key.push_back(terms[t].first[k]);
      plan.index[key].push_back(t);
    }
  }

  std::vector<BigInt> out(std::size_t{max_degree} + 1);
  for (Exponent ell = 0; ell <= max_degree; ++ell) {
    if (ell > 0 && !all_covered) break;
    Accumulator states;
    states.emplace(Monomial{}, 1);
    for (std::size_t r = 0; r < r_count && !states.empty(); ++r) {
      const Plan& plan = plans[r];
      const auto& terms = factors[r].series->terms();
      Accumulator next;
      Monomial key(plan.completing_local.size());
      Monomial state_out(plan.next_local.size());
      for (const auto& [state, count] : states) {
        bool feasible = true;
        for (std::size_t c = 0; c < key.size(); ++c) {
          Exponent prior = plan.completing_prior_slot[c] < 0 ? 0 : state[plan.completing_prior_slot[c]];
          if (prior > ell) {
            feasible = false;
            break;
          }
          key[c] = ell - prior;
        }
        if (!feasible) continue;
        auto hit = plan.index.find(key);
        if (hit == plan.index.end()) continue;
        for (std::size_t t : hit->second) {
          bool ok = true;
          for (std::size_t a = 0; a < state_out.size() && ok; ++a) {
            Exponent v = plan.next_prior_slot[a] < 0 ? 0 : state[plan.next_prior_slot[a]];
            if (plan.next_local[a] >= 0) v += terms[t].first[plan.next_local[a]];
            state_out[a] = v;
            ok = v <= ell;
          }
          if (!ok) continue;
          BigInt contribution = count * terms[t].second;
          auto it = next.find(state_out);
          if (it == next.end()) {
            next.emplace(state_out, std::move(contribution));
          } else {
            it->second += contribution;
          }
        }
      }
      states = std::move(next);
    }
    auto it = states.find(Monomial{});
    if (it != states.end()) out[ell] = it->second;
  }
  return out;
}

}  // namespace cogrowth
