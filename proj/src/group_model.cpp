#include "cogrowth/group_model.hpp"

#include <algorithm>
#include <cctype>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace cogrowth {

FreeWord FreeWord::reduce(std::vector<FreeLetter> letters) {
  FreeWord w;
  w.letters_.reserve(letters.size());
  for (FreeLetter l : letters) w.push_back(l);
  return w;
}

FreeWord FreeWord::generator(FreeLetter letter) {
  FreeWord w;
  w.push_back(letter);
  return w;
}

FreeLetter FreeWord::max_generator() const noexcept {
  FreeLetter best = 0;
  for (FreeLetter l : letters_) best = std::max(best, l < 0 ? -l : l);
  return best;
}

void FreeWord::push_back(FreeLetter letter) {
  if (letter == 0) throw std::invalid_argument("free letter 0 is not a generator");
  if (!letters_.empty() && letters_.back() == -letter) {
    letters_.pop_back();
  } else {
    letters_.push_back(letter);
  }
}

FreeWord FreeWord::inverse() const {
  FreeWord w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(-*it);
  return w;
}

std::string FreeWord::to_string() const {
  std::string out;
  for (FreeLetter l : letters_) {
    out += 's';
    out += std::to_string(l < 0 ? -l : l);
    if (l < 0) out += "^-1";
  }
  return out;
}

FreeWord operator*(const FreeWord& a, const FreeWord& b) {
  FreeWord out = a;
  for (FreeLetter l : b.letters()) out.push_back(l);
  return out;
}

FreeWord parse_free_word(std::string_view text) {
  std::vector<FreeLetter> letters;
  std::size_t pos = 0;
  auto fail = [&] { throw std::invalid_argument("malformed free word '" + std::string(text) + "'"); };
  while (pos < text.size()) {
    if (text[pos] == ',' || text[pos] == '.') {
      ++pos;
      continue;
    }
    if (text[pos] != 's') fail();
    ++pos;
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail();
    long k = std::stol(std::string(text.substr(start, pos - start)));
    if (k <= 0) fail();
    FreeLetter letter = static_cast<FreeLetter>(k);
    if (text.substr(pos, 3) == "^-1") {
      letter = -letter;
      pos += 3;
    }
    letters.push_back(letter);
  }
  return FreeWord::reduce(std::move(letters));
}

bool HElement::is_identity() const noexcept {
  return free.empty() && std::all_of(abelian.begin(), abelian.end(), [](auto v) { return v == 0; });
}

std::string HElement::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < abelian.size(); ++i) os << (i ? "," : "") << abelian[i];
  os << "; " << (free.empty() ? "e" : free.to_string()) << ')';
  return os.str();
}

HElement h_mul(const HElement& a, const HElement& b) {
  if (a.abelian.size() != b.abelian.size())
    throw std::invalid_argument("h_mul: abelian rank mismatch");
  HElement out{a.abelian, a.free * b.free};
  for (std::size_t i = 0; i < out.abelian.size(); ++i) out.abelian[i] += b.abelian[i];
  return out;
}

HElement h_inverse(const HElement& a) {
  HElement out{a.abelian, a.free.inverse()};
  for (auto& v : out.abelian) v = -v;
  return out;
}

GroupDatum::GroupDatum(std::string id, std::size_t n, std::size_t m,
                       std::vector<std::string> generators,
                       std::vector<std::optional<std::size_t>> involution, std::size_t d,
                       std::vector<std::vector<std::optional<CocycleCell>>> table,
                       std::vector<GenWord> relators)
    : id_(std::move(id)),
      n_(n),
      m_(m),
      generators_(std::move(generators)),
      involution_(std::move(involution)),
      d_(d),
      table_(std::move(table)),
      relators_(std::move(relators)) {
  const std::size_t s = generators_.size();
  if (d_ == 0) throw std::invalid_argument("group datum needs at least one coset");
  if (involution_.empty()) involution_.assign(s, std::nullopt);
  if (involution_.size() != s) throw std::invalid_argument("involution size differs from generator count");
  for (std::size_t i = 0; i < s; ++i) {
    if (generators_[i].empty()) throw std::invalid_argument("empty generator name");
    for (std::size_t j = 0; j < i; ++j)
      if (generators_[i] == generators_[j])
        throw std::invalid_argument("duplicate generator '" + generators_[i] + "'");
    if (auto inv = involution_[i]) {
      if (*inv >= s) throw std::invalid_argument("involution target out of range");
      if (involution_[*inv] != i)
        throw std::invalid_argument("involution of '" + generators_[i] + "' is not symmetric");
    }
  }
  if (table_.size() != s) throw std::invalid_argument("cocycle table has wrong number of rows");
  for (const auto& row : table_) {
    if (row.size() != d_) throw std::invalid_argument("cocycle table row has wrong number of cosets");
    for (const auto& c : row) {
      if (!c) continue;
      if (c->next < 1 || c->next > d_) throw std::invalid_argument("cocycle cell coset out of range");
      if (c->h.abelian.size() != n_) throw std::invalid_argument("cocycle cell has wrong abelian rank");
      if (static_cast<std::size_t>(c->h.free.max_generator()) > m_)
        throw std::invalid_argument("cocycle cell uses a free generator beyond the free rank");
    }
  }
  for (const auto& r : relators_)
    for (auto x : r)
      if (x >= s) throw std::invalid_argument("relator letter out of range");
}

bool GroupDatum::has_full_involution() const noexcept {
  return std::all_of(involution_.begin(), involution_.end(), [](const auto& v) { return v.has_value(); });
}

const std::optional<CocycleCell>& GroupDatum::cell_if(std::size_t generator, Coset coset) const {
  if (generator >= table_.size() || coset < 1 || coset > d_)
    throw std::out_of_range("cocycle cell index out of range");
  return table_[generator][coset - 1];
}

const CocycleCell& GroupDatum::cell(std::size_t generator, Coset coset) const {
  const auto& c = cell_if(generator, coset);
  if (!c)
    throw std::domain_error("undefined cocycle cell (" + generators_[generator] + ", " +
                            std::to_string(coset) + ")");
  return *c;
}

std::optional<std::size_t> GroupDatum::find_generator(std::string_view name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i] == name) return i;
  return std::nullopt;
}

GenWord GroupDatum::parse_word(std::string_view text) const {
  GenWord w;
  std::istringstream is{std::string(text)};
  std::string tok;
  while (is >> tok) {
    auto g = find_generator(tok);
    if (!g) throw std::invalid_argument("unknown letter '" + tok + "'");
    w.push_back(*g);
  }
  return w;
}

std::string GroupDatum::format_word(std::span<const std::size_t> word) const {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += ' ';
    out += generators_.at(word[i]);
  }
  return out;
}

GroupDatum GroupDatum::with_id(std::string id) const {
  GroupDatum copy = *this;
  copy.id_ = std::move(id);
  return copy;
}

EvalState initial_state(const GroupDatum& g) { return {HElement::identity(g.abelian_rank()), 1}; }

EvalState evaluate_from(const GroupDatum& g, EvalState state, std::span<const std::size_t> word) {
  for (auto x : word) {
    if (x >= g.generator_count()) throw std::invalid_argument("unknown letter index");
    const CocycleCell& c = g.cell(x, state.coset);
    for (std::size_t i = 0; i < state.h.abelian.size(); ++i) state.h.abelian[i] += c.h.abelian[i];
    for (FreeLetter l : c.h.free.letters()) state.h.free.push_back(l);
    state.coset = c.next;
  }
  return state;
}

EvalState evaluate(const GroupDatum& g, std::span<const std::size_t> word) {
  return evaluate_from(g, initial_state(g), word);
}

bool is_trivial(const GroupDatum& g, std::span<const std::size_t> word) {
  return evaluate(g, word).is_identity();
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& e : errors)
    os << "error [" << e.check << "] " << e.message << (e.witness.empty() ? "" : " witness: " + e.witness)
       << '\n';
  for (const auto& w : warnings) os << "warning " << w << '\n';
  return os.str();
}

ValidationReport validate(const GroupDatum& g) {
  ValidationReport report;
  const std::size_t s = g.generator_count();
  const std::size_t d = g.coset_count();

  bool total = true;
  for (std::size_t i = 0; i < s; ++i)
    for (Coset j = 1; j <= d; ++j)
      if (!g.cell_if(i, j)) {
        total = false;
        report.errors.push_back({"totality", "missing cell for generator '" + g.generator_name(i) +
                                                 "' at coset " + std::to_string(j),
                                 g.generator_name(i)});
      }

  std::vector<bool> seen(d + 1, false);
  std::queue<Coset> frontier;
  seen[1] = true;
  frontier.push(1);
  while (!frontier.empty()) {
    Coset c = frontier.front();
    frontier.pop();
    for (std::size_t i = 0; i < s; ++i)
      if (const auto& cell = g.cell_if(i, c); cell && !seen[cell->next]) {
        seen[cell->next] = true;
        frontier.push(cell->next);
      }
  }
  for (Coset j = 2; j <= d; ++j)
    if (!seen[j])
      report.errors.push_back({"reachability", "coset " + std::to_string(j) + " unreachable from coset 1", ""});

  if (!total) return report;

  // A relator is trivial, so t_j r t_j^-1 is trivial in H for every coset j.
  for (const auto& r : g.relators())
    for (Coset j = 1; j <= d; ++j) {
      EvalState st = evaluate_from(g, {HElement::identity(g.abelian_rank()), j}, r);
      if (st.coset != j || !st.h.is_identity()) {
        report.errors.push_back({"relator",
                                 "relator read from coset " + std::to_string(j) + " gives " +
                                     st.h.to_string() + " at coset " + std::to_string(st.coset),
                                 g.format_word(r)});
        break;
      }
    }

  bool any_involution = false;
  for (std::size_t i = 0; i < s; ++i) {
    auto inv = g.involution(i);
    if (!inv || *inv < i) continue;
    any_involution = true;
    for (GenWord w : {GenWord{i, *inv}, GenWord{*inv, i}}) {
      // An inverse pair must be trivial when read from every coset.
      for (Coset j = 1; j <= d; ++j) {
        EvalState st{HElement::identity(g.abelian_rank()), j};
        st = evaluate_from(g, st, w);
        if (st.coset != j || !st.h.is_identity()) {
          report.errors.push_back({"involution",
                                   "inverse pair is nontrivial from coset " + std::to_string(j),
                                   g.format_word(w)});
          break;
        }
      }
      if (i == *inv) break;
    }
  }

  if (g.relators().empty() && !any_involution)
    report.warnings.push_back("no group-consistency evidence: datum has no relators and no involution");
  return report;
}

namespace {

std::string letter_name(std::size_t k) {
  if (k < 26) return std::string(1, static_cast<char>('a' + k));
  return "x" + std::to_string(k + 1);
}

}  // namespace

GroupDatum free_abelian(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::optional<std::size_t>> inv;
  std::vector<std::vector<std::optional<CocycleCell>>> table;
  for (std::size_t k = 0; k < n; ++k) {
    names.push_back(letter_name(k));
    names.push_back(letter_name(k) + "^-1");
    inv.emplace_back(2 * k + 1);
    inv.emplace_back(2 * k);
    for (int sign : {+1, -1}) {
      HElement h = HElement::identity(n);
      h.abelian[k] = sign;
      table.push_back({CocycleCell{h, 1}});
    }
  }
  std::vector<GenWord> relators;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      relators.push_back({2 * i, 2 * j, 2 * i + 1, 2 * j + 1});
  return GroupDatum("z:" + std::to_string(n), n, 0, std::move(names), std::move(inv), 1,
                    std::move(table), std::move(relators));
}

GroupDatum free_group(std::size_t m) {
  std::vector<std::string> names;
  std::vector<std::optional<std::size_t>> inv;
  std::vector<std::vector<std::optional<CocycleCell>>> table;
  for (std::size_t k = 0; k < m; ++k) {
    names.push_back(letter_name(k));
    names.push_back(letter_name(k) + "^-1");
    inv.emplace_back(2 * k + 1);
    inv.emplace_back(2 * k);
    const auto s = static_cast<FreeLetter>(k + 1);
    table.push_back({CocycleCell{{{}, FreeWord::generator(s)}, 1}});
    table.push_back({CocycleCell{{{}, FreeWord::generator(-s)}, 1}});
  }
  return GroupDatum("free:" + std::to_string(m), 0, m, std::move(names), std::move(inv), 1,
                    std::move(table), {});
}

GroupDatum bs_group(std::size_t N) {
  if (N < 1) throw std::invalid_argument("bs_group: N must be at least 1");
  const auto d = static_cast<Coset>(N);
  // Coset j is represented by a^{j-1}; free generator s_j = a^{j-1} t a^{1-j}.
  std::vector<std::optional<CocycleCell>> a_row, ainv_row, t_row, tinv_row;
  for (Coset j = 1; j <= d; ++j) {
    a_row.push_back(j < d ? CocycleCell{{{0}, {}}, j + 1} : CocycleCell{{{1}, {}}, 1});
    ainv_row.push_back(j > 1 ? CocycleCell{{{0}, {}}, j - 1} : CocycleCell{{{-1}, {}}, d});
    const auto sj = static_cast<FreeLetter>(j);
    t_row.push_back(CocycleCell{{{0}, FreeWord::generator(sj)}, j});
    tinv_row.push_back(CocycleCell{{{0}, FreeWord::generator(-sj)}, j});
  }
  // t a^N t^-1 a^-N
  GenWord relator{2};
  relator.insert(relator.end(), N, 0);
  relator.push_back(3);
  relator.insert(relator.end(), N, 1);
  return GroupDatum("bs:" + std::to_string(N), 1, N, {"a", "a^-1", "t", "t^-1"},
                    {1, 0, 3, 2}, N, {a_row, ainv_row, t_row, tinv_row}, {relator});
}

GroupDatum dihedral_infinite() {
  // Coset 2 is H s; s r = r^-1 s.
  std::vector<std::vector<std::optional<CocycleCell>>> table{
      {CocycleCell{{{1}, {}}, 1}, CocycleCell{{{-1}, {}}, 2}},
      {CocycleCell{{{-1}, {}}, 1}, CocycleCell{{{1}, {}}, 2}},
      {CocycleCell{{{0}, {}}, 2}, CocycleCell{{{0}, {}}, 1}},
  };
  return GroupDatum("dihedral", 1, 0, {"r", "r^-1", "s"}, {1, 0, 2}, 2, std::move(table),
                    {{2, 2}, {2, 0, 2, 0}});
}

}  // namespace cogrowth
