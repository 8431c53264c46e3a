#include "cogrowth/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace cogrowth {

ParseError::ParseError(std::string source, std::size_t line, const std::string& message)
    : std::runtime_error(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + message),
      source_(std::move(source)),
      line_(line) {}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream is{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; is >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
    pos = end + 1;
  }
  return out;
}

class Reader {
 public:
  Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(std::size_t line, const std::string& message) const {
    throw ParseError(source_, line, message);
  }

  template <class Int>
  Int integer(std::size_t line, std::string_view tok, const char* what) const {
    Int v{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      fail(line, std::string("expected an integer for ") + what + ", got '" + std::string(tok) + "'");
    return v;
  }

  // Value of `key=value`, or nullopt when the token has another key.
  static std::optional<std::string_view> keyed(std::string_view tok, std::string_view key) {
    if (tok.size() > key.size() && tok.substr(0, key.size()) == key && tok[key.size()] == '=')
      return tok.substr(key.size() + 1);
    return std::nullopt;
  }

  const std::string& source() const noexcept { return source_; }

 private:
  std::string source_;
};

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  if (s.empty()) return out;
  std::size_t pos = 0;
  for (;;) {
    std::size_t end = s.find(sep, pos);
    out.push_back(s.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

}  // namespace

// ------------------------------------------------------------------ group

GroupDatum parse_group(std::string_view text, const std::string& source, const std::string& default_id) {
  Reader rd(source);
  const auto lines = tokenize(text);
  if (lines.empty()) rd.fail(0, "empty group file");
  const Line& head = lines.front();
  if (head.tokens[0] != "group") rd.fail(head.number, "expected 'group n=.. m=.. d=..' first");
  std::optional<std::size_t> n, m, d;
  std::string id = default_id;
  for (std::size_t k = 1; k < head.tokens.size(); ++k) {
    const auto& tok = head.tokens[k];
    if (auto v = Reader::keyed(tok, "n")) {
      n = rd.integer<std::size_t>(head.number, *v, "n");
    } else if (auto v = Reader::keyed(tok, "m")) {
      m = rd.integer<std::size_t>(head.number, *v, "m");
    } else if (auto v = Reader::keyed(tok, "d")) {
      d = rd.integer<std::size_t>(head.number, *v, "d");
    } else if (auto v = Reader::keyed(tok, "id")) {
      id = std::string(*v);
    } else {
      rd.fail(head.number, "unknown group field '" + tok + "'");
    }
  }
  if (!n || !m || !d) rd.fail(head.number, "group header needs n=, m= and d=");
  if (*d == 0) rd.fail(head.number, "d must be positive");

  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::string>> inverse_names;  // line, name
  struct RawCell {
    std::size_t line;
    std::string gen;
    Coset from, to;
    HElement h;
  };
  std::vector<RawCell> cells;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> relators;

  for (std::size_t li = 1; li < lines.size(); ++li) {
    const Line& L = lines[li];
    const auto& t = L.tokens;
    if (t[0] == "gen") {
      if (t.size() < 2 || t.size() > 3) rd.fail(L.number, "expected 'gen <name> [inv=<name>]'");
      if (!cells.empty()) rd.fail(L.number, "generators must be declared before cells");
      names.push_back(t[1]);
      std::string inv;
      if (t.size() == 3) {
        auto v = Reader::keyed(t[2], "inv");
        if (!v) rd.fail(L.number, "expected inv=<name>, got '" + t[2] + "'");
        inv = std::string(*v);
      }
      inverse_names.emplace_back(L.number, inv);
    } else if (t[0] == "cell") {
      if (t.size() != 7 || t[3] != "->")
        rd.fail(L.number, "expected 'cell <gen> <coset> -> <coset> vec=<..> free=<..>'");
      RawCell c{L.number, t[1], rd.integer<Coset>(L.number, t[2], "coset"), rd.integer<Coset>(L.number, t[4], "coset"),
                {}};
      auto vec = Reader::keyed(t[5], "vec");
      if (!vec && t[5] == "vec=") vec = std::string_view{};
      if (!vec) rd.fail(L.number, "expected vec=<c1,...,cn>, got '" + t[5] + "'");
      for (auto part : split(*vec, ',')) c.h.abelian.push_back(rd.integer<std::int64_t>(L.number, part, "vec entry"));
      if (c.h.abelian.size() != *n)
        rd.fail(L.number, "vec has " + std::to_string(c.h.abelian.size()) + " entries, expected " + std::to_string(*n));
      std::optional<std::string_view> free = Reader::keyed(t[6], "free");
      if (!free && t[6] == "free=") free = std::string_view{};
      if (!free) rd.fail(L.number, "expected free=<word>, got '" + t[6] + "'");
      try {
        c.h.free = parse_free_word(*free);
      } catch (const std::invalid_argument& e) {
        rd.fail(L.number, e.what());
      }
      if (static_cast<std::size_t>(c.h.free.max_generator()) > *m)
        rd.fail(L.number, "free word uses a generator beyond m=" + std::to_string(*m));
      if (c.from < 1 || c.from > *d || c.to < 1 || c.to > *d) rd.fail(L.number, "coset out of range 1.." + std::to_string(*d));
      cells.push_back(std::move(c));
    } else if (t[0] == "relator") {
      relators.emplace_back(L.number, std::vector<std::string>(t.begin() + 1, t.end()));
    } else {
      rd.fail(L.number, "unknown directive '" + t[0] + "'");
    }
  }

  auto index_of = [&](std::size_t line, const std::string& name) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return i;
    rd.fail(line, "unknown generator '" + name + "'");
  };
  std::vector<std::optional<std::size_t>> involution;
  for (const auto& [line, inv] : inverse_names)
    involution.push_back(inv.empty() ? std::nullopt : std::optional<std::size_t>(index_of(line, inv)));
  std::vector<std::vector<std::optional<CocycleCell>>> table(names.size(),
                                                             std::vector<std::optional<CocycleCell>>(*d));
  for (auto& c : cells) {
    auto& slot = table[index_of(c.line, c.gen)][c.from - 1];
    if (slot) rd.fail(c.line, "duplicate cell for " + c.gen + " at coset " + std::to_string(c.from));
    slot = CocycleCell{std::move(c.h), c.to};
  }
  std::vector<GenWord> words;
  for (const auto& [line, rel] : relators) {
    GenWord w;
    for (const auto& name : rel) w.push_back(index_of(line, name));
    words.push_back(std::move(w));
  }
  try {
    return GroupDatum(id, *n, *m, names, involution, *d, std::move(table), std::move(words));
  } catch (const std::invalid_argument& e) {
    rd.fail(0, e.what());
  }
}

GroupDatum load_group(const std::filesystem::path& path) {
  return parse_group(read_file(path), path.string(), "file:" + path.string());
}

std::string write_group(const GroupDatum& g) {
  std::ostringstream os;
  os << "group n=" << g.abelian_rank() << " m=" << g.free_rank() << " d=" << g.coset_count() << " id=" << g.id()
     << '\n';
  for (std::size_t i = 0; i < g.generator_count(); ++i) {
    os << "gen " << g.generator_name(i);
    if (auto inv = g.involution(i)) os << " inv=" << g.generator_name(*inv);
    os << '\n';
  }
  for (std::size_t i = 0; i < g.generator_count(); ++i)
    for (Coset j = 1; j <= g.coset_count(); ++j) {
      const auto& c = g.cell_if(i, j);
      if (!c) continue;
      os << "cell " << g.generator_name(i) << ' ' << j << " -> " << c->next << " vec=";
      for (std::size_t k = 0; k < c->h.abelian.size(); ++k) os << (k ? "," : "") << c->h.abelian[k];
      os << " free=" << c->h.free.to_string() << '\n';
    }
  for (const auto& r : g.relators()) os << "relator " << g.format_word(r) << '\n';
  return os.str();
}

// -------------------------------------------------------------------- dfa

Dfa parse_dfa(std::string_view text, const std::string& source) {
  Reader rd(source);
  std::vector<std::string> alphabet;
  std::optional<std::size_t> states, start;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> accepts, transitions;
  std::size_t alphabet_line = 0, states_line = 0, start_line = 0;
  for (const Line& L : tokenize(text)) {
    const auto& t = L.tokens;
    if (t[0] == "alphabet") {
      if (alphabet_line) rd.fail(L.number, "alphabet declared twice");
      alphabet.assign(t.begin() + 1, t.end());
      alphabet_line = L.number;
    } else if (t[0] == "states") {
      if (t.size() != 2) rd.fail(L.number, "expected 'states <int>'");
      states = rd.integer<std::size_t>(L.number, t[1], "states");
      states_line = L.number;
    } else if (t[0] == "start") {
      if (t.size() != 2) rd.fail(L.number, "expected 'start <int>'");
      start = rd.integer<std::size_t>(L.number, t[1], "start");
      start_line = L.number;
    } else if (t[0] == "accept") {
      accepts.emplace_back(L.number, std::vector<std::string>(t.begin() + 1, t.end()));
    } else if (t[0] == "trans") {
      if (t.size() != 4) rd.fail(L.number, "expected 'trans <state> <sym> <state>'");
      transitions.emplace_back(L.number, std::vector<std::string>(t.begin() + 1, t.end()));
    } else {
      rd.fail(L.number, "unknown directive '" + t[0] + "'");
    }
  }
  if (!alphabet_line) rd.fail(0, "missing alphabet line");
  if (!states) rd.fail(0, "missing states line");
  if (*states == 0) rd.fail(states_line, "need at least one state");
  if (!start) rd.fail(0, "missing start line");
  if (*start >= *states) rd.fail(start_line, "start state out of range");

  auto state_of = [&](std::size_t line, const std::string& tok) {
    auto q = rd.integer<std::size_t>(line, tok, "state");
    if (q >= *states) rd.fail(line, "state " + tok + " out of range");
    return q;
  };
  std::vector<bool> accepting(*states, false);
  for (const auto& [line, qs] : accepts)
    for (const auto& q : qs) accepting[state_of(line, q)] = true;
  std::vector<std::vector<std::optional<State>>> delta(*states, std::vector<std::optional<State>>(alphabet.size()));
  for (const auto& [line, t] : transitions) {
    State from = state_of(line, t[0]);
    auto it = std::find(alphabet.begin(), alphabet.end(), t[1]);
    if (it == alphabet.end()) rd.fail(line, "unknown symbol '" + t[1] + "'");
    State to = state_of(line, t[2]);
    auto& slot = delta[from][static_cast<std::size_t>(it - alphabet.begin())];
    if (slot && *slot != to) rd.fail(line, "conflicting transition for state " + t[0] + " on " + t[1]);
    slot = to;
  }
  try {
    return Dfa::from_partial(std::move(alphabet), *states, *start, std::move(accepting), delta);
  } catch (const std::invalid_argument& e) {
    rd.fail(alphabet_line, e.what());
  }
}

Dfa load_dfa(const std::filesystem::path& path) { return parse_dfa(read_file(path), path.string()); }

std::string write_dfa(const Dfa& d) {
  std::ostringstream os;
  os << "alphabet";
  for (const auto& a : d.alphabet()) os << ' ' << a;
  os << "\nstates " << d.state_count() << "\nstart " << d.start() << "\naccept";
  for (State q = 0; q < d.state_count(); ++q)
    if (d.is_accepting(q)) os << ' ' << q;
  os << '\n';
  for (State q = 0; q < d.state_count(); ++q)
    for (std::size_t a = 0; a < d.symbol_count(); ++a)
      os << "trans " << q << ' ' << d.alphabet()[a] << ' ' << d.next(q, a) << '\n';
  return os.str();
}

// ----------------------------------------------------------------- system

DioSystem parse_system(std::string_view text, const std::string& source) {
  Reader rd(source);
  std::optional<std::size_t> rows, cols;
  std::size_t header_line = 0;
  std::vector<IntVector> matrix;
  for (const Line& L : tokenize(text)) {
    const auto& t = L.tokens;
    if (t[0] == "rows") {
      if (t.size() != 4 || t[2] != "cols") rd.fail(L.number, "expected 'rows <n> cols <k>'");
      rows = rd.integer<std::size_t>(L.number, t[1], "rows");
      cols = rd.integer<std::size_t>(L.number, t[3], "cols");
      if (*rows == 0 || *cols == 0) rd.fail(L.number, "dimensions must be positive");
      header_line = L.number;
    } else if (t[0] == "row") {
      if (!rows) rd.fail(L.number, "row before 'rows <n> cols <k>'");
      if (t.size() != *cols + 1)
        rd.fail(L.number, "row has " + std::to_string(t.size() - 1) + " entries, expected " + std::to_string(*cols));
      IntVector r;
      for (std::size_t k = 1; k < t.size(); ++k) r.emplace_back(rd.integer<std::int64_t>(L.number, t[k], "entry"));
      matrix.push_back(std::move(r));
      if (matrix.size() > *rows) rd.fail(L.number, "more rows than declared");
    } else {
      rd.fail(L.number, "unknown directive '" + t[0] + "'");
    }
  }
  if (!rows) rd.fail(0, "missing 'rows <n> cols <k>' line");
  if (matrix.size() != *rows)
    rd.fail(header_line, "declared " + std::to_string(*rows) + " rows, found " + std::to_string(matrix.size()));
  return DioSystem(std::move(matrix));
}

DioSystem load_system(const std::filesystem::path& path) { return parse_system(read_file(path), path.string()); }

// ---------------------------------------------------------------- grammar

Cfg parse_grammar(std::string_view text, const std::string& source) {
  Reader rd(source);
  std::vector<std::string> terminals, nonterminals;
  std::optional<std::pair<std::size_t, std::string>> start;
  struct RawRule {
    std::size_t line;
    std::string lhs;
    std::vector<std::string> body;
  };
  std::vector<RawRule> raw;
  for (const Line& L : tokenize(text)) {
    const auto& t = L.tokens;
    if (t[0] == "terminal") {
      terminals.insert(terminals.end(), t.begin() + 1, t.end());
    } else if (t[0] == "nonterminal") {
      nonterminals.insert(nonterminals.end(), t.begin() + 1, t.end());
    } else if (t[0] == "start") {
      if (t.size() != 2) rd.fail(L.number, "expected 'start <nonterminal>'");
      start = {L.number, t[1]};
    } else if (t[0] == "rule") {
      if (t.size() < 4 || t[2] != "->") rd.fail(L.number, "expected 'rule <NT> -> <body> | ...'");
      std::vector<std::string> body;
      for (std::size_t k = 3; k <= t.size(); ++k) {
        if (k == t.size() || t[k] == "|") {
          if (body.empty()) rd.fail(L.number, "empty alternative; write eps for the empty word");
          if (body.size() == 1 && body[0] == "eps") body.clear();
          raw.push_back({L.number, t[1], std::move(body)});
          body.clear();
        } else {
          body.push_back(t[k]);
        }
      }
    } else {
      rd.fail(L.number, "unknown directive '" + t[0] + "'");
    }
  }
  if (nonterminals.empty()) rd.fail(0, "no nonterminals declared");
  auto find = [](const std::vector<std::string>& v, const std::string& s) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] == s) return i;
    return std::nullopt;
  };
  std::size_t start_index = 0;
  if (start) {
    auto s = find(nonterminals, start->second);
    if (!s) rd.fail(start->first, "start symbol '" + start->second + "' is not a nonterminal");
    start_index = *s;
  }
  std::vector<Production> rules;
  for (const auto& r : raw) {
    auto lhs = find(nonterminals, r.lhs);
    if (!lhs) rd.fail(r.line, "rule head '" + r.lhs + "' is not a nonterminal");
    Production p{*lhs, {}};
    for (const auto& s : r.body) {
      if (s == "eps") rd.fail(r.line, "eps must stand alone in an alternative");
      if (auto a = find(terminals, s)) {
        p.body.push_back({true, *a});
      } else if (auto b = find(nonterminals, s)) {
        p.body.push_back({false, *b});
      } else {
        rd.fail(r.line, "undeclared symbol '" + s + "'");
      }
    }
    rules.push_back(std::move(p));
  }
  try {
    return Cfg(std::move(terminals), std::move(nonterminals), start_index, std::move(rules));
  } catch (const std::invalid_argument& e) {
    rd.fail(0, e.what());
  }
}

Cfg load_grammar(const std::filesystem::path& path) { return parse_grammar(read_file(path), path.string()); }

std::string write_decomposition(const SemilinearDecomposition& dec) {
  std::string out;
  for (const auto& p : dec.parts) out += "part " + p.to_string() + '\n';
  return out;
}

}  // namespace cogrowth
