#include "cogrowth/nrational.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace cogrowth {

struct NRationalExpr::Node {
  Kind kind = Kind::Polynomial;
  std::size_t vars = 0;
  BigInt constant;
  std::vector<TruncatedSeries::Term> terms;
  std::vector<NRationalExpr> children;
};

namespace {

const std::vector<TruncatedSeries::Term> kNoTerms;

std::vector<TruncatedSeries::Term> canonical_terms(std::size_t vars, std::vector<TruncatedSeries::Term> terms) {
  return TruncatedSeries::from_terms(vars, std::move(terms)).terms();
}

}  // namespace

NRationalExpr::NRationalExpr(std::size_t vars) {
  auto n = std::make_shared<Node>();
  n->vars = vars;
  node_ = std::move(n);
}

NRationalExpr NRationalExpr::polynomial(std::size_t vars, std::vector<TruncatedSeries::Term> terms) {
  for (const auto& [m, c] : terms) {
    if (c < 0) throw std::invalid_argument("N-rational polynomial with negative coefficient");
    if (m.size() != vars) throw std::invalid_argument("N-rational polynomial: monomial length mismatch");
  }
  auto n = std::make_shared<Node>();
  n->vars = vars;
  n->terms = canonical_terms(vars, std::move(terms));
  if (!n->terms.empty() && std::all_of(n->terms.front().first.begin(), n->terms.front().first.end(),
                                       [](Exponent e) { return e == 0; }))
    n->constant = n->terms.front().second;
  return NRationalExpr(std::shared_ptr<const Node>(std::move(n)));
}

NRationalExpr NRationalExpr::constant(std::size_t vars, BigInt c) {
  return polynomial(vars, {{Monomial(vars, 0), std::move(c)}});
}

NRationalExpr NRationalExpr::monomial(Monomial m) {
  const std::size_t vars = m.size();
  return polynomial(vars, {{std::move(m), 1}});
}

NRationalExpr NRationalExpr::sum(const NRationalExpr& a, const NRationalExpr& b) {
  if (a.var_count() != b.var_count()) throw std::invalid_argument("N-rational sum: variable count mismatch");
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.kind() == Kind::Polynomial && b.kind() == Kind::Polynomial) {
    auto terms = a.poly_terms();
    terms.insert(terms.end(), b.poly_terms().begin(), b.poly_terms().end());
    return polynomial(a.var_count(), std::move(terms));
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->vars = a.var_count();
  n->constant = a.constant_term() + b.constant_term();
  n->children = {a, b};
  return NRationalExpr(std::shared_ptr<const Node>(std::move(n)));
}

NRationalExpr NRationalExpr::product(const NRationalExpr& a, const NRationalExpr& b) {
  if (a.var_count() != b.var_count()) throw std::invalid_argument("N-rational product: variable count mismatch");
  if (a.is_zero()) return a;
  if (b.is_zero()) return b;
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (a.kind() == Kind::Polynomial && b.kind() == Kind::Polynomial) {
    const std::size_t vars = a.var_count();
    auto p = mul(TruncatedSeries::from_canonical(vars, a.poly_terms(), {}),
                 TruncatedSeries::from_canonical(vars, b.poly_terms(), {}));
    return polynomial(vars, p.terms());
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Product;
  n->vars = a.var_count();
  n->constant = a.constant_term() * b.constant_term();
  n->children = {a, b};
  return NRationalExpr(std::shared_ptr<const Node>(std::move(n)));
}

NRationalExpr NRationalExpr::quasi_inverse(const NRationalExpr& h) {
  if (h.constant_term() != 0)
    throw std::invalid_argument("N-rational quasi-inverse of a series with nonzero constant term");
  if (h.is_zero()) return constant(h.var_count(), 1);
  auto n = std::make_shared<Node>();
  n->kind = Kind::QuasiInverse;
  n->vars = h.var_count();
  n->constant = 1;
  n->children = {h};
  return NRationalExpr(std::shared_ptr<const Node>(std::move(n)));
}

std::size_t NRationalExpr::var_count() const noexcept { return node_->vars; }
NRationalExpr::Kind NRationalExpr::kind() const noexcept { return node_->kind; }

bool NRationalExpr::is_zero() const noexcept {
  return node_->kind == Kind::Polynomial && node_->terms.empty();
}

bool NRationalExpr::is_one() const noexcept {
  return node_->kind == Kind::Polynomial && node_->terms.size() == 1 && node_->constant == 1;
}

const BigInt& NRationalExpr::constant_term() const noexcept { return node_->constant; }

std::span<const NRationalExpr> NRationalExpr::children() const noexcept { return node_->children; }

const std::vector<TruncatedSeries::Term>& NRationalExpr::poly_terms() const noexcept {
  return node_->kind == Kind::Polynomial ? node_->terms : kNoTerms;
}

std::size_t NRationalExpr::node_count() const {
  std::unordered_set<const Node*> seen;
  std::vector<const Node*> stack{node_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    for (const auto& c : n->children) stack.push_back(c.node());
  }
  return seen.size();
}

namespace {

std::string monomial_text(const Monomial& m, const BigInt& c, std::span<const std::string> names) {
  std::ostringstream os;
  bool any = false;
  if (c != 1) {
    os << c;
    any = true;
  }
  for (std::size_t v = 0; v < m.size(); ++v) {
    if (m[v] == 0) continue;
    if (any) os << '*';
    if (v < names.size()) {
      os << names[v];
    } else {
      os << 'x' << (v + 1);
    }
    if (m[v] > 1) os << '^' << m[v];
    any = true;
  }
  if (!any) os << c;
  return os.str();
}

void render(const NRationalExpr& e, std::span<const std::string> names, std::ostream& os, bool wrap) {
  using Kind = NRationalExpr::Kind;
  switch (e.kind()) {
    case Kind::Polynomial: {
      const auto& terms = e.poly_terms();
      if (terms.empty()) {
        os << '0';
        return;
      }
      const bool paren = wrap && terms.size() > 1;
      if (paren) os << '(';
      for (std::size_t i = 0; i < terms.size(); ++i)
        os << (i ? " + " : "") << monomial_text(terms[i].first, terms[i].second, names);
      if (paren) os << ')';
      return;
    }
    case Kind::Sum:
      if (wrap) os << '(';
      render(e.children()[0], names, os, false);
      os << " + ";
      render(e.children()[1], names, os, false);
      if (wrap) os << ')';
      return;
    case Kind::Product:
      render(e.children()[0], names, os, true);
      os << '*';
      render(e.children()[1], names, os, true);
      return;
    case Kind::QuasiInverse:
      os << "1/(1 - ";
      render(e.children()[0], names, os, false);
      os << ')';
      return;
  }
}

}  // namespace

std::string NRationalExpr::to_string(std::span<const std::string> names) const {
  std::ostringstream os;
  render(*this, names, os, false);
  return os.str();
}

TruncatedSeries eval_nrational(const NRationalExpr& e, const Truncation& truncation) {
  std::unordered_map<const NRationalExpr::Node*, TruncatedSeries> memo;
  std::function<const TruncatedSeries&(const NRationalExpr&)> eval = [&](const NRationalExpr& x) -> const TruncatedSeries& {
    if (auto it = memo.find(x.node()); it != memo.end()) return it->second;
    TruncatedSeries value(x.var_count(), truncation);
    switch (x.kind()) {
      case NRationalExpr::Kind::Polynomial:
        value = TruncatedSeries::from_terms(x.var_count(), x.poly_terms(), truncation);
        break;
      case NRationalExpr::Kind::Sum:
        value = add(eval(x.children()[0]), eval(x.children()[1]));
        break;
      case NRationalExpr::Kind::Product:
        value = mul(eval(x.children()[0]), eval(x.children()[1]));
        break;
      case NRationalExpr::Kind::QuasiInverse:
        value = cogrowth::quasi_inverse(eval(x.children()[0]));
        break;
    }
    return memo.emplace(x.node(), std::move(value)).first->second;
  };
  return eval(e);
}

TruncatedSeries eval_nrational(const NRationalExpr& e, Exponent total_degree_cap) {
  return eval_nrational(e, Truncation::total_degree(e.var_count(), total_degree_cap));
}

NRationalExpr sum_of(std::size_t vars, std::span<const NRationalExpr> parts) {
  NRationalExpr acc(vars);
  for (const auto& p : parts) acc = NRationalExpr::sum(acc, p);
  return acc;
}

NRationalExpr product_of(std::size_t vars, std::span<const NRationalExpr> parts) {
  NRationalExpr acc = NRationalExpr::constant(vars, 1);
  for (const auto& p : parts) acc = NRationalExpr::product(acc, p);
  return acc;
}

NRationalExpr embed(const NRationalExpr& e, std::size_t vars, std::span<const std::size_t> mapping) {
  if (mapping.size() != e.var_count()) throw std::invalid_argument("embed: mapping size mismatch");
  std::unordered_map<const NRationalExpr::Node*, NRationalExpr> memo;
  std::function<NRationalExpr(const NRationalExpr&)> go = [&](const NRationalExpr& x) -> NRationalExpr {
    if (auto it = memo.find(x.node()); it != memo.end()) return it->second;
    NRationalExpr out(vars);
    switch (x.kind()) {
      case NRationalExpr::Kind::Polynomial: {
        std::vector<TruncatedSeries::Term> terms;
        for (const auto& [m, c] : x.poly_terms()) {
          Monomial r(vars, 0);
          for (std::size_t k = 0; k < m.size(); ++k) r.at(mapping[k]) += m[k];
          terms.emplace_back(std::move(r), c);
        }
        out = NRationalExpr::polynomial(vars, std::move(terms));
        break;
      }
      case NRationalExpr::Kind::Sum:
        out = NRationalExpr::sum(go(x.children()[0]), go(x.children()[1]));
        break;
      case NRationalExpr::Kind::Product:
        out = NRationalExpr::product(go(x.children()[0]), go(x.children()[1]));
        break;
      case NRationalExpr::Kind::QuasiInverse:
        out = NRationalExpr::quasi_inverse(go(x.children()[0]));
        break;
    }
    memo.emplace(x.node(), out);
    return out;
  };
  return go(e);
}

}  // namespace cogrowth
