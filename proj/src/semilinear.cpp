#include "cogrowth/semilinear.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cogrowth {

namespace {

using Rational = boost::multiprecision::cpp_rational;

std::size_t rank_of(const std::vector<IntVector>& vectors) {
  if (vectors.empty()) return 0;
  const std::size_t k = vectors.front().size();
  std::vector<std::vector<Rational>> m;
  for (const auto& v : vectors) m.emplace_back(v.begin(), v.end());
  std::size_t rank = 0;
  for (std::size_t c = 0; c < k && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (std::size_t cc = c; cc < k; ++cc) m[r][cc] -= f * m[rank][cc];
    }
    ++rank;
  }
  return rank;
}

// Coordinates with respect to independent periods u_1..u_r: for x in their
// span, x = sum (num_i / det) u_i with num = adj * x restricted to `rows`.
struct Coordinates {
  std::vector<IntVector> periods;
  std::vector<std::size_t> rows;
  std::vector<IntVector> adj;
  BigInt det = 1;

  explicit Coordinates(std::vector<IntVector> us) : periods(std::move(us)) {
    const std::size_t r = periods.size();
    if (r == 0) return;
    const std::size_t k = periods.front().size();
    std::vector<IntVector> picked;
    for (std::size_t c = 0; c < k && rows.size() < r; ++c) {
      IntVector row(r);
      for (std::size_t i = 0; i < r; ++i) row[i] = periods[i][c];
      picked.push_back(row);
      if (rank_of(picked) == picked.size()) {
        rows.push_back(c);
      } else {
        picked.pop_back();
      }
    }
    if (rows.size() != r) throw std::invalid_argument("periods are linearly dependent");

    // Gauss-Jordan on [M | I] with M[a][b] = u_b[rows[a]].
    std::vector<std::vector<Rational>> m(r, std::vector<Rational>(2 * r));
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t b = 0; b < r; ++b) m[a][b] = Rational(periods[b][rows[a]]);
      m[a][r + a] = 1;
    }
    Rational d = 1;
    for (std::size_t c = 0; c < r; ++c) {
      std::size_t p = c;
      while (m[p][c] == 0) ++p;
      if (p != c) {
        std::swap(m[p], m[c]);
        d = -d;
      }
      Rational pivot = m[c][c];
      d *= pivot;
      for (auto& e : m[c]) e /= pivot;
      for (std::size_t a = 0; a < r; ++a) {
        if (a == c || m[a][c] == 0) continue;
        Rational f = m[a][c];
        for (std::size_t cc = 0; cc < 2 * r; ++cc) m[a][cc] -= f * m[c][cc];
      }
    }
    BigInt dn = boost::multiprecision::numerator(d);
    if (dn < 0) dn = -dn;
    det = dn;
    adj.assign(r, IntVector(r));
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) {
        Rational v = m[a][r + b] * Rational(det);
        if (boost::multiprecision::denominator(v) != 1) throw std::logic_error("non-integral adjugate");
        adj[a][b] = boost::multiprecision::numerator(v);
      }
  }

  IntVector numerators(std::span<const BigInt> x) const {
    IntVector num(periods.size());
    for (std::size_t a = 0; a < periods.size(); ++a)
      for (std::size_t b = 0; b < rows.size(); ++b) num[a] += adj[a][b] * x[rows[b]];
    return num;
  }

  bool reproduces(std::span<const BigInt> x, const IntVector& num) const {
    for (std::size_t c = 0; c < x.size(); ++c) {
      BigInt s = 0;
      for (std::size_t i = 0; i < periods.size(); ++i) s += num[i] * periods[i][c];
      if (s != det * x[c]) return false;
    }
    return true;
  }

  // x - base is a nonnegative integer combination of the periods.
  bool covers(std::span<const BigInt> base, std::span<const BigInt> x) const {
    IntVector diff(x.size());
    for (std::size_t c = 0; c < x.size(); ++c) diff[c] = x[c] - base[c];
    IntVector num = numerators(diff);
    for (const auto& n : num)
      if (n < 0 || n % det != 0) return false;
    return reproduces(diff, num);
  }
};

IntVector unit(std::size_t k, std::size_t j) {
  IntVector e(k, 0);
  e[j] = 1;
  return e;
}

bool dominates(const IntVector& a, const IntVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < b[i]) return false;
  return true;
}

BigInt dot(const IntVector& a, const IntVector& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; });
}

}  // namespace

DioSystem::DioSystem(std::vector<IntVector> rows) : matrix_(std::move(rows)) {
  if (matrix_.empty() || matrix_.front().empty()) throw std::invalid_argument("system needs a row and a column");
  for (const auto& r : matrix_)
    if (r.size() != matrix_.front().size()) throw std::invalid_argument("system rows differ in width");
}

IntVector DioSystem::image(std::span<const BigInt> z) const {
  if (z.size() != cols()) throw std::invalid_argument("vector length differs from column count");
  IntVector out(rows());
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t c = 0; c < cols(); ++c) out[r] += matrix_[r][c] * z[c];
  return out;
}

bool LinearSet::is_simple() const { return rank_of(periods) == periods.size(); }

bool LinearSet::contains(std::span<const BigInt> z) const {
  if (z.size() != base.size()) throw std::invalid_argument("vector length differs from linear set dimension");
  return Coordinates(periods).covers(base, z);
}

std::string format_vector(std::span<const BigInt> v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

std::string LinearSet::to_string() const {
  std::string out = "base=" + format_vector(base) + " periods=";
  for (std::size_t i = 0; i < periods.size(); ++i) out += (i ? ";" : "") + format_vector(periods[i]);
  return out;
}

bool z_membership(const DioSystem& sys, std::span<const BigInt> z) { return is_zero(sys.image(z)); }

bool z_membership(const DioSystem& sys, std::span<const Exponent> z) {
  IntVector v(z.begin(), z.end());
  return z_membership(sys, v);
}

std::vector<IntVector> hilbert_basis(const DioSystem& sys) {
  // Completion: extend non-solutions by unit vectors that point back towards
  // the kernel, discarding anything above a solution already found.
  const std::size_t k = sys.cols();
  std::vector<IntVector> column_image;
  for (std::size_t j = 0; j < k; ++j) column_image.push_back(sys.image(unit(k, j)));

  std::vector<IntVector> basis;
  std::set<IntVector> frontier;
  for (std::size_t j = 0; j < k; ++j) frontier.insert(unit(k, j));
  constexpr std::size_t kFrontierLimit = 2'000'000;
  for (std::size_t round = 0; !frontier.empty(); ++round) {
    if (round > 100'000) throw std::runtime_error("hilbert_basis: completion exceeded its round bound");
    std::vector<std::pair<IntVector, IntVector>> open;
    for (const auto& x : frontier) {
      IntVector ax = sys.image(x);
      if (is_zero(ax)) {
        basis.push_back(x);
      } else {
        open.emplace_back(x, std::move(ax));
      }
    }
    std::set<IntVector> next;
    for (const auto& [x, ax] : open)
      for (std::size_t j = 0; j < k; ++j) {
        if (dot(ax, column_image[j]) >= 0) continue;
        IntVector y = x;
        y[j] += 1;
        if (std::any_of(basis.begin(), basis.end(), [&](const IntVector& b) { return dominates(y, b); })) continue;
        next.insert(std::move(y));
      }
    if (next.size() > kFrontierLimit) throw std::runtime_error("hilbert_basis: completion frontier too large");
    frontier = std::move(next);
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

std::vector<IntVector> extreme_rays(const DioSystem& sys) {
  std::vector<IntVector> rays;
  for (const auto& h : hilbert_basis(sys)) {
    std::vector<std::size_t> support;
    for (std::size_t c = 0; c < h.size(); ++c)
      if (h[c] != 0) support.push_back(c);
    std::vector<IntVector> columns;
    for (auto c : support) {
      IntVector col(sys.rows());
      for (std::size_t r = 0; r < sys.rows(); ++r) col[r] = sys.at(r, c);
      columns.push_back(std::move(col));
    }
    if (rank_of(columns) + 1 == support.size()) rays.push_back(h);
  }
  return rays;
}

namespace {

using Face = std::vector<std::size_t>;

std::size_t face_rank(const std::vector<IntVector>& rays, const Face& face) {
  std::vector<IntVector> vs;
  for (auto i : face) vs.push_back(rays[i]);
  return rank_of(vs);
}

// Pulling triangulation: cone over the first ray with the triangulated
// facets that miss it.
void triangulate(const std::vector<IntVector>& rays, const Face& face, std::vector<Face>& out) {
  const std::size_t d = face_rank(rays, face);
  if (face.size() == d) {
    out.push_back(face);
    return;
  }
  const std::size_t k = rays.front().size();
  const std::size_t v = face.front();
  std::set<Face> facets;
  for (std::size_t c = 0; c < k; ++c) {
    Face g;
    bool cuts = false;
    for (auto i : face) {
      if (rays[i][c] == 0) {
        g.push_back(i);
      } else {
        cuts = true;
      }
    }
    if (cuts && !g.empty() && face_rank(rays, g) + 1 == d) facets.insert(std::move(g));
  }
  for (const auto& g : facets) {
    if (std::find(g.begin(), g.end(), v) != g.end()) continue;
    std::vector<Face> sub;
    triangulate(rays, g, sub);
    for (auto& s : sub) {
      s.push_back(v);
      std::sort(s.begin(), s.end());
      out.push_back(std::move(s));
    }
  }
}

// Integer points x = sum mu_i u_i with mu_i in [0, 1) on closed facets and
// (0, 1] on open ones.
std::vector<IntVector> parallelepiped_points(const Coordinates& co, const std::vector<bool>& open) {
  const std::size_t r = co.periods.size();
  const std::size_t k = co.periods.front().size();
  std::vector<BigInt> top(r);
  for (std::size_t b = 0; b < r; ++b)
    for (const auto& u : co.periods) top[b] += u[co.rows[b]];
  BigInt volume = 1;
  for (const auto& t : top) volume *= t + 1;
  if (volume > 50'000'000) throw std::runtime_error("simple_decomposition: fundamental parallelepiped too large");

  std::vector<IntVector> out;
  IntVector xi(r, 0);
  IntVector x(k);
  for (;;) {
    IntVector num(r);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) num[a] += co.adj[a][b] * xi[b];
    bool ok = true;
    for (std::size_t a = 0; a < r && ok; ++a)
      ok = open[a] ? (num[a] > 0 && num[a] <= co.det) : (num[a] >= 0 && num[a] < co.det);
    if (ok) {
      for (std::size_t c = 0; c < k && ok; ++c) {
        BigInt s = 0;
        for (std::size_t i = 0; i < r; ++i) s += num[i] * co.periods[i][c];
        ok = s % co.det == 0;
        x[c] = s / co.det;
      }
      if (ok) out.push_back(x);
    }
    std::size_t p = 0;
    while (p < r && xi[p] == top[p]) xi[p++] = 0;
    if (p == r) break;
    ++xi[p];
  }
  return out;
}

}  // namespace

SemilinearDecomposition simple_decomposition(const DioSystem& sys, std::size_t verify_degree) {
  const std::size_t k = sys.cols();
  SemilinearDecomposition dec;
  dec.dimension = k;
  const std::vector<IntVector> rays = extreme_rays(sys);

  std::vector<std::size_t> part_simplex;
  std::vector<Coordinates> solvers;
  if (rays.empty()) {
    dec.parts.push_back({IntVector(k, 0), {}});
    solvers.emplace_back(std::vector<IntVector>{});
    part_simplex.push_back(0);
  } else {
    Face all(rays.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    std::vector<Face> simplices;
    triangulate(rays, all, simplices);
    std::sort(simplices.begin(), simplices.end());
    simplices.erase(std::unique(simplices.begin(), simplices.end()), simplices.end());
    for (const auto& s : simplices) {
      std::vector<IntVector> us;
      for (auto i : s) us.push_back(rays[i]);
      solvers.emplace_back(std::move(us));
    }

    // Generic interior point: a positive combination of all rays lying on no
    // facet hyperplane of any simplex. Facet i of a simplex is open when the
    // point's i-th coordinate is negative.
    std::vector<std::vector<bool>> open;
    for (std::size_t attempt = 0;; ++attempt) {
      if (attempt == 256) throw std::runtime_error("simple_decomposition: no generic interior point found");
      IntVector y(k, 0);
      for (std::size_t i = 0; i < rays.size(); ++i) {
        const std::uint64_t w = 1 + ((i + 1) * (attempt * 7919 + 104729) + attempt * attempt) % (31 + 2 * attempt);
        for (std::size_t c = 0; c < k; ++c) y[c] += BigInt(w) * rays[i][c];
      }
      open.clear();
      bool generic = true;
      for (const auto& co : solvers) {
        IntVector lambda = co.numerators(y);
        std::vector<bool> o;
        for (const auto& l : lambda) {
          if (l == 0) generic = false;
          o.push_back(l < 0);
        }
        open.push_back(std::move(o));
      }
      if (generic) break;
    }

    for (std::size_t s = 0; s < solvers.size(); ++s)
      for (auto& p : parallelepiped_points(solvers[s], open[s])) {
        dec.parts.push_back({std::move(p), solvers[s].periods});
        part_simplex.push_back(s);
      }
  }

  for (const auto& part : dec.parts) {
    if (!z_membership(sys, part.base)) throw std::logic_error("simple_decomposition: base is not a solution");
    for (const auto& u : part.periods)
      if (!z_membership(sys, u)) throw std::logic_error("simple_decomposition: period is not a solution");
  }
  for (const auto& z : enumerate_solutions(sys, verify_degree)) {
    std::size_t hits = 0;
    for (std::size_t p = 0; p < dec.parts.size(); ++p)
      if (solvers[part_simplex[p]].covers(dec.parts[p].base, z)) ++hits;
    if (hits != 1)
      throw std::logic_error("simple_decomposition: solution " + format_vector(z) + " covered " +
                             std::to_string(hits) + " times");
  }
  dec.verified_degree = verify_degree;
  return dec;
}

namespace {

Monomial to_monomial(const IntVector& v) {
  Monomial m;
  for (const auto& x : v) {
    if (x < 0 || x > BigInt(kUnbounded - 1)) throw std::invalid_argument("vector entry out of exponent range");
    m.push_back(static_cast<Exponent>(x));
  }
  return m;
}

}  // namespace

NRationalExpr nrational_of(const SemilinearDecomposition& dec) {
  const std::size_t vars = dec.dimension;
  NRationalExpr total(vars);
  for (const auto& part : dec.parts) {
    if (!part.is_simple()) throw std::invalid_argument("nrational_of: part is not simple");
    NRationalExpr term = NRationalExpr::monomial(to_monomial(part.base));
    for (const auto& u : part.periods)
      term = NRationalExpr::product(term, NRationalExpr::quasi_inverse(NRationalExpr::monomial(to_monomial(u))));
    total = NRationalExpr::sum(total, term);
  }
  return total;
}

std::vector<IntVector> enumerate_solutions(const DioSystem& sys, std::size_t degree_cap) {
  const std::size_t k = sys.cols();
  const std::size_t n = sys.rows();
  std::vector<std::vector<BigInt>> col(k, IntVector(n));
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < n; ++r) col[c][r] = sys.at(r, c);

  std::vector<IntVector> out;
  IntVector z(k, 0);
  IntVector residual(n, 0);
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t c, std::size_t left) {
    if (c == k) {
      if (is_zero(residual)) out.push_back(z);
      return;
    }
    for (std::size_t v = 0;; ++v) {
      go(c + 1, left - v);
      if (v == left) break;
      z[c] += 1;
      for (std::size_t r = 0; r < n; ++r) residual[r] += col[c][r];
    }
    for (std::size_t r = 0; r < n; ++r) residual[r] -= col[c][r] * z[c];
    z[c] = 0;
  };
  go(0, degree_cap);
  return out;
}

}  // namespace cogrowth
