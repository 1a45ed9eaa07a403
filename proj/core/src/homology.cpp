#include "superperiods/homology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <queue>
#include <tuple>

namespace superperiods {

using cd = std::complex<double>;

std::vector<int> SpanningTree::path_to(int k) const {
  std::vector<int> path;
  while (parent[k] >= 0) {
    path.push_back(parent_edge[k]);
    k = parent[k];
  }
  std::reverse(path.begin(), path.end());
  return path;
}

namespace {

bool on_segment(cd u) { return std::fabs(u.imag()) <= 1e-12 * (1 + std::abs(u)) && std::fabs(u.real()) <= 1 + 1e-12; }

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[b] = a;
    return true;
  }
};

std::vector<cd> midpoints(const Curve& c) {
  std::vector<cd> x;
  for (auto& z : c.branch_points()) x.push_back(z.to_cdouble());
  return x;
}

}  // namespace

EdgeCapacity edge_capacity(int m, const std::vector<cd>& x, int a, int b, double lambda) {
  EdgeCapacity out;
  out.value = std::numeric_limits<double>::infinity();
  out.usable = true;
  cd xa = x[a], xb = x[b];
  for (int k = 0; k < static_cast<int>(x.size()); ++k) {
    if (k == a || k == b) continue;
    cd u = (2.0 * x[k] - xa - xb) / (xb - xa);
    if (on_segment(u)) out.usable = false;
    double r;
    if (m == 2) {
      r = (std::abs(x[k] - xa) + std::abs(x[k] - xb)) / std::abs(xb - xa);
    } else {
      r = std::fabs(std::asinh(std::atanh(u) / lambda).imag());
    }
    out.value = std::min(out.value, r);
  }
  if (!out.usable && m != 2) out.value = 0;
  return out;
}

EdgeCapacity edge_capacity(const Curve& c, int a, int b, double lambda) {
  return edge_capacity(c.m(), midpoints(c), a, b, lambda);
}

SpanningTree spanning_tree(int m, const std::vector<cd>& x, double lambda, TreeStrategy strategy) {
  int n = static_cast<int>(x.size());
  if (n < 2) throw InputError("need at least two branch points");
  struct Cand {
    int a, b;
    double cap, key;
  };
  std::vector<Cand> cands;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      EdgeCapacity ec = edge_capacity(m, x, a, b, lambda);
      if (!ec.usable) continue;
      double key = strategy == TreeStrategy::Capacity ? -ec.value : std::abs(x[b] - x[a]);
      cands.push_back({a, b, ec.value, key});
    }
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& p, const Cand& q) {
    if (p.key != q.key) return p.key < q.key;
    return std::tie(p.a, p.b) < std::tie(q.a, q.b);
  });
  Dsu dsu(n);
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  int used = 0;
  int root = cands.empty() ? 0 : cands.front().a;
  for (auto& c : cands) {
    if (!dsu.unite(c.a, c.b)) continue;
    adj[c.a].push_back({c.b, c.cap});
    adj[c.b].push_back({c.a, c.cap});
    ++used;
  }
  if (used != n - 1) throw DomainError("degenerate configuration");
  SpanningTree t;
  t.root = root;
  t.parent.assign(n, -1);
  t.parent_edge.assign(n, -1);
  std::vector<bool> seen(n, false);
  std::queue<int> q;
  q.push(root);
  seen[root] = true;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    auto nb = adj[v];
    std::sort(nb.begin(), nb.end());
    for (auto& [w, cap] : nb) {
      if (seen[w]) continue;
      seen[w] = true;
      t.parent[w] = v;
      t.parent_edge[w] = static_cast<int>(t.edges.size());
      t.edges.push_back({v, w, cap});
      q.push(w);
    }
  }
  return t;
}

SpanningTree spanning_tree(const Curve& c, double lambda, TreeStrategy strategy) {
  return spanning_tree(c.m(), midpoints(c), lambda, strategy);
}

std::vector<CycleIndex> cycle_indices(int m, const SpanningTree& tree) {
  std::vector<CycleIndex> out;
  for (int e = 0; e < static_cast<int>(tree.edges.size()); ++e)
    for (int l = 0; l < m - 1; ++l) out.push_back({e, l});
  return out;
}

ShiftValue intersection_shift(int m, const EdgeFrame& ab, const EdgeFrame& cd_, bool b_eq_c) {
  long prec = ab.a.prec();
  // The shared point is b (u_ab = 1) in case b = c, else a (u_ab = -1); in
  // both cases it is c for the second edge (u_cd = -1).
  Complex u1 = Complex::from_int(b_eq_c ? 1 : -1, prec);
  Complex um1 = Complex::from_int(-1, prec);
  Complex num = cd_.cab * ytab_eval(cd_, um1);
  Complex den = ab.cab * ytab_eval(ab, u1);
  double phase = std::arg((num / den).to_cdouble());
  double rho = std::arg(((ab.b - ab.a) / (cd_.b - cd_.a)).to_cdouble()) + (b_eq_c ? M_PI : 0.0);
  ShiftValue s;
  s.rho = rho;
  s.raw = (rho + m * phase) / (2 * M_PI);
  s.value = std::lround(s.raw);
  if (std::fabs(s.raw - static_cast<double>(s.value)) > 1e-6) throw InternalError("intersection inconsistency");
  return s;
}

namespace {

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

// Block of intersections (gamma_e^(k) o gamma_f^(l)) given s_+ and s_-.
void fill_block(IntMatrix& k, int m, int e, int f, long sp, long sm) {
  for (int a = 0; a < m - 1; ++a)
    for (int b = 0; b < m - 1; ++b) {
      long d = mod(b - a, m);
      int v = 0;
      if (d == mod(sp, m)) v = 1;
      else if (d == mod(sm, m)) v = -1;
      k(e * (m - 1) + a, f * (m - 1) + b) = v;
      k(f * (m - 1) + b, e * (m - 1) + a) = -v;
    }
}

}  // namespace

IntMatrix intersection_matrix(const Curve& c, const SpanningTree& tree, const std::vector<EdgeFrame>& frames) {
  int m = c.m();
  int ne = static_cast<int>(tree.edges.size());
  IntMatrix k(ne * (m - 1), ne * (m - 1), 0);
  for (int e = 0; e < ne; ++e) {
    fill_block(k, m, e, e, 1, -1);
    for (int f = e + 1; f < ne; ++f) {
      const TreeEdge& E = tree.edges[e];
      const TreeEdge& F = tree.edges[f];
      if (E.b == F.a) {
        long s = intersection_shift(m, frames[e], frames[f], true).value;
        fill_block(k, m, e, f, -s, 1 - s);
      } else if (F.b == E.a) {
        long s = intersection_shift(m, frames[f], frames[e], true).value;
        fill_block(k, m, f, e, -s, 1 - s);
      } else if (E.a == F.a) {
        ShiftValue s = intersection_shift(m, frames[e], frames[f], false);
        if (s.rho > 0)
          fill_block(k, m, e, f, 1 - s.value, -s.value);
        else
          fill_block(k, m, e, f, -s.value, -1 - s.value);
      } else if (E.b == F.b) {
        throw InternalError("tree edges share a head");
      }
    }
  }
  return k;
}

IntMatrix standard_symplectic(int genus, int zero_block) {
  int n = 2 * genus + zero_block;
  IntMatrix j(n, n, 0);
  for (int i = 0; i < genus; ++i) {
    j(i, genus + i) = 1;
    j(genus + i, i) = -1;
  }
  return j;
}

namespace {

int64_t checked_add_mul(int64_t a, int64_t c, int64_t b) {
  __int128 r = static_cast<__int128>(a) + static_cast<__int128>(c) * b;
  if (r > std::numeric_limits<int64_t>::max() || r < std::numeric_limits<int64_t>::min())
    throw InternalError("integer overflow in symplectic reduction");
  return static_cast<int64_t>(r);
}

// Basis C (columns) with Gram matrix G = C^T K C kept in sync.
struct Reducer {
  IntMatrix c, g;
  std::size_t n;

  explicit Reducer(const IntMatrix& k) : c(int_identity(k.rows())), g(k), n(k.rows()) {}

  // column w += t * column v
  void add(std::size_t w, std::size_t v, int64_t t) {
    if (t == 0) return;
    for (std::size_t i = 0; i < n; ++i) c(i, w) = checked_add_mul(c(i, w), t, c(i, v));
    for (std::size_t i = 0; i < n; ++i) g(w, i) = checked_add_mul(g(w, i), t, g(v, i));
    for (std::size_t i = 0; i < n; ++i) g(i, w) = checked_add_mul(g(i, w), t, g(i, v));
  }
};

int64_t round_div(int64_t x, int64_t d) {
  // nearest integer to x / d for d > 0
  int64_t q = x / d, r = x % d;
  if (2 * std::llabs(r) > d) q += (r > 0) ? 1 : -1;
  return q;
}

}  // namespace

SymplecticChange symplectic_reduce(const IntMatrix& k) {
  std::size_t n = k.rows();
  if (k.cols() != n) throw InputError("intersection matrix must be square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (k(i, j) != -k(j, i)) throw InputError("intersection matrix is not skew-symmetric");

  Reducer red(k);
  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), 0);
  std::vector<std::size_t> alphas, betas;

  while (true) {
    // smallest nonzero |G| among active pairs, preferring the first +-1
    std::size_t pe = 0, pf = 0;
    int64_t best = 0;
    for (std::size_t x = 0; x < active.size() && best != 1; ++x)
      for (std::size_t y = x + 1; y < active.size(); ++y) {
        int64_t v = std::llabs(red.g(active[x], active[y]));
        if (v != 0 && (best == 0 || v < best)) {
          best = v;
          pe = x;
          pf = y;
          if (v == 1) break;
        }
      }
    if (best == 0) break;
    std::size_t e = active[pe], f = active[pf];
    if (red.g(e, f) < 0) std::swap(e, f);
    int64_t d = red.g(e, f);
    if (d == 1) {
      for (std::size_t w : active) {
        if (w == e || w == f) continue;
        int64_t x = red.g(w, f), y = red.g(w, e);
        red.add(w, e, -x);
        red.add(w, f, y);
      }
      alphas.push_back(e);
      betas.push_back(f);
      active.erase(std::remove_if(active.begin(), active.end(), [&](std::size_t w) { return w == e || w == f; }),
                   active.end());
      continue;
    }
    // Euclid-style step: shrink every entry against the pair (e, f).
    bool changed = false;
    for (std::size_t w : active) {
      if (w == e || w == f) continue;
      int64_t x = red.g(w, f), y = red.g(w, e);
      int64_t q1 = round_div(x, d), q2 = round_div(y, d);
      red.add(w, e, -q1);
      red.add(w, f, q2);
      changed = changed || red.g(w, f) != 0 || red.g(w, e) != 0;
    }
    if (!changed) throw DomainError("non-principal polarization");
  }

  SymplecticChange out;
  out.genus = static_cast<int>(alphas.size());
  out.zero_block = static_cast<int>(active.size());
  std::vector<std::size_t> order = alphas;
  order.insert(order.end(), betas.begin(), betas.end());
  order.insert(order.end(), active.begin(), active.end());
  out.S = IntMatrix(n, n, 0);
  for (std::size_t col = 0; col < n; ++col)
    for (std::size_t i = 0; i < n; ++i) out.S(i, col) = red.c(i, order[col]);

  IntMatrix check = int_multiply(int_multiply(int_transpose(out.S), k), out.S);
  IntMatrix want = standard_symplectic(out.genus, out.zero_block);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (check(i, j) != want(i, j)) throw InternalError("symplectic reduction failed verification");
  return out;
}

}  // namespace superperiods
