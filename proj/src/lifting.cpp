#include "mfib/lifting.hpp"

#include <map>
#include <mutex>

namespace mfib {

const char* status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::None: return "none";
    case SearchStatus::Exhausted: return "budget_exhausted";
  }
  return "?";
}

CellInclusion CellInclusion::make(const SSet& big, std::vector<char> in_small) {
  if (static_cast<int>(in_small.size()) != big.num_generators())
    throw ValidationError("small-generator mask has the wrong length");
  CellInclusion c;
  c.big = &big;
  for (int g = 0; g < big.num_generators(); ++g) {
    if (in_small[g]) {
      for (auto& f : big.generator(g).faces)
        if (!in_small[f.gen])
          throw ValidationError("small is not a subcomplex: face of '" + big.generator(g).name + "' is a cell");
    } else {
      c.cells.push_back(g);
    }
  }
  c.in_small = std::move(in_small);
  return c;
}

LiftResult solve(const LiftingProblem& pr, long long budget) {
  const SSet& K = *pr.inclusion.big;
  const SSet& X = *pr.X;
  const bool based = pr.p != nullptr;
  if (based && (!pr.B || !pr.base)) throw ValidationError("lifting problem has a fibration but no base map");
  if (X.truncation() < K.truncation()) throw TruncationError("target truncation below the domain truncation");
  const int G = K.num_generators();
  if (static_cast<int>(pr.partial.size()) != G) throw ValidationError("partial map has the wrong length");

  std::vector<int> val(G, -1);
  auto ref_value = [&](const SimplexRef& r) { return X.apply_word(r.word, K.generator(r.gen).dim, val[r.gen]); };
  auto base_of = [&](int g) { return (*pr.base)(K.generator(g).dim, K.generator_simplex(g)); };

  for (int g = 0; g < G; ++g) {
    if (!pr.inclusion.in_small[g]) continue;
    const int n = K.generator(g).dim;
    int v = pr.partial[g];
    if (v < 0 || v >= X.size(n)) throw ValidationError("partial map undefined on '" + K.generator(g).name + "'");
    val[g] = v;
  }
  for (int g = 0; g < G; ++g) {
    if (!pr.inclusion.in_small[g]) continue;
    const int n = K.generator(g).dim;
    for (int i = 0; i < n + (n > 0 ? 1 : 0); ++i)
      if (X.face(n, val[g], i) != ref_value(K.generator(g).faces[i]))
        throw ValidationError("partial map is not simplicial at '" + K.generator(g).name + "'");
    if (based && (*pr.p)(n, val[g]) != base_of(g))
      throw ValidationError("square does not commute at '" + K.generator(g).name + "'");
  }

  // Candidate lists per cell: simplices over the prescribed base simplex.
  const auto& cells = pr.inclusion.cells;
  std::vector<std::vector<int>> cand(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const int n = K.generator(cells[c]).dim;
    int b = based ? base_of(cells[c]) : -1;
    for (int z = 0; z < X.size(n); ++z)
      if (!based || (*pr.p)(n, z) == b) cand[c].push_back(z);
  }

  LiftResult res;
  std::vector<std::size_t> pos(cells.size(), 0);
  std::size_t depth = 0;
  bool exhausted = false;
  while (true) {
    if (depth == cells.size()) {
      res.status = SearchStatus::Found;
      break;
    }
    const int g = cells[depth];
    const int n = K.generator(g).dim;
    const auto& faces = K.generator(g).faces;
    bool placed = false;
    while (pos[depth] < cand[depth].size()) {
      int z = cand[depth][pos[depth]++];
      if (budget > 0 && ++res.nodes > budget) {
        exhausted = true;
        break;
      }
      if (budget <= 0) ++res.nodes;
      bool ok = true;
      for (std::size_t i = 0; i < faces.size() && ok; ++i) ok = X.face(n, z, static_cast<int>(i)) == ref_value(faces[i]);
      if (ok) {
        val[g] = z;
        placed = true;
        break;
      }
    }
    if (exhausted) break;
    if (placed) {
      ++depth;
      continue;
    }
    pos[depth] = 0;
    val[g] = -1;
    if (depth == 0) {
      res.status = SearchStatus::None;
      break;
    }
    --depth;
  }
  if (exhausted) {
    res.status = SearchStatus::Exhausted;
    return res;
  }
  if (res.status == SearchStatus::Found) {
    res.gen_values = val;
    res.map = map_from_generators(K, X, val);
  }
  return res;
}

// ---------------------------------------------------------------------------

int PrismShape::top(int j) const {
  Seq a, u;
  for (int q = 0; q <= n + 1; ++q) {
    a.push_back(q <= j ? q : q - 1);
    u.push_back(q <= j ? 0 : 1);
  }
  return prism.at(n + 1, Pair{simplex.at(n + 1, a), interval.at(n + 1, u)});
}

std::shared_ptr<const PrismShape> prism_shape(int n, int T) {
  if (T < 0) T = n + 1;
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const PrismShape>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, T}];
  if (!slot) {
    auto s = std::make_shared<PrismShape>();
    s->n = n;
    s->T = T;
    s->simplex = standard_simplex_keyed(n, T);
    s->interval = standard_simplex_keyed(1, T);
    s->prism = product_keyed(s->simplex.set, s->interval.set);
    slot = s;
  }
  return slot;
}

namespace {

bool surjective(const Seq& a, int n) {
  std::vector<char> hit(n + 1, 0);
  for (int v : a) hit[v] = 1;
  for (char h : hit)
    if (!h) return false;
  return true;
}

bool constant_at(const Seq& u, int v) {
  for (int w : u)
    if (w != v) return false;
  return true;
}

}  // namespace

Homotopy prism_homotopy(const SSet& X, int n, int x, int y, const SSet* B, const SMap* p, bool rel_boundary,
                        bool fibrewise, long long budget, int T) {
  if (T < 0) T = n + 1;
  if (n + 1 > X.truncation()) throw TruncationError("prism needs dimension n+1 within truncation");
  if (T > X.truncation()) throw TruncationError("prism truncation above target truncation");
  if (x < 0 || y < 0 || x >= X.size(n) || y >= X.size(n)) throw ValidationError("prism endpoints are not n-simplices");
  if (rel_boundary && n > 0)
    for (int i = 0; i <= n; ++i)
      if (X.face(n, x, i) != X.face(n, y, i)) throw ValidationError("endpoints have different boundaries");
  if (fibrewise) {
    if (!B || !p) throw ValidationError("fibrewise homotopy needs a fibration");
    if ((*p)(n, x) != (*p)(n, y)) throw ValidationError("endpoints lie over different base simplices");
  }
  auto shape = prism_shape(n, T);
  const SSet& P = shape->prism.set;
  Homotopy h;
  h.n = n;
  h.shape = shape;

  std::vector<int> small_val(P.num_generators(), -1);
  std::vector<char> in_small(P.num_generators(), 0);
  std::vector<int> base_val(P.num_generators(), -1);
  for (int g = 0; g < P.num_generators(); ++g) {
    const int m = P.generator(g).dim;
    const int idx = P.generator_simplex(g);
    Seq a = shape->seq_a(m, idx), u = shape->seq_u(m, idx);
    if (constant_at(u, 0)) {
      in_small[g] = 1;
      small_val[g] = X.apply_monotone(a, n, x);
    } else if (constant_at(u, 1)) {
      in_small[g] = 1;
      small_val[g] = X.apply_monotone(a, n, y);
    } else if (rel_boundary && !surjective(a, n)) {
      in_small[g] = 1;
      small_val[g] = X.apply_monotone(a, n, x);
    }
    if (x == y) {
      in_small[g] = 1;
      small_val[g] = X.apply_monotone(a, n, x);
    }
    if (fibrewise) base_val[g] = B->apply_monotone(a, n, (*p)(n, x));
  }

  if (x == y) {
    h.status = SearchStatus::Found;
    h.map = map_from_generators(P, X, small_val);
  } else {
    LiftingProblem pr;
    pr.inclusion = CellInclusion::make(P, in_small);
    pr.X = &X;
    pr.partial = small_val;
    SMap base;
    if (fibrewise) {
      base = map_from_generators(P, *B, base_val);
      pr.B = B;
      pr.p = p;
      pr.base = &base;
    }
    LiftResult r = solve(pr, budget);
    h.status = r.status;
    h.nodes = r.nodes;
    if (r.status != SearchStatus::Found) return h;
    h.map = std::move(r.map);
  }
  for (int j = 0; j <= n; ++j) h.top.push_back(h.map(n + 1, shape->top(j)));
  return h;
}

bool homotopy_valid(const SSet& X, int x, int y, const SSet* B, const SMap* p, bool rel_boundary, bool fibrewise,
                    const Homotopy& h) {
  if (h.status != SearchStatus::Found || !h.shape) return false;
  const PrismShape& s = *h.shape;
  const SSet& P = s.prism.set;
  if (map_defect(P, X, h.map)) return false;
  const int n = s.n;
  for (int m = 0; m <= s.T; ++m)
    for (int idx = 0; idx < P.size(m); ++idx) {
      Seq a = s.seq_a(m, idx), u = s.seq_u(m, idx);
      int v = h.map(m, idx);
      if (constant_at(u, 0) && v != X.apply_monotone(a, n, x)) return false;
      if (constant_at(u, 1) && v != X.apply_monotone(a, n, y)) return false;
      if (rel_boundary && !surjective(a, n) && v != X.apply_monotone(a, n, x)) return false;
      if (fibrewise && (*p)(m, v) != B->apply_monotone(a, n, (*p)(n, x))) return false;
    }
  return true;
}

}  // namespace mfib
