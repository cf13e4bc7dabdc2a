#include "mfib/bundles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <utility>

namespace mfib {

namespace {

std::string flat(std::string s) {
  std::replace(s.begin(), s.end(), ' ', '.');
  return s;
}

Seq compose_seq(const Seq& outer, const Seq& inner) {
  Seq r(inner.size());
  for (std::size_t k = 0; k < inner.size(); ++k) r[k] = outer[inner[k]];
  return r;
}

// d^i o a: skip value i.
Seq coface_after(int i, const Seq& a) {
  Seq r = a;
  for (int& v : r)
    if (v >= i) ++v;
  return r;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

std::vector<int> class_labels(UnionFind& uf, int n, int& count) {
  std::vector<int> label(n, -1), out(n);
  count = 0;
  for (int i = 0; i < n; ++i) {
    int r = uf.find(i);
    if (label[r] < 0) label[r] = count++;
    out[i] = label[r];
  }
  return out;
}

// Values[n][v], -1 while unassigned.
using Values = std::vector<std::vector<int>>;

// Backtracking over simplices of B in dimensions lo..hi, canonical order.
// Degenerate simplices get forced values; ok() checks the constraints whose
// top simplex is v.
struct DimSearch {
  const SSet* B = nullptr;
  int lo = 0, hi = 0;
  std::function<int(int)> choices;
  std::function<int(int, int, const Values&)> forced;
  std::function<bool(int, int, const Values&)> ok;
  long long budget = 0;
  std::size_t max_results = 1;

  SearchStatus status = SearchStatus::None;
  std::vector<Values> results;
  long long nodes = 0;

  void run() {
    Values vals(hi + 1);
    for (int n = lo; n <= hi; ++n) vals[n].assign(B->size(n), -1);
    std::vector<Pair> slots;
    for (int n = lo; n <= hi; ++n)
      for (int v = 0; v < B->size(n); ++v) slots.push_back({n, v});
    bool stop = false;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (stop) return;
      if (k == slots.size()) {
        results.push_back(vals);
        if (max_results && results.size() >= max_results) stop = true;
        return;
      }
      auto [n, v] = slots[k];
      if (B->degenerate(n, v)) {
        int f = forced(n, v, vals);
        if (f < 0) return;
        vals[n][v] = f;
        if (ok(n, v, vals)) rec(k + 1);
        vals[n][v] = -1;
        return;
      }
      for (int g = 0; g < choices(n) && !stop; ++g) {
        if (budget > 0 && nodes >= budget) {
          stop = true;
          status = SearchStatus::Exhausted;
          return;
        }
        ++nodes;
        vals[n][v] = g;
        if (ok(n, v, vals)) rec(k + 1);
      }
      vals[n][v] = -1;
    };
    rec(0);
    const bool full = max_results && results.size() >= max_results;
    if (status != SearchStatus::Exhausted || full) status = results.empty() ? SearchStatus::None : SearchStatus::Found;
  }
};

// Outermost degeneracy of a degenerate simplex: v = s_j w.
std::pair<int, int> outer_degeneracy(const SSet& B, int n, int v) {
  const SimplexRef& r = B.ref(n, v);
  int j = r.word.front();
  return {j, B.face(n, v, j)};
}

// Local twisting identities with v on top.
std::optional<std::string> twisting_local(const SSet& B, const SimplicialGroup& G, const Values& t, int n, int v) {
  int tv = t[n][v];
  if (tv < 0 || tv >= G.level(n - 1).order()) return "value out of range";
  for (int i = 0; i < n; ++i) {
    int w = B.face(n, v, i);
    if (B.degen(n - 1, w, i) != v) continue;
    if (i == 0) {
      if (tv != G.unit(n - 1)) return "t(s_0 w) = e";
    } else if (tv != G.degen(n - 2, t[n - 1][w], i - 1)) {
      return "t(s_i w) = s_{i-1} t(w)";
    }
  }
  if (n >= 2) {
    for (int i = 1; i <= n - 1; ++i)
      if (G.face(n - 1, tv, i) != t[n - 1][B.face(n, v, i + 1)]) return "d_i t(v) = t(d_{i+1} v)";
    int a = t[n - 1][B.face(n, v, 0)], b = t[n - 1][B.face(n, v, 1)];
    if (G.face(n - 1, tv, 0) != G.mul(n - 2, G.inv(n - 2, a), b)) return "d_0 t(v) = t(d_0 v)^{-1} t(d_1 v)";
  }
  return std::nullopt;
}

int twisting_forced(const SSet& B, const SimplicialGroup& G, const Values& t, int n, int v) {
  auto [j, w] = outer_degeneracy(B, n, v);
  if (j == 0) return G.unit(n - 1);
  return G.degen(n - 2, t[n - 1][w], j - 1);
}

int gamma_forced(const SSet& B, const SimplicialGroup& G, const Values& g, int n, int v) {
  auto [j, w] = outer_degeneracy(B, n, v);
  return G.degen(n - 1, g[n - 1][w], j);
}

bool gamma_degeneracies_ok(const SSet& B, const SimplicialGroup& G, const Values& g, int n, int v) {
  for (int i = 0; i < n; ++i) {
    int w = B.face(n, v, i);
    if (B.degen(n - 1, w, i) == v && g[n][v] != G.degen(n - 1, g[n - 1][w], i)) return false;
  }
  return true;
}

bool equivalence_local(const SSet& B, const SimplicialGroup& G, const Values& t, const Values& t2, const Values& g,
                       int n, int v) {
  if (n == 0) return true;
  if (!gamma_degeneracies_ok(B, G, g, n, v)) return false;
  int gv = g[n][v];
  for (int i = 1; i <= n; ++i)
    if (G.face(n, gv, i) != g[n - 1][B.face(n, v, i)]) return false;
  int lhs = G.mul(n - 1, t2[n][v], G.face(n, gv, 0));
  int rhs = G.mul(n - 1, g[n - 1][B.face(n, v, 0)], t[n][v]);
  return lhs == rhs;
}

SSet truncated_base(const SSet& B, int d) {
  if (B.truncation() < d) throw TruncationError("base truncation below requested dimension");
  return truncate_set(B, d);
}

int action_dim(const GroupAction& A) { return static_cast<int>(A.table[0].size()) - 1; }

}  // namespace

SSet truncate_set(const SSet& X, int d) {
  if (d >= X.truncation()) return X;
  std::vector<Generator> gens;
  for (const Generator& g : X.generators())
    if (g.dim <= d) gens.push_back(g);
  return SSet::from_presentation(d, std::move(gens));
}

// ---------------------------------------------------------------- groups

void SimplicialGroup::finish() {
  const int N = truncation();
  std::vector<std::vector<int>> levels(N + 1);
  for (int n = 0; n <= N; ++n) {
    levels[n].resize(levels_[n].order());
    std::iota(levels[n].begin(), levels[n].end(), 0);
  }
  auto built = build_keyed<int>(
      N, levels, [&](int n, int g, int i) { return face(n, g, i); },
      [&](int n, int g, int i) { return degen(n, g, i); }, [&](int n, int g) { return flat(levels_[n].names[g]); });
  under_ = std::make_shared<const Keyed<int>>(std::move(built));
}

SimplicialGroup SimplicialGroup::constant(const FiniteGroup& G, int N) {
  SimplicialGroup S;
  S.constant_ = true;
  S.levels_.assign(N + 1, G);
  S.face_.resize(N + 1);
  S.degen_.resize(N + 1);
  for (int n = 0; n <= N; ++n)
    for (int g = 0; g < G.order(); ++g)
      for (int i = 0; i <= n; ++i) {
        if (n > 0) S.face_[n].push_back(g);
        if (n < N) S.degen_[n].push_back(g);
      }
  S.finish();
  return S;
}

SimplicialGroup SimplicialGroup::from_tables(std::vector<FiniteGroup> levels, std::vector<std::vector<int>> face,
                                             std::vector<std::vector<int>> degen) {
  SimplicialGroup S;
  const int N = static_cast<int>(levels.size()) - 1;
  if (N < 0) throw ValidationError("simplicial group needs at least one level");
  face.resize(N + 1);
  degen.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    const std::size_t k = static_cast<std::size_t>(levels[n].order()) * (n + 1);
    if (n > 0 && face[n].size() != k) throw ValidationError("face table of level " + std::to_string(n) + " has wrong size");
    if (n < N && degen[n].size() != k) throw ValidationError("degeneracy table of level " + std::to_string(n) + " has wrong size");
    for (int x : face[n])
      if (n > 0 && (x < 0 || x >= levels[n - 1].order())) throw ValidationError("face value out of range");
    for (int x : degen[n])
      if (n < N && (x < 0 || x >= levels[n + 1].order())) throw ValidationError("degeneracy value out of range");
  }
  S.levels_ = std::move(levels);
  S.face_ = std::move(face);
  S.degen_ = std::move(degen);
  for (int n = 0; n <= N; ++n) {
    const FiniteGroup& G = S.levels_[n];
    for (int a = 0; a < G.order(); ++a)
      for (int b = 0; b < G.order(); ++b)
        for (int i = 0; i <= n; ++i) {
          if (n > 0 && S.face(n, G.mul(a, b), i) != S.mul(n - 1, S.face(n, a, i), S.face(n, b, i)))
            throw ValidationError("d_" + std::to_string(i) + " on level " + std::to_string(n) + " is not a homomorphism");
          if (n < N && S.degen(n, G.mul(a, b), i) != S.mul(n + 1, S.degen(n, a, i), S.degen(n, b, i)))
            throw ValidationError("s_" + std::to_string(i) + " on level " + std::to_string(n) + " is not a homomorphism");
        }
  }
  S.finish();  // build_keyed checks the simplicial identities
  S.constant_ = false;
  return S;
}

int SimplicialGroup::apply_monotone(const Seq& a, int n, int g) const {
  if (constant_) return g;
  const Keyed<int>& U = *under_;
  int m = static_cast<int>(a.size()) - 1;
  return U.key[m][U.set.apply_monotone(a, n, U.at(n, g))];
}

// ---------------------------------------------------------------- actions

std::optional<std::string> GroupAction::defect() const {
  if (!group) return "action has no group";
  const SimplicialGroup& G = *group;
  const FiniteCategory& C = *space.cat;
  if (static_cast<int>(table.size()) != C.num_objects()) return "action table has wrong object count";
  const int D = action_dim(*this);
  if (D > G.truncation()) return "action exceeds group truncation";
  for (int c = 0; c < C.num_objects(); ++c) {
    const SSet& F = space[c];
    if (static_cast<int>(table[c].size()) != D + 1) return "action table has wrong level count";
    for (int n = 0; n <= D; ++n) {
      const int sz = F.size(n), ord = G.level(n).order();
      if (static_cast<int>(table[c][n].size()) != sz * ord) return "action table has wrong size";
      for (int x = 0; x < sz; ++x) {
        if (act(c, n, G.unit(n), x) != x) return "unit does not act trivially";
        for (int g = 0; g < ord; ++g) {
          int y = act(c, n, g, x);
          if (y < 0 || y >= sz) return "action value out of range";
          for (int h = 0; h < ord; ++h)
            if (act(c, n, G.mul(n, g, h), x) != act(c, n, g, act(c, n, h, x))) return "(gh)x != g(hx)";
          for (int i = 0; n > 0 && i <= n; ++i)
            if (F.face(n, y, i) != act(c, n - 1, G.face(n, g, i), F.face(n, x, i)))
              return "action does not commute with d_" + std::to_string(i);
          for (int i = 0; n < D && i <= n; ++i)
            if (F.degen(n, y, i) != act(c, n + 1, G.degen(n, g, i), F.degen(n, x, i)))
              return "action does not commute with s_" + std::to_string(i);
        }
      }
    }
  }
  for (int f = 0; f < C.num_morphisms(); ++f) {
    const Morphism& m = C.morphism(f);
    for (int n = 0; n <= D; ++n)
      for (int x = 0; x < space[m.src].size(n); ++x)
        for (int g = 0; g < G.level(n).order(); ++g)
          if (space.act[f](n, act(m.src, n, g, x)) != act(m.dst, n, g, space.act[f](n, x)))
            return "action is not natural along " + m.name;
  }
  return std::nullopt;
}

void GroupAction::validate() const {
  if (auto d = defect()) throw ValidationError(*d);
}

GroupAction GroupAction::from_generators(std::shared_ptr<const SimplicialGroup> G, CDiagram F,
                                         const std::vector<std::vector<std::vector<int>>>& images) {
  if (!G->is_constant()) throw ValidationError("generator images need a constant group");
  const int ord = G->level(0).order();
  if (static_cast<int>(images.size()) != ord) throw ValidationError("need images for every group element");
  GroupAction A;
  A.group = G;
  A.space = std::move(F);
  const int C = A.space.cat->num_objects();
  const int D = std::min(A.space.truncation(), G->truncation());
  A.table.assign(C, std::vector<std::vector<int>>(D + 1));
  for (int c = 0; c < C; ++c) {
    const SSet& X = A.space[c];
    for (int g = 0; g < ord; ++g) {
      if (static_cast<int>(images[g].size()) != C) throw ValidationError("images need one list per object");
      SMap m = map_from_generators(X, X, images[g][c]);
      if (auto d = map_defect(X, X, m)) throw ValidationError("generator images are not simplicial: " + *d);
      for (int n = 0; n <= D; ++n)
        for (int x = 0; x < X.size(n); ++x) A.table[c][n].push_back(0);
      for (int n = 0; n <= D; ++n)
        for (int x = 0; x < X.size(n); ++x) A.table[c][n][static_cast<std::size_t>(g) * X.size(n) + x] = m(n, x);
    }
  }
  A.validate();
  return A;
}

GroupAction GroupAction::trivial(std::shared_ptr<const SimplicialGroup> G, CDiagram F) {
  GroupAction A;
  A.group = G;
  A.space = std::move(F);
  const int D = std::min(A.space.truncation(), G->truncation());
  A.table.assign(A.space.cat->num_objects(), std::vector<std::vector<int>>(D + 1));
  for (int c = 0; c < A.space.cat->num_objects(); ++c)
    for (int n = 0; n <= D; ++n)
      for (int g = 0; g < G->level(n).order(); ++g)
        for (int x = 0; x < A.space[c].size(n); ++x) A.table[c][n].push_back(x);
  return A;
}

GroupAction GroupAction::left_translation(std::shared_ptr<const SimplicialGroup> G) {
  GroupAction A;
  A.group = G;
  auto cat = std::make_shared<const FiniteCategory>(FiniteCategory::trivial());
  const Keyed<int>& U = G->underlying();
  A.space = CDiagram::constant_diagram(cat, std::make_shared<const SSet>(U.set));
  const int D = G->truncation();
  A.table.assign(1, std::vector<std::vector<int>>(D + 1));
  for (int n = 0; n <= D; ++n)
    for (int g = 0; g < G->level(n).order(); ++g)
      for (int x = 0; x < U.set.size(n); ++x) A.table[0][n].push_back(U.at(n, G->mul(n, g, U.key[n][x])));
  return A;
}

// ---------------------------------------------------------------- twisting

std::optional<TwistingDefect> twisting_defect(const SSet& B, const SimplicialGroup& G, const TwistingFunction& t) {
  const int d = t.dim();
  if (d > B.truncation()) return TwistingDefect{"twisting exceeds base truncation", d, 0};
  if (d - 1 > G.truncation()) return TwistingDefect{"twisting exceeds group truncation", d, 0};
  for (int n = 1; n <= d; ++n)
    if (static_cast<int>(t.value[n].size()) != B.size(n)) return TwistingDefect{"wrong number of values", n, 0};
  for (int n = 1; n <= d; ++n)
    for (int v = 0; v < B.size(n); ++v)
      if (auto e = twisting_local(B, G, t.value, n, v)) return TwistingDefect{*e, n, v};
  return std::nullopt;
}

TwistingFunction unit_twisting(const SSet& B, const SimplicialGroup& G, int d) {
  TwistingFunction t;
  t.value.resize(d + 1);
  for (int n = 1; n <= d; ++n) t.value[n].assign(B.size(n), G.unit(n - 1));
  return t;
}

TwistingFunction twisting_from_generators(const SSet& B, const SimplicialGroup& G, int d,
                                          const std::vector<int>& gen_values) {
  if (static_cast<int>(gen_values.size()) != B.num_generators())
    throw ValidationError("need one value per generator");
  TwistingFunction t;
  t.value.resize(d + 1);
  for (int n = 1; n <= d; ++n) {
    t.value[n].assign(B.size(n), -1);
    for (int v = 0; v < B.size(n); ++v)
      t.value[n][v] = B.degenerate(n, v) ? twisting_forced(B, G, t.value, n, v) : gen_values[B.ref(n, v).gen];
  }
  if (auto e = twisting_defect(B, G, t))
    throw ValidationError("not a twisting function: " + e->identity + " at " + B.simplex_string(e->n, e->v));
  return t;
}

TwistingSearch enumerate_twistings(const SSet& B, const SimplicialGroup& G, int d, long long budget) {
  if (d > B.truncation() || d - 1 > G.truncation()) throw TruncationError("twisting dimension exceeds truncation");
  DimSearch s;
  s.B = &B;
  s.lo = 1;
  s.hi = d;
  s.choices = [&](int n) { return G.level(n - 1).order(); };
  s.forced = [&](int n, int v, const Values& t) { return twisting_forced(B, G, t, n, v); };
  s.ok = [&](int n, int v, const Values& t) { return !twisting_local(B, G, t, n, v); };
  s.budget = budget;
  s.max_results = 0;
  s.run();
  TwistingSearch out;
  out.status = s.status;
  out.nodes = s.nodes;
  for (auto& v : s.results) out.found.push_back(TwistingFunction{v});
  return out;
}

EquivalenceSearch twisting_equivalent(const SSet& B, const SimplicialGroup& G, const TwistingFunction& t,
                                      const TwistingFunction& t2, long long budget) {
  const int d = std::min(t.dim(), t2.dim());
  if (d > G.truncation()) throw TruncationError("gamma needs the group up to the twisting dimension");
  DimSearch s;
  s.B = &B;
  s.lo = 0;
  s.hi = d;
  s.choices = [&](int n) { return G.level(n).order(); };
  s.forced = [&](int n, int v, const Values& g) { return gamma_forced(B, G, g, n, v); };
  s.ok = [&](int n, int v, const Values& g) { return equivalence_local(B, G, t.value, t2.value, g, n, v); };
  s.budget = budget;
  s.max_results = 1;
  s.run();
  EquivalenceSearch out;
  out.status = s.status;
  out.nodes = s.nodes;
  if (!s.results.empty()) out.gamma = s.results.front();
  return out;
}

std::optional<std::string> gamma_defect(const SSet& B, const SimplicialGroup& G, const TwistingFunction& t,
                                        const TwistingFunction& t2, const GammaFunction& gamma) {
  const int d = std::min(t.dim(), t2.dim());
  if (static_cast<int>(gamma.size()) < d + 1) return "gamma too short";
  for (int n = 0; n <= d; ++n)
    for (int v = 0; v < B.size(n); ++v)
      if (!equivalence_local(B, G, t.value, t2.value, gamma, n, v))
        return "gamma fails at " + B.simplex_string(n, v);
  return std::nullopt;
}

// ---------------------------------------------------------------- TCP

Tcp build_tcp(const SSet& B0, const TwistingFunction& t, const GroupAction& action) {
  const SimplicialGroup& G = *action.group;
  const int d = std::min({B0.truncation(), t.dim(), action_dim(action)});
  if (d < 0) throw TruncationError("empty truncation");
  if (auto e = twisting_defect(B0, G, t)) throw ValidationError("not a twisting function: " + e->identity);
  auto B = std::make_shared<const SSet>(truncated_base(B0, d));
  const FiniteCategory& C = *action.space.cat;
  Tcp out;
  out.bundle.total.cat = action.space.cat;
  out.bundle.base = CDiagram::constant_diagram(action.space.cat, B);
  for (int c = 0; c < C.num_objects(); ++c) {
    SSet F = truncate_set(action.space[c], d);
    std::vector<std::vector<Pair>> levels(d + 1);
    for (int n = 0; n <= d; ++n)
      for (int b = 0; b < B->size(n); ++b)
        for (int x = 0; x < F.size(n); ++x) levels[n].push_back({b, x});
    auto K = build_keyed<Pair>(
        d, levels,
        [&](int n, const Pair& p, int i) {
          if (i == 0) return Pair{B->face(n, p.first, 0), action.act(c, n - 1, t.value[n][p.first], F.face(n, p.second, 0))};
          return Pair{B->face(n, p.first, i), F.face(n, p.second, i)};
        },
        [&](int n, const Pair& p, int i) { return Pair{B->degen(n, p.first, i), F.degen(n, p.second, i)}; },
        [&](int n, const Pair& p) {
          return "(" + flat(B->simplex_string(n, p.first)) + "," + flat(F.simplex_string(n, p.second)) + ")";
        });
    SMap proj;
    proj.level.resize(d + 1);
    for (int n = 0; n <= d; ++n)
      for (int x = 0; x < K.set.size(n); ++x) proj.level[n].push_back(K.key[n][x].first);
    out.bundle.total.at.push_back(std::make_shared<const SSet>(K.set));
    out.bundle.p.comp.push_back(std::move(proj));
    out.keys.push_back(std::move(K));
  }
  for (int f = 0; f < C.num_morphisms(); ++f) {
    const Morphism& m = C.morphism(f);
    SMap a;
    a.level.resize(d + 1);
    for (int n = 0; n <= d; ++n)
      for (int x = 0; x < out.keys[m.src].set.size(n); ++x) {
        auto [b, z] = out.keys[m.src].key[n][x];
        a.level[n].push_back(out.keys[m.dst].at(n, {b, action.space.act[f](n, z)}));
      }
    out.bundle.total.act.push_back(std::move(a));
  }
  return out;
}

DiagramMap tcp_map_from_gamma(const Tcp& from, const Tcp& to, const GroupAction& action, const GammaFunction& gamma) {
  const int d = std::min(from.dim(), to.dim());
  DiagramMap h;
  for (std::size_t c = 0; c < from.keys.size(); ++c) {
    SMap m;
    m.level.resize(d + 1);
    for (int n = 0; n <= d; ++n)
      for (int x = 0; x < from.keys[c].set.size(n); ++x) {
        auto [b, z] = from.keys[c].key[n][x];
        m.level[n].push_back(to.keys[c].at(n, {b, action.act(static_cast<int>(c), n, gamma[n][b], z)}));
      }
    h.comp.push_back(std::move(m));
  }
  return h;
}

// ---------------------------------------------------------------- atlases

namespace {

Atlas atlas_shape(int d, const CDiagram& F) {
  Atlas a;
  a.dim = d;
  for (int n = 0; n <= d; ++n) {
    a.simplex.push_back(standard_simplex_keyed(n, d));
    std::vector<Keyed<Pair>> dom;
    for (int c = 0; c < F.cat->num_objects(); ++c)
      dom.push_back(product_keyed(a.simplex[n].set, truncate_set(F[c], d)));
    a.domain.push_back(std::move(dom));
  }
  return a;
}

int domain_index(const Atlas& a, int n, int c, int m, const Seq& s, int z) {
  return a.domain[n][c].at(m, {a.simplex[n].at(m, s), z});
}

}  // namespace

Atlas tautological_atlas(const Tcp& X, const SSet& B, const TwistingFunction& t, const GroupAction& action) {
  const SimplicialGroup& G = *action.group;
  const int d = X.dim();
  Atlas a = atlas_shape(d, action.space);
  a.beta.resize(d + 1);
  for (int n = 0; n <= d; ++n) {
    const Keyed<Seq>& S = a.simplex[n];
    for (int v = 0; v < B.size(n); ++v) {
      // phi(a) in G_m, recursively from phi(iota) = e.
      std::vector<std::vector<int>> phi(d + 1);
      for (int m = 0; m <= d; ++m) phi[m].assign(S.set.size(m), -1);
      std::function<int(int, int)> get = [&](int m, int idx) -> int {
        if (phi[m][idx] >= 0) return phi[m][idx];
        const Seq& s = S.key[m][idx];
        int r = -1;
        int rep = -1;
        for (int k = 0; k + 1 <= m; ++k)
          if (s[k] == s[k + 1]) rep = k;
        if (rep >= 0) {
          // s = s_rep(d_rep s)
          int lower = S.set.face(m, idx, rep);
          r = G.degen(m - 1, get(m - 1, lower), rep);
        } else if (m == n) {
          r = G.unit(n);
        } else {
          // injective, m < n: insert a missing value j at position i.
          int j = 0;
          while (std::find(s.begin(), s.end(), j) != s.end()) ++j;
          int i = static_cast<int>(std::lower_bound(s.begin(), s.end(), j) - s.begin());
          Seq up = s;
          up.insert(up.begin() + i, j);
          int ui = S.at(m + 1, up);
          int pu = get(m + 1, ui);
          if (i == 0) {
            int bv = B.apply_monotone(up, n, v);
            r = G.mul(m, t.value[m + 1][bv], G.face(m + 1, pu, 0));
          } else {
            r = G.face(m + 1, pu, i);
          }
        }
        return phi[m][idx] = r;
      };
      std::vector<SMap> per;
      for (int c = 0; c < action.space.cat->num_objects(); ++c) {
        const Keyed<Pair>& Dm = a.domain[n][c];
        SMap m;
        m.level.resize(d + 1);
        for (int k = 0; k <= d; ++k)
          for (int x = 0; x < Dm.set.size(k); ++x) {
            auto [si, z] = Dm.key[k][x];
            int bv = B.apply_monotone(S.key[k][si], n, v);
            m.level[k].push_back(X.keys[c].at(k, {bv, action.act(c, k, get(k, si), z)}));
          }
        per.push_back(std::move(m));
      }
      a.beta[n].push_back(std::move(per));
    }
  }
  return a;
}

Atlas perturb_atlas(const Atlas& a, const GroupAction& action, const GammaFunction& gamma) {
  const SimplicialGroup& G = *action.group;
  Atlas out = a;
  for (int n = 0; n <= a.dim; ++n)
    for (std::size_t v = 0; v < a.beta[n].size(); ++v)
      for (std::size_t c = 0; c < a.beta[n][v].size(); ++c) {
        const Keyed<Pair>& Dm = a.domain[n][c];
        for (int k = 0; k <= a.dim; ++k)
          for (int x = 0; x < Dm.set.size(k); ++x) {
            auto [si, z] = Dm.key[k][x];
            int g = G.apply_monotone(a.simplex[n].key[k][si], n, gamma[n][v]);
            int moved = Dm.at(k, {si, action.act(static_cast<int>(c), k, g, z)});
            out.beta[n][v][c].level[k][x] = a.beta[n][v][c](k, moved);
          }
      }
  return out;
}

Atlas normalize_atlas(const Atlas& a, const SSet& B) {
  Atlas out = a;
  for (int n = 0; n <= a.dim; ++n)
    for (int v = 0; v < B.size(n); ++v) {
      if (!B.degenerate(n, v)) continue;
      const SimplexRef& r = B.ref(n, v);
      const int n0 = B.generator(r.gen).dim;
      const int v0 = B.generator_simplex(r.gen);
      Seq sigma = word_surjection(r.word, n0);
      for (std::size_t c = 0; c < a.beta[n][v].size(); ++c) {
        const Keyed<Pair>& Dm = a.domain[n][c];
        for (int k = 0; k <= a.dim; ++k)
          for (int x = 0; x < Dm.set.size(k); ++x) {
            auto [si, z] = Dm.key[k][x];
            Seq s = compose_seq(sigma, a.simplex[n].key[k][si]);
            out.beta[n][v][c].level[k][x] = a.beta[n0][v0][c](k, domain_index(a, n0, static_cast<int>(c), k, s, z));
          }
      }
    }
  return out;
}

bool atlas_is_normal(const Atlas& a, const SSet& B) {
  Atlas n = normalize_atlas(a, B);
  return n.beta == a.beta;
}

std::optional<std::string> atlas_defect(const Atlas& a, const Fibration& bundle, const GroupAction& action) {
  const FiniteCategory& C = *action.space.cat;
  const SSet& B = bundle.base[0];
  for (int n = 0; n <= a.dim; ++n) {
    if (static_cast<int>(a.beta[n].size()) != B.size(n)) return "atlas misses simplices in dimension " + std::to_string(n);
    for (int v = 0; v < B.size(n); ++v) {
      const std::string where = " at " + B.simplex_string(n, v);
      for (int c = 0; c < C.num_objects(); ++c) {
        const SMap& beta = a.beta[n][v][c];
        const SSet& X = bundle.total[c];
        const Keyed<Pair>& Dm = a.domain[n][c];
        if (auto e = map_defect(Dm.set, X, beta)) return "beta not simplicial" + where + ": " + *e;
        for (int k = 0; k <= a.dim; ++k) {
          std::vector<int> hits(X.size(k), 0);
          for (int x = 0; x < Dm.set.size(k); ++x) {
            auto [si, z] = Dm.key[k][x];
            (void)z;
            int y = beta(k, x);
            if (bundle.p.comp[c](k, y) != B.apply_monotone(a.simplex[n].key[k][si], n, v))
              return "beta does not lie over v" + where;
            ++hits[y];
          }
          // Pullback: fibres of beta over each simplex of Delta[n] are bijective.
          for (int si = 0; si < a.simplex[n].set.size(k); ++si) {
            int bv = B.apply_monotone(a.simplex[n].key[k][si], n, v);
            long long fibre = 0, image = 0;
            for (int y = 0; y < X.size(k); ++y)
              if (bundle.p.comp[c](k, y) == bv) ++fibre;
            std::vector<char> seen(X.size(k), 0);
            for (int z = 0; z < action.space[c].size(k); ++z) {
              int y = beta(k, Dm.at(k, {si, z}));
              if (seen[y]) return "beta not injective on a fibre" + where;
              seen[y] = 1;
              ++image;
            }
            if (fibre != image) return "beta square is not a pullback" + where;
          }
        }
      }
      for (int f = 0; f < C.num_morphisms(); ++f) {
        const Morphism& m = C.morphism(f);
        const Keyed<Pair>& Ds = a.domain[n][m.src];
        for (int k = 0; k <= a.dim; ++k)
          for (int x = 0; x < Ds.set.size(k); ++x) {
            auto [si, z] = Ds.key[k][x];
            int lhs = bundle.total.act[f](k, a.beta[n][v][m.src](k, x));
            int rhs = a.beta[n][v][m.dst](k, a.domain[n][m.dst].at(k, {si, action.space.act[f](k, z)}));
            if (lhs != rhs) return "beta not natural along " + m.name + where;
          }
      }
    }
  }
  return std::nullopt;
}

TransformationElements transformation_elements(const Atlas& a, const SSet& B, const GroupAction& action) {
  const SimplicialGroup& G = *action.group;
  const int C = action.space.cat->num_objects();
  TransformationElements out;
  out.status = SearchStatus::Found;
  out.xi.resize(a.dim + 1);
  for (int n = 1; n <= a.dim; ++n) {
    out.xi[n].assign(B.size(n), std::vector<int>(n + 1, -1));
    for (int v = 0; v < B.size(n); ++v)
      for (int i = 0; i <= n; ++i) {
        const int w = B.face(n, v, i);
        int found = -1;
        for (int g = 0; g < G.level(n - 1).order(); ++g) {
          bool ok = true;
          for (int c = 0; c < C && ok; ++c) {
            const Keyed<Pair>& Dm = a.domain[n - 1][c];
            for (int k = 0; k <= a.dim && ok; ++k)
              for (int x = 0; x < Dm.set.size(k) && ok; ++x) {
                auto [si, z] = Dm.key[k][x];
                const Seq& s = a.simplex[n - 1].key[k][si];
                int gz = action.act(c, k, G.apply_monotone(s, n - 1, g), z);
                int lhs = a.beta[n - 1][w][c](k, Dm.at(k, {si, gz}));
                int rhs = a.beta[n][v][c](k, domain_index(a, n, c, k, coface_after(i, s), z));
                ok = lhs == rhs;
              }
          }
          if (!ok) continue;
          if (found < 0) {
            found = g;
          } else {
            out.unique = false;
            break;
          }
        }
        if (found < 0) {
          out.status = SearchStatus::None;
          out.failure = "no group element relates beta(d_" + std::to_string(i) + " v) and beta(v) at " +
                        B.simplex_string(n, v);
          return out;
        }
        out.xi[n][v][i] = found;
      }
  }
  return out;
}

bool is_regular(const TransformationElements& x, const SimplicialGroup& G) {
  if (x.status != SearchStatus::Found) return false;
  for (int n = 1; n < static_cast<int>(x.xi.size()); ++n)
    for (const auto& row : x.xi[n])
      for (int i = 1; i <= n; ++i)
        if (row[i] != G.unit(n - 1)) return false;
  return true;
}

TwistingFunction xi0_twisting(const TransformationElements& x) {
  TwistingFunction t;
  t.value.resize(x.xi.size());
  for (std::size_t n = 1; n < x.xi.size(); ++n)
    for (const auto& row : x.xi[n]) t.value[n].push_back(row[0]);
  return t;
}

Regularized regularize(const Atlas& a, const SSet& B, const GroupAction& action, long long budget) {
  const SimplicialGroup& G = *action.group;
  Regularized out;
  TransformationElements xi = transformation_elements(a, B, action);
  if (xi.status != SearchStatus::Found) return out;
  DimSearch s;
  s.B = &B;
  s.lo = 0;
  s.hi = a.dim;
  s.choices = [&](int n) { return G.level(n).order(); };
  s.forced = [&](int n, int v, const Values& g) { return gamma_forced(B, G, g, n, v); };
  s.ok = [&](int n, int v, const Values& g) {
    if (n == 0) return true;
    if (!gamma_degeneracies_ok(B, G, g, n, v)) return false;
    for (int i = 1; i <= n; ++i) {
      int want = G.mul(n - 1, G.inv(n - 1, xi.xi[n][v][i]), g[n - 1][B.face(n, v, i)]);
      if (G.face(n, g[n][v], i) != want) return false;
    }
    return true;
  };
  s.budget = budget;
  s.max_results = 1;
  s.run();
  out.nodes = s.nodes;
  out.status = s.status;
  if (s.results.empty()) return out;
  out.gamma = s.results.front();
  out.atlas = perturb_atlas(a, action, out.gamma);
  // Postcondition: the perturbed atlas is regular.
  if (!is_regular(transformation_elements(out.atlas, B, action), G)) out.status = SearchStatus::None;
  return out;
}

DiagramMap atlas_trivialization(const Atlas& a, const Tcp& model, const Fibration& bundle) {
  (void)bundle;
  const int d = std::min(a.dim, model.dim());
  DiagramMap h;
  for (std::size_t c = 0; c < model.keys.size(); ++c) {
    SMap m;
    m.level.resize(d + 1);
    for (int n = 0; n <= d; ++n) {
      Seq iota(n + 1);
      std::iota(iota.begin(), iota.end(), 0);
      for (int x = 0; x < model.keys[c].set.size(n); ++x) {
        auto [v, z] = model.keys[c].key[n][x];
        m.level[n].push_back(a.beta[n][v][c](n, domain_index(a, n, static_cast<int>(c), n, iota, z)));
      }
    }
    h.comp.push_back(std::move(m));
  }
  return h;
}

// ---------------------------------------------------------------- W-bar

namespace {

std::vector<int> wbar_face(const SimplicialGroup& G, WbarConvention conv, int n, const std::vector<int>& w, int i) {
  // w[k] lies in G_{n-1-k}.
  std::vector<int> r;
  if (i == 0) return std::vector<int>(w.begin() + 1, w.end());
  if (i == n) {
    for (int k = 0; k + 1 < n; ++k) r.push_back(G.face(n - 1 - k, w[k], n - 1 - k));
    return r;
  }
  for (int k = 0; k < i - 1; ++k) r.push_back(G.face(n - 1 - k, w[k], i - 1 - k));
  const int lvl = n - i - 1;
  int top = G.face(n - i, w[i - 1], 0);
  r.push_back(conv == WbarConvention::Twisting ? G.mul(lvl, w[i], top) : G.mul(lvl, top, w[i]));
  for (int k = i + 1; k < n; ++k) r.push_back(w[k]);
  return r;
}

std::vector<int> wbar_degen(const SimplicialGroup& G, int n, const std::vector<int>& w, int i) {
  std::vector<int> r;
  for (int k = 0; k < i; ++k) r.push_back(G.degen(n - 1 - k, w[k], i - 1 - k));
  r.push_back(G.unit(n - i));
  for (int k = i; k < n; ++k) r.push_back(w[k]);
  return r;
}

}  // namespace

Wbar wbar(const SimplicialGroup& G, int d, WbarConvention conv) {
  if (d - 1 > G.truncation()) throw TruncationError("W-bar needs the group up to dimension d-1");
  std::vector<std::vector<std::vector<int>>> levels(d + 1);
  levels[0].push_back({});
  for (int n = 1; n <= d; ++n)
    for (const auto& tail : levels[n - 1])
      for (int g = 0; g < G.level(n - 1).order(); ++g) {
        std::vector<int> w{g};
        w.insert(w.end(), tail.begin(), tail.end());
        levels[n].push_back(std::move(w));
      }
  for (auto& l : levels) std::sort(l.begin(), l.end());
  Wbar W;
  W.convention = conv;
  W.set = build_keyed<std::vector<int>>(
      d, levels, [&](int n, const std::vector<int>& w, int i) { return wbar_face(G, conv, n, w, i); },
      [&](int n, const std::vector<int>& w, int i) { return wbar_degen(G, n, w, i); },
      [&](int n, const std::vector<int>& w) {
        std::string s = "[";
        for (int k = 0; k < n; ++k) s += (k ? "|" : "") + flat(G.level(n - 1 - k).names[w[k]]);
        return s + "]";
      });
  W.tau.value.resize(d + 1);
  for (int n = 1; n <= d; ++n)
    for (int x = 0; x < W.set.set.size(n); ++x) W.tau.value[n].push_back(W.set.key[n][x][0]);
  return W;
}

SMap classifying_map(const SSet& B, const Wbar& W, const TwistingFunction& t) {
  const int d = std::min({t.dim(), W.set.set.truncation(), B.truncation()});
  SMap f;
  f.level.resize(d + 1);
  for (int n = 0; n <= d; ++n)
    for (int v = 0; v < B.size(n); ++v) {
      std::vector<int> w;
      int cur = v;
      for (int k = n; k >= 1; --k) {
        w.push_back(t.value[k][cur]);
        cur = B.face(k, cur, 0);
      }
      f.level[n].push_back(W.set.at(n, w));
    }
  return f;
}

TwistingFunction pullback_twisting(const SSet& B, const Wbar& W, const SMap& f) {
  TwistingFunction t;
  t.value.resize(f.truncation() + 1);
  for (int n = 1; n <= f.truncation(); ++n)
    for (int v = 0; v < B.size(n); ++v) t.value[n].push_back(W.set.key[n][f(n, v)][0]);
  return t;
}

Tcp principal_tcp(const SSet& B, const TwistingFunction& t, std::shared_ptr<const SimplicialGroup> G) {
  return build_tcp(B, t, GroupAction::left_translation(std::move(G)));
}

Associated associated(const SSet& B0, const TwistingFunction& t, const GroupAction& action) {
  const SimplicialGroup& G = *action.group;
  Tcp P = principal_tcp(B0, t, action.group);
  Tcp target = build_tcp(B0, t, action);
  const int d = std::min(P.dim(), target.dim());
  const Keyed<int>& U = G.underlying();
  const SSet& Pset = P.bundle.total[0];
  const FiniteCategory& C = *action.space.cat;
  Associated out;
  out.bundle.total.cat = action.space.cat;
  out.bundle.base = target.bundle.base;
  // Classes of ((b, g), x) in P_n x F(c)_n; rep[c][n][px * |F_n| + x] is the
  // least member of the class.
  std::vector<std::vector<std::vector<int>>> rep(C.num_objects(), std::vector<std::vector<int>>(d + 1));
  for (int c = 0; c < C.num_objects(); ++c) {
    const SSet& F = action.space[c];
    for (int n = 0; n <= d; ++n) {
      const int fs = F.size(n);
      UnionFind uf(Pset.size(n) * fs);
      for (int px = 0; px < Pset.size(n); ++px) {
        auto [b, gi] = P.keys[0].key[n][px];
        const int g = U.key[n][gi];
        for (int h = 0; h < G.level(n).order(); ++h) {
          int left = P.keys[0].at(n, {b, U.at(n, G.mul(n, g, h))});
          for (int x = 0; x < fs; ++x) uf.unite(left * fs + x, px * fs + action.act(c, n, h, x));
        }
      }
      rep[c][n].resize(Pset.size(n) * fs);
      for (int k = 0; k < static_cast<int>(rep[c][n].size()); ++k) rep[c][n][k] = uf.find(k);
    }
  }
  auto class_of = [&](int c, int n, int px, int x) {
    const int fs = action.space[c].size(n);
    int r = rep[c][n][px * fs + x];
    return Pair{r / fs, r % fs};
  };
  std::vector<Keyed<Pair>> quot;  // key: least ((b, g) index in P, x) of the class
  for (int c = 0; c < C.num_objects(); ++c) {
    const SSet& F = action.space[c];
    std::vector<std::vector<Pair>> levels(d + 1);
    for (int n = 0; n <= d; ++n)
      for (int k = 0; k < static_cast<int>(rep[c][n].size()); ++k)
        if (rep[c][n][k] == k) levels[n].push_back({k / F.size(n), k % F.size(n)});
    auto K = build_keyed<Pair>(
        d, levels,
        [&](int n, const Pair& k, int i) { return class_of(c, n - 1, Pset.face(n, k.first, i), F.face(n, k.second, i)); },
        [&](int n, const Pair& k, int i) {
          return class_of(c, n + 1, Pset.degen(n, k.first, i), F.degen(n, k.second, i));
        },
        [&](int n, const Pair& k) {
          return "[" + flat(Pset.simplex_string(n, k.first)) + "," + flat(F.simplex_string(n, k.second)) + "]";
        });
    SMap proj, to;
    proj.level.resize(d + 1);
    to.level.resize(d + 1);
    for (int n = 0; n <= d; ++n)
      for (int x = 0; x < K.set.size(n); ++x) {
        auto [b, gi] = P.keys[0].key[n][K.key[n][x].first];
        proj.level[n].push_back(b);
        to.level[n].push_back(target.keys[c].at(n, {b, action.act(c, n, U.key[n][gi], K.key[n][x].second)}));
      }
    out.bundle.total.at.push_back(std::make_shared<const SSet>(K.set));
    out.bundle.p.comp.push_back(std::move(proj));
    out.to_tcp.comp.push_back(std::move(to));
    quot.push_back(std::move(K));
  }
  for (int f = 0; f < C.num_morphisms(); ++f) {
    const Morphism& m = C.morphism(f);
    SMap a;
    a.level.resize(d + 1);
    for (int n = 0; n <= d; ++n)
      for (int x = 0; x < quot[m.src].set.size(n); ++x) {
        auto [px, z] = quot[m.src].key[n][x];
        a.level[n].push_back(quot[m.dst].at(n, class_of(m.dst, n, px, action.space.act[f](n, z))));
      }
    out.bundle.total.act.push_back(std::move(a));
  }
  bool ok = !diagram_map_defect(out.bundle.total, target.bundle.total, out.to_tcp);
  for (int c = 0; ok && c < C.num_objects(); ++c)
    for (int n = 0; ok && n <= d; ++n) {
      std::vector<int> v = out.to_tcp.comp[c].level[n];
      std::sort(v.begin(), v.end());
      if (static_cast<int>(v.size()) != target.bundle.total[c].size(n) ||
          std::adjacent_find(v.begin(), v.end()) != v.end())
        ok = false;
      for (int x = 0; ok && x < quot[c].set.size(n); ++x)
        if (target.bundle.p.comp[c](n, out.to_tcp.comp[c](n, x)) != out.bundle.p.comp[c](n, x)) ok = false;
    }
  out.iso = ok;
  return out;
}

// ---------------------------------------------------------------- classify

namespace {

SearchStatus maps_homotopic(const SSet& B, const SSet& W, const SMap& f, const SMap& g, int d, long long budget,
                            long long& nodes) {
  Keyed<Seq> I = standard_simplex_keyed(1, d);
  Keyed<Pair> cyl = product_keyed(B, I.set);
  std::vector<char> small(cyl.set.num_generators(), 0);
  std::vector<int> partial(cyl.set.num_generators(), -1);
  for (int k = 0; k < cyl.set.num_generators(); ++k) {
    const int n = cyl.set.generator(k).dim;
    const int x = cyl.set.generator_simplex(k);
    auto [b, u] = cyl.key[n][x];
    const Seq& s = I.key[n][u];
    if (s.front() != s.back()) continue;
    small[k] = 1;
    partial[k] = s.front() == 0 ? f(n, b) : g(n, b);
  }
  LiftingProblem lp;
  lp.inclusion = CellInclusion::make(cyl.set, small);
  lp.X = &W;
  lp.partial = partial;
  LiftResult r = solve(lp, budget);
  nodes += r.nodes;
  return r.status;
}

}  // namespace

ClassifyReport classify(const SSet& B0, const GroupAction& action, int d, long long budget) {
  const SimplicialGroup& G = *action.group;
  ClassifyReport rep;
  rep.dim = d;
  if (d > G.truncation()) throw TruncationError("classification needs the group up to dimension d");
  SSet B = truncated_base(B0, d);
  TwistingSearch ts = enumerate_twistings(B, G, d, budget);
  rep.nodes += ts.nodes;
  rep.status = SearchStatus::Found;
  if (ts.status == SearchStatus::Exhausted) {
    rep.status = SearchStatus::Exhausted;
    rep.notes.push_back("twisting enumeration hit the budget");
    return rep;
  }
  rep.twistings = ts.found;
  const int T = static_cast<int>(rep.twistings.size());

  UnionFind tuf(T);
  std::vector<GammaFunction> gammas;
  std::vector<Pair> gamma_pairs;
  for (int i = 0; i < T; ++i)
    for (int j = i + 1; j < T; ++j) {
      if (tuf.find(i) == tuf.find(j)) continue;
      EquivalenceSearch e = twisting_equivalent(B, G, rep.twistings[i], rep.twistings[j], budget);
      rep.nodes += e.nodes;
      if (e.status == SearchStatus::Exhausted) {
        rep.status = SearchStatus::Exhausted;
        rep.notes.push_back("equivalence search hit the budget");
      }
      if (e.status == SearchStatus::Found) {
        tuf.unite(i, j);
        gammas.push_back(e.gamma);
        gamma_pairs.push_back({i, j});
      }
    }
  rep.twisting_class = class_labels(tuf, T, rep.twisting_classes);

  rep.tcp_isos_ok = true;
  for (std::size_t k = 0; k < gammas.size(); ++k) {
    Tcp a = build_tcp(B, rep.twistings[gamma_pairs[k].first], action);
    Tcp b = build_tcp(B, rep.twistings[gamma_pairs[k].second], action);
    DiagramMap h = tcp_map_from_gamma(a, b, action, gammas[k]);
    if (diagram_map_defect(a.bundle.total, b.bundle.total, h)) rep.tcp_isos_ok = false;
  }

  Wbar W = wbar(G, d);
  auto cat = std::make_shared<const FiniteCategory>(FiniteCategory::trivial());
  CDiagram D = CDiagram::constant_diagram(cat, std::make_shared<const SSet>(B));
  CDiagram Y = CDiagram::constant_diagram(cat, std::make_shared<const SSet>(W.set.set));
  HomSearch hs;
  hs.budget = budget;
  HomResult hr = enumerate_maps(D, Y, hs);
  rep.nodes += hr.nodes;
  if (!hr.complete || hr.status == SearchStatus::Exhausted) {
    rep.status = SearchStatus::Exhausted;
    rep.notes.push_back("map enumeration hit the budget");
    return rep;
  }
  for (auto& m : hr.maps) rep.maps.push_back(m.comp[0]);
  const int M = static_cast<int>(rep.maps.size());
  UnionFind muf(M);
  for (int i = 0; i < M; ++i)
    for (int j = i + 1; j < M; ++j) {
      if (muf.find(i) == muf.find(j)) continue;
      SearchStatus s = maps_homotopic(B, W.set.set, rep.maps[i], rep.maps[j], d, budget, rep.nodes);
      if (s == SearchStatus::Exhausted) {
        rep.status = SearchStatus::Exhausted;
        rep.notes.push_back("homotopy search hit the budget");
      }
      if (s == SearchStatus::Found) muf.unite(i, j);
    }
  rep.map_class = class_labels(muf, M, rep.map_classes);

  // t -> f_t
  std::vector<int> image(T, -1);
  std::vector<char> hit(M, 0);
  bool bij = T == M;
  for (int i = 0; i < T && bij; ++i) {
    SMap f = classifying_map(B, W, rep.twistings[i]);
    for (int j = 0; j < M; ++j)
      if (rep.maps[j] == f) image[i] = j;
    if (image[i] < 0 || hit[image[i]]) bij = false;
    else hit[image[i]] = 1;
    if (bij && pullback_twisting(B, W, f) != rep.twistings[i]) bij = false;
  }
  for (int i = 0; i < T && bij; ++i)
    for (int j = 0; j < T && bij; ++j)
      if ((rep.twisting_class[i] == rep.twisting_class[j]) != (rep.map_class[image[i]] == rep.map_class[image[j]]))
        bij = false;
  rep.bijection = bij;
  if (!bij) rep.notes.push_back("t -> f_t is not a bijection of classes at this truncation");
  return rep;
}

}  // namespace mfib
