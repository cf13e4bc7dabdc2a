#include "mfib/diagram.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace mfib {

int CDiagram::truncation() const { return at.empty() ? -1 : at[0]->truncation(); }

CDiagram CDiagram::constant_diagram(std::shared_ptr<const FiniteCategory> cat, std::shared_ptr<const SSet> X) {
  CDiagram D;
  D.cat = std::move(cat);
  D.constant = true;
  D.at.assign(D.cat->num_objects(), X);
  D.act.assign(D.cat->num_morphisms(), identity_map(*X));
  return D;
}

std::optional<std::string> CDiagram::defect() const {
  if (!cat) return "diagram has no category";
  const FiniteCategory& C = *cat;
  if (static_cast<int>(at.size()) != C.num_objects()) return "one simplicial set per object is required";
  if (static_cast<int>(act.size()) != C.num_morphisms()) return "one map per morphism is required";
  for (int c = 0; c < C.num_objects(); ++c)
    if (!at[c] || at[c]->truncation() != truncation()) return "objects must share one truncation";
  for (int f = 0; f < C.num_morphisms(); ++f) {
    const Morphism& m = C.morphism(f);
    if (auto d = map_defect(*at[m.src], *at[m.dst], act[f])) return "map for '" + m.name + "': " + *d;
  }
  for (int c = 0; c < C.num_objects(); ++c)
    if (act[C.identity(c)] != identity_map(*at[c])) return "identity of '" + C.object(c) + "' does not act trivially";
  for (int g = 0; g < C.num_morphisms(); ++g)
    for (int f = 0; f < C.num_morphisms(); ++f) {
      int h = C.compose(g, f);
      if (h < 0) continue;
      if (act[h] != compose(act[g], act[f]))
        return "composition " + C.morphism(g).name + " o " + C.morphism(f).name + " is not preserved";
    }
  return std::nullopt;
}

void CDiagram::validate() const {
  if (auto d = defect()) throw ValidationError("invalid diagram: " + *d);
}

int FreeBasis::position(const GammaSimplex& s) const {
  auto it = std::lower_bound(gens.begin(), gens.end(), s);
  return it != gens.end() && *it == s ? static_cast<int>(it - gens.begin()) : -1;
}

BasisReport verify_basis(const CDiagram& X, std::vector<GammaSimplex> gens) {
  const FiniteCategory& C = *X.cat;
  const int N = X.truncation();
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  BasisReport rep;
  FreeBasis B;
  B.witness.resize(C.num_objects());
  for (int c = 0; c < C.num_objects(); ++c) {
    B.witness[c].resize(N + 1);
    for (int n = 0; n <= N; ++n) B.witness[c][n].assign(X[c].size(n), {-1, -1});
  }
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const GammaSimplex& b = gens[k];
    if (b.obj < 0 || b.obj >= C.num_objects() || b.dim < 0 || b.dim > N || b.idx < 0 || b.idx >= X[b.obj].size(b.dim)) {
      rep.reason = "generator out of range";
      return rep;
    }
    for (int d = 0; d < C.num_objects(); ++d)
      for (int h : C.hom(b.obj, d)) {
        int y = X.act[h](b.dim, b.idx);
        auto& w = B.witness[d][b.dim][y];
        if (w.first >= 0) {
          rep.reason = "simplex has two witnesses";
          rep.offending = {GammaSimplex{d, b.dim, y}};
          return rep;
        }
        w = {static_cast<int>(k), h};
      }
  }
  for (int c = 0; c < C.num_objects(); ++c)
    for (int n = 0; n <= N; ++n)
      for (int x = 0; x < X[c].size(n); ++x)
        if (B.witness[c][n][x].first < 0) {
          rep.reason = "simplex is not generated";
          rep.offending = {GammaSimplex{c, n, x}};
          return rep;
        }
  B.gens = std::move(gens);
  for (auto& b : B.gens)
    for (int i = 0; i <= b.dim && b.dim < N; ++i) {
      GammaSimplex s{b.obj, b.dim + 1, X[b.obj].degen(b.dim, b.idx, i)};
      if (B.position(s) < 0) {
        rep.reason = "generators are not closed under degeneracies";
        rep.offending = {s};
        return rep;
      }
    }
  rep.basis = std::move(B);
  return rep;
}

BasisReport compute_basis(const CDiagram& X) {
  const FiniteCategory& C = *X.cat;
  const int N = X.truncation();
  std::vector<GammaSimplex> gens;
  for (int n = 0; n <= N; ++n) {
    std::vector<std::vector<char>> hit(C.num_objects()), done(C.num_objects());
    for (int c = 0; c < C.num_objects(); ++c) {
      hit[c].assign(X[c].size(n), 0);
      done[c].assign(X[c].size(n), 0);
    }
    for (int f = 0; f < C.num_morphisms(); ++f) {
      if (C.is_iso(f)) continue;
      const Morphism& m = C.morphism(f);
      for (int y = 0; y < X[m.src].size(n); ++y) hit[m.dst][X.act[f](n, y)] = 1;
    }
    auto take = [&](int c, int x) {
      if (hit[c][x] || done[c][x]) return;
      gens.push_back({c, n, x});
      for (int d = 0; d < C.num_objects(); ++d)
        for (int h : C.hom(c, d))
          if (C.is_iso(h)) done[d][X.act[h](n, x)] = 1;
    };
    std::vector<GammaSimplex> lower;
    for (auto& b : gens)
      if (b.dim == n - 1) lower.push_back(b);
    for (auto& b : lower)
      for (int i = 0; i < n; ++i) take(b.obj, X[b.obj].degen(n - 1, b.idx, i));
    for (int c = 0; c < C.num_objects(); ++c)
      for (int x = 0; x < X[c].size(n); ++x) take(c, x);
  }
  return verify_basis(X, std::move(gens));
}

std::optional<std::string> diagram_map_defect(const CDiagram& X, const CDiagram& Y, const DiagramMap& f) {
  const FiniteCategory& C = *X.cat;
  if (static_cast<int>(f.comp.size()) != C.num_objects()) return "one component per object is required";
  for (int c = 0; c < C.num_objects(); ++c)
    if (auto d = map_defect(X[c], Y[c], f.comp[c])) return "component at '" + C.object(c) + "': " + *d;
  for (int h = 0; h < C.num_morphisms(); ++h) {
    const Morphism& m = C.morphism(h);
    if (compose(Y.act[h], f.comp[m.src]) != compose(f.comp[m.dst], X.act[h]))
      return "naturality fails for '" + m.name + "'";
  }
  return std::nullopt;
}

void Fibration::validate() const {
  total.validate();
  base.validate();
  if (total.cat->num_objects() != base.cat->num_objects() || total.cat->num_morphisms() != base.cat->num_morphisms())
    throw ValidationError("total and base live over different categories");
  if (auto d = diagram_map_defect(total, base, p)) throw ValidationError("invalid projection: " + *d);
}

Fibration over_point(const CDiagram& X) {
  Fibration F;
  F.total = X;
  auto pt = std::make_shared<const SSet>(point(X.truncation()));
  F.base = CDiagram::constant_diagram(X.cat, pt);
  for (int c = 0; c < X.cat->num_objects(); ++c) F.p.comp.push_back(constant_map(X[c], *pt, 0));
  return F;
}

FibrationReport is_fibration_upto(const Fibration& p, int d) {
  FibrationReport rep;
  rep.dim = d;
  for (int c = 0; c < p.total.cat->num_objects(); ++c) {
    KanReport k = is_kan_fibration_upto(p.total[c], p.base[c], p.p.comp[c], d);
    if (!k.ok) rep.ok = false;
    rep.per_object.emplace_back(c, std::move(k));
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<int> hom_identity_first(const FiniteCategory& C, int c, int d) {
  std::vector<int> L = C.hom(c, d);
  if (c == d) {
    auto it = std::find(L.begin(), L.end(), C.identity(c));
    std::rotate(L.begin(), it, it + 1);
  }
  return L;
}

Keyed<Pair> copies(const SSet& Y, const std::vector<std::string>& suffixes) {
  if (suffixes.empty()) {
    Keyed<Pair> k;
    k.set = empty_set(Y.truncation());
    k.key.resize(Y.truncation() + 1);
    k.index.resize(Y.truncation() + 1);
    return k;
  }
  std::vector<const SSet*> parts(suffixes.size(), &Y);
  return disjoint_union(parts, suffixes);
}

}  // namespace

FreeDiagram free_diagram_from(std::shared_ptr<const FiniteCategory> cat, int c, const SSet& Y) {
  const FiniteCategory& C = *cat;
  const int N = Y.truncation();
  std::vector<std::vector<int>> L(C.num_objects());
  std::vector<Keyed<Pair>> K(C.num_objects());
  FreeDiagram out;
  out.diagram.cat = cat;
  for (int d = 0; d < C.num_objects(); ++d) {
    L[d] = hom_identity_first(C, c, d);
    std::vector<std::string> suffixes;
    for (int g : L[d]) suffixes.push_back("@" + C.morphism(g).name);
    K[d] = copies(Y, suffixes);
    out.diagram.at.push_back(std::make_shared<const SSet>(K[d].set));
  }
  for (int f = 0; f < C.num_morphisms(); ++f) {
    const Morphism& m = C.morphism(f);
    SMap a;
    a.level.resize(N + 1);
    for (int n = 0; n <= N; ++n) {
      a.level[n].resize(K[m.src].set.size(n));
      for (int x = 0; x < K[m.src].set.size(n); ++x) {
        auto [k, y] = K[m.src].key[n][x];
        int fg = C.compose(f, L[m.src][k]);
        int k2 = static_cast<int>(std::find(L[m.dst].begin(), L[m.dst].end(), fg) - L[m.dst].begin());
        a.level[n][x] = K[m.dst].at(n, Pair{k2, y});
      }
    }
    out.diagram.act.push_back(std::move(a));
  }
  std::vector<GammaSimplex> gens;
  for (int n = 0; n <= N; ++n)
    for (int y = 0; y < Y.size(n); ++y) gens.push_back({c, n, K[c].at(n, Pair{0, y})});
  BasisReport r = verify_basis(out.diagram, gens);
  if (!r.basis) throw Error("free diagram failed its basis check: " + r.reason);
  out.basis = std::move(*r.basis);
  return out;
}

FreeDiagram delta(std::shared_ptr<const FiniteCategory> cat, int c, int n, int N) {
  return free_diagram_from(std::move(cat), c, standard_simplex(n, N));
}

CDiagram empty_diagram(std::shared_ptr<const FiniteCategory> cat, int N) {
  return CDiagram::constant_diagram(std::move(cat), std::make_shared<const SSet>(empty_set(N)));
}

FreeDiagram attach_cell(const CDiagram& X, const FreeBasis& basis, int c, int n, const std::vector<int>& boundary,
                        const std::string& name) {
  const FiniteCategory& C = *X.cat;
  const int N = X.truncation();
  if (n < 0 || n > N) throw TruncationError("cell dimension outside truncation");
  if (static_cast<int>(boundary.size()) != (n == 0 ? 0 : n + 1)) throw ValidationError("boundary needs n+1 faces");
  for (int x : boundary)
    if (x < 0 || x >= X[c].size(n - 1)) throw ValidationError("boundary face is not a simplex");
  for (int j = 0; j <= n && n >= 2; ++j)
    for (int i = 0; i < j; ++i)
      if (X[c].face(n - 1, boundary[j], i) != X[c].face(n - 1, boundary[i], j - 1))
        throw ValidationError("boundary faces " + std::to_string(i) + " and " + std::to_string(j) + " do not match");
  if (!verify_basis(X, basis.gens).basis) throw ValidationError("attach_cell needs a free diagram with its basis");

  std::string stem = name;
  for (int k = 1;; ++k) {
    bool clash = false;
    for (int d = 0; d < C.num_objects() && !clash; ++d)
      for (auto& g : X[d].generators())
        if (g.name.rfind(stem + "@", 0) == 0) clash = true;
    if (!clash) break;
    stem = name + std::to_string(k);
  }

  std::vector<std::vector<int>> L(C.num_objects());
  std::vector<std::shared_ptr<const SSet>> at(C.num_objects());
  for (int d = 0; d < C.num_objects(); ++d) {
    L[d] = hom_identity_first(C, c, d);
    std::vector<Generator> gens = X[d].generators();
    for (int g : L[d]) {
      Generator y{stem + "@" + C.morphism(g).name, n, {}};
      for (int i = 0; i < static_cast<int>(boundary.size()); ++i)
        y.faces.push_back(X[d].ref(n - 1, X.act[g](n - 1, boundary[i])));
      gens.push_back(std::move(y));
    }
    at[d] = std::make_shared<const SSet>(SSet::from_presentation(N, std::move(gens)));
  }
  auto translate = [&](int d, int m, int x) {
    const SimplexRef& r = X[d].ref(m, x);
    return at[d]->index(m, SimplexRef{at[d]->generator_by_name(X[d].generator(r.gen).name), r.word});
  };
  FreeDiagram out;
  out.diagram.cat = X.cat;
  out.diagram.at = at;
  for (int f = 0; f < C.num_morphisms(); ++f) {
    const Morphism& m = C.morphism(f);
    const SSet& S = *at[m.src];
    std::vector<int> vals(S.num_generators());
    for (int g = 0; g < S.num_generators(); ++g) {
      const Generator& gen = S.generator(g);
      int old = X[m.src].generator_by_name(gen.name);
      if (old >= 0) {
        vals[g] = translate(m.dst, gen.dim, X.act[f](gen.dim, X[m.src].generator_simplex(old)));
      } else {
        std::string mor = gen.name.substr(stem.size() + 1);
        int k = C.compose(f, C.morphism_index(mor));
        vals[g] = at[m.dst]->generator_simplex(at[m.dst]->generator_by_name(stem + "@" + C.morphism(k).name));
      }
    }
    out.diagram.act.push_back(map_from_generators(S, *at[m.dst], vals));
  }
  out.diagram.validate();
  std::vector<GammaSimplex> gens;
  for (auto& b : basis.gens) gens.push_back({b.obj, b.dim, translate(b.obj, b.dim, b.idx)});
  int cell = at[c]->generator_by_name(stem + "@" + C.morphism(C.identity(c)).name);
  for (int m = n; m <= N; ++m)
    for (int x = 0; x < at[c]->size(m); ++x)
      if (at[c]->ref(m, x).gen == cell) gens.push_back({c, m, x});
  BasisReport r = verify_basis(out.diagram, gens);
  if (!r.basis) throw Error("attached diagram failed its basis check: " + r.reason);
  out.basis = std::move(*r.basis);
  return out;
}

ProductDiagram external_product(const CDiagram& X, const SSet& K) {
  const FiniteCategory& C = *X.cat;
  ProductDiagram out;
  out.diagram.cat = X.cat;
  for (int c = 0; c < C.num_objects(); ++c) {
    out.keys.push_back(product_keyed(X[c], K));
    out.diagram.at.push_back(std::make_shared<const SSet>(out.keys.back().set));
  }
  const int N = out.diagram.truncation();
  for (int f = 0; f < C.num_morphisms(); ++f) {
    const Morphism& m = C.morphism(f);
    SMap a;
    a.level.resize(N + 1);
    for (int n = 0; n <= N; ++n)
      for (auto& [x, k] : out.keys[m.src].key[n]) a.level[n].push_back(out.keys[m.dst].at(n, Pair{X.act[f](n, x), k}));
    out.diagram.act.push_back(std::move(a));
  }
  return out;
}

Pullback pullback_constant_base(const SSet& A, const SMap& alpha, const Fibration& p, const FreeBasis* basis) {
  const FiniteCategory& C = *p.total.cat;
  const SSet& B = p.base[0];
  validate_map(A, B, alpha);
  const int N = std::min({A.truncation(), p.total.truncation(), B.truncation()});
  Pullback out;
  auto Ac = std::make_shared<const SSet>(A);
  out.fibration.base = CDiagram::constant_diagram(p.total.cat, Ac);
  out.fibration.total.cat = p.total.cat;
  for (int c = 0; c < C.num_objects(); ++c) {
    const SSet& X = p.total[c];
    std::vector<std::vector<Pair>> levels(N + 1);
    for (int n = 0; n <= N; ++n)
      for (int u = 0; u < A.size(n); ++u)
        for (int x = 0; x < X.size(n); ++x)
          if (alpha(n, u) == p.p.comp[c](n, x)) levels[n].push_back({u, x});
    out.keys.push_back(build_keyed<Pair>(
        N, levels, [&](int n, const Pair& q, int i) { return Pair{A.face(n, q.first, i), X.face(n, q.second, i)}; },
        [&](int n, const Pair& q, int i) { return Pair{A.degen(n, q.first, i), X.degen(n, q.second, i)}; },
        [&](int n, const Pair& q) {
          std::string a = A.simplex_string(n, q.first), x = X.simplex_string(n, q.second);
          std::replace(a.begin(), a.end(), ' ', '.');
          std::replace(x.begin(), x.end(), ' ', '.');
          return "(" + a + "," + x + ")";
        }));
    out.fibration.total.at.push_back(std::make_shared<const SSet>(out.keys.back().set));
  }
  for (int f = 0; f < C.num_morphisms(); ++f) {
    const Morphism& m = C.morphism(f);
    SMap a;
    a.level.resize(N + 1);
    for (int n = 0; n <= N; ++n)
      for (auto& [u, x] : out.keys[m.src].key[n])
        a.level[n].push_back(out.keys[m.dst].at(n, Pair{u, p.total.act[f](n, x)}));
    out.fibration.total.act.push_back(std::move(a));
  }
  for (int c = 0; c < C.num_objects(); ++c) {
    SMap pr;
    pr.level.resize(N + 1);
    for (int n = 0; n <= N; ++n)
      for (auto& q : out.keys[c].key[n]) pr.level[n].push_back(q.first);
    out.fibration.p.comp.push_back(std::move(pr));
  }
  if (A.truncation() > N) {
    // Base restricted to the common truncation.
    std::vector<std::vector<char>> keep(N + 1);
    for (int n = 0; n <= N; ++n) keep[n].assign(A.size(n), 1);
    out.fibration.base = CDiagram::constant_diagram(p.total.cat, std::make_shared<const SSet>(subcomplex(A, keep, N).set));
  }
  out.fibration.validate();
  if (basis) {
    std::vector<GammaSimplex> gens;
    for (auto& b : basis->gens) {
      if (b.dim > N) continue;
      for (int u = 0; u < A.size(b.dim); ++u)
        if (alpha(b.dim, u) == p.p.comp[b.obj](b.dim, b.idx)) {
          gens.push_back({b.obj, b.dim, out.keys[b.obj].at(b.dim, Pair{u, b.idx})});
          ++out.predicted_size;
        }
    }
    BasisReport r = verify_basis(out.fibration.total, gens);
    out.basis = r.basis;
  }
  return out;
}

// ---------------------------------------------------------------------------

HomResult enumerate_maps(const CDiagram& D, const CDiagram& Y, const HomSearch& opts) {
  const FiniteCategory& C = *D.cat;
  const int L = std::min(D.truncation(), Y.truncation());
  struct Var {
    int c, g, dim, simplex;
  };
  std::vector<Var> vars;
  std::vector<std::vector<int>> order(C.num_objects());
  for (int c = 0; c < C.num_objects(); ++c) order[c].assign(D[c].num_generators(), -1);
  for (int n = 0; n <= L; ++n)
    for (int c = 0; c < C.num_objects(); ++c)
      for (int g = 0; g < D[c].num_generators(); ++g)
        if (D[c].generator(g).dim == n) {
          order[c][g] = static_cast<int>(vars.size());
          vars.push_back({c, g, n, D[c].generator_simplex(g)});
        }
  struct Nat {
    int f, d;
    SimplexRef r;
  };
  std::vector<std::vector<Nat>> nat(vars.size());
  std::vector<std::vector<std::pair<int, Nat>>> checks(vars.size());  // (var owning the lhs, constraint)
  for (std::size_t v = 0; v < vars.size(); ++v) {
    const Var& V = vars[v];
    for (int f = 0; f < C.num_morphisms(); ++f) {
      const Morphism& m = C.morphism(f);
      if (m.src != V.c || C.is_identity(f)) continue;
      SimplexRef r = D[m.dst].ref(V.dim, D.act[f](V.dim, V.simplex));
      int other = order[m.dst][r.gen];
      int later = std::max(static_cast<int>(v), other);
      checks[later].push_back({static_cast<int>(v), Nat{f, m.dst, r}});
    }
  }
  std::vector<std::vector<int>> val(C.num_objects());
  for (int c = 0; c < C.num_objects(); ++c) val[c].assign(D[c].num_generators(), -1);
  auto value = [&](int c, const SimplexRef& r) {
    return Y[c].apply_word(r.word, D[c].generator(r.gen).dim, val[c][r.gen]);
  };

  HomResult res;
  std::vector<int> pos(vars.size(), 0);
  std::size_t depth = 0;
  bool stop = false;
  auto leaf = [&]() {
    DiagramMap M;
    for (int c = 0; c < C.num_objects(); ++c) M.comp.push_back(map_from_generators(D[c], Y[c], val[c]));
    if (opts.bijective) {
      for (int c = 0; c < C.num_objects(); ++c)
        for (int n = 0; n <= L; ++n) {
          if (D[c].size(n) != Y[c].size(n)) return;
          std::vector<char> seen(Y[c].size(n), 0);
          for (int x : M.comp[c].level[n]) {
            if (seen[x]) return;
            seen[x] = 1;
          }
        }
    }
    res.maps.push_back(std::move(M));
    if (opts.max_results && res.maps.size() >= opts.max_results) {
      stop = true;
      res.complete = false;
    }
  };
  if (vars.empty()) {
    leaf();
  } else {
    while (!stop) {
      if (depth == vars.size()) {
        leaf();
        --depth;
        continue;
      }
      const Var& V = vars[depth];
      const SSet& T = Y[V.c];
      const auto& faces = D[V.c].generator(V.g).faces;
      bool placed = false;
      while (pos[depth] < T.size(V.dim)) {
        int z = pos[depth]++;
        ++res.nodes;
        if (opts.budget > 0 && res.nodes > opts.budget) {
          res.status = SearchStatus::Exhausted;
          res.complete = false;
          return res;
        }
        bool ok = true;
        for (std::size_t i = 0; i < faces.size() && ok; ++i) ok = T.face(V.dim, z, static_cast<int>(i)) == value(V.c, faces[i]);
        if (ok && opts.over_source && opts.over_target)
          ok = opts.over_target->p.comp[V.c](V.dim, z) == opts.over_source->p.comp[V.c](V.dim, V.simplex);
        if (!ok) continue;
        val[V.c][V.g] = z;
        for (auto& [owner, nt] : checks[depth]) {
          const Var& O = vars[owner];
          if (Y.act[nt.f](O.dim, val[O.c][O.g]) != value(nt.d, nt.r)) {
            ok = false;
            break;
          }
        }
        if (ok) {
          placed = true;
          break;
        }
        val[V.c][V.g] = -1;
      }
      if (placed) {
        ++depth;
        continue;
      }
      pos[depth] = 0;
      val[V.c][V.g] = -1;
      if (depth == 0) break;
      --depth;
    }
  }
  res.status = res.maps.empty() ? SearchStatus::None : SearchStatus::Found;
  return res;
}

MappingSpace mapping_space(const CDiagram& X, const CDiagram& Y, int n, long long budget) {
  MappingSpace out;
  out.simplex = standard_simplex_keyed(n, X.truncation());
  out.source = external_product(X, out.simplex.set);
  HomSearch opts;
  opts.budget = budget;
  HomResult r = enumerate_maps(out.source.diagram, Y, opts);
  out.status = r.status == SearchStatus::Exhausted ? SearchStatus::Exhausted : SearchStatus::Found;
  out.simplices = std::move(r.maps);
  return out;
}

namespace {

DiagramMap restrict_along(const MappingSpace& from, const MappingSpace& to, const DiagramMap& f,
                          const std::function<int(int)>& theta) {
  DiagramMap out;
  const int C = static_cast<int>(to.source.keys.size());
  for (int c = 0; c < C; ++c) {
    const auto& K = to.source.keys[c];
    SMap m;
    m.level.resize(K.key.size());
    for (std::size_t n = 0; n < K.key.size(); ++n)
      for (auto& [x, a] : K.key[n]) {
        Seq s = to.simplex.key[n][a];
        for (int& v : s) v = theta(v);
        int b = from.simplex.at(static_cast<int>(n), s);
        m.level[n].push_back(f.comp[c](static_cast<int>(n), from.source.keys[c].at(static_cast<int>(n), Pair{x, b})));
      }
    out.comp.push_back(std::move(m));
  }
  return out;
}

}  // namespace

DiagramMap mapping_face(const MappingSpace& from, const MappingSpace& to, const DiagramMap& f, int i) {
  return restrict_along(from, to, f, [i](int v) { return v >= i ? v + 1 : v; });
}

DiagramMap mapping_degeneracy(const MappingSpace& from, const MappingSpace& to, const DiagramMap& f, int i) {
  return restrict_along(from, to, f, [i](int v) { return v > i ? v - 1 : v; });
}

AutGroup aut_group(const CDiagram& F, int n, long long budget) {
  AutGroup out;
  auto simplex = standard_simplex_keyed(n, F.truncation());
  out.source = external_product(F, simplex.set);
  Fibration over;
  over.total = out.source.diagram;
  auto base = std::make_shared<const SSet>(simplex.set);
  over.base = CDiagram::constant_diagram(F.cat, base);
  for (std::size_t c = 0; c < out.source.keys.size(); ++c) {
    SMap pr;
    for (auto& lvl : out.source.keys[c].key) {
      pr.level.emplace_back();
      for (auto& q : lvl) pr.level.back().push_back(q.second);
    }
    over.p.comp.push_back(std::move(pr));
  }
  HomSearch opts;
  opts.over_source = &over;
  opts.over_target = &over;
  opts.bijective = true;
  opts.budget = budget;
  HomResult r = enumerate_maps(out.source.diagram, out.source.diagram, opts);
  if (r.status == SearchStatus::Exhausted) {
    out.status = SearchStatus::Exhausted;
    return out;
  }
  out.elements = std::move(r.maps);
  const int m = static_cast<int>(out.elements.size());
  auto find = [&](const DiagramMap& d) {
    for (int k = 0; k < m; ++k)
      if (out.elements[k].comp == d.comp) return k;
    throw Error("automorphisms are not closed under composition");
  };
  std::vector<std::vector<int>> mult(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      DiagramMap ab;
      for (std::size_t c = 0; c < out.elements[a].comp.size(); ++c)
        ab.comp.push_back(compose(out.elements[a].comp[c], out.elements[b].comp[c]));
      mult[a][b] = find(ab);
    }
  std::vector<std::string> names(m);
  int k = 0;
  for (int a = 0; a < m; ++a) {
    bool is_id = true;
    for (std::size_t c = 0; c < out.elements[a].comp.size() && is_id; ++c)
      is_id = out.elements[a].comp[c] == identity_map(out.source.diagram[static_cast<int>(c)]);
    names[a] = is_id ? "id" : "a" + std::to_string(++k);
  }
  out.group = FiniteGroup::from_table(names, mult);
  out.status = SearchStatus::Found;
  return out;
}

}  // namespace mfib
