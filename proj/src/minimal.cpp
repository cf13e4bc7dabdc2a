#include "mfib/minimal.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace mfib {

PreorderedSet PreorderedSet::from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
  PreorderedSet A;
  A.size = n;
  A.rel.assign(n, std::vector<char>(n, 0));
  for (int a = 0; a < n; ++a) A.rel[a][a] = 1;
  for (auto [a, b] : pairs) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw ValidationError("preorder pair out of range");
    A.rel[a][b] = 1;
  }
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      if (A.rel[a][k])
        for (int b = 0; b < n; ++b)
          if (A.rel[k][b]) A.rel[a][b] = 1;
  return A;
}

std::vector<int> minimal_subset(const PreorderedSet& A, const std::vector<char>& preferred) {
  std::vector<int> out;
  std::vector<char> seen(A.size, 0);
  for (int a = 0; a < A.size; ++a) {
    if (seen[a]) continue;
    std::vector<int> cls;
    for (int b = a; b < A.size; ++b)
      if (A.equivalent(a, b)) {
        cls.push_back(b);
        seen[b] = 1;
      }
    bool is_min = true;
    for (int w = 0; w < A.size && is_min; ++w) is_min = !A.leq(w, a) || A.leq(a, w);
    if (!is_min) continue;
    int pick = cls.front();
    if (!preferred.empty())
      for (int b : cls)
        if (preferred[b]) {
          pick = b;
          break;
        }
    out.push_back(pick);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool satisfies_r1(const PreorderedSet& A, const std::vector<int>& sub) {
  for (int w = 0; w < A.size; ++w) {
    bool ok = false;
    for (int x : sub) ok = ok || A.leq(x, w);
    if (!ok) return false;
  }
  return true;
}

bool satisfies_r2(const PreorderedSet& A, const std::vector<int>& sub) {
  // R1 is upward closed, so dropping single elements covers every proper subset.
  for (std::size_t k = 0; k < sub.size(); ++k) {
    std::vector<int> s = sub;
    s.erase(s.begin() + static_cast<long>(k));
    if (satisfies_r1(A, s)) return false;
  }
  return true;
}

std::vector<std::vector<int>> brute_force_minimal_subsets(const PreorderedSet& A) {
  if (A.size > 20) throw ValidationError("brute force is limited to 20 elements");
  const unsigned full = 1u << A.size;
  std::vector<unsigned> below(A.size, 0);  // below[w]: mask of x with x ⪯ w
  for (int w = 0; w < A.size; ++w)
    for (int x = 0; x < A.size; ++x)
      if (A.leq(x, w)) below[w] |= 1u << x;
  std::vector<char> r1(full, 0);
  for (unsigned m = 0; m < full; ++m) {
    bool ok = true;
    for (int w = 0; w < A.size && ok; ++w) ok = (below[w] & m) != 0;
    r1[m] = ok;
  }
  std::vector<std::vector<int>> out;
  for (unsigned m = 0; m < full; ++m) {
    if (!r1[m]) continue;
    bool minimal = true;
    for (unsigned s = (m - 1) & m; minimal; s = (s - 1) & m) {
      if (r1[s]) minimal = false;
      if (s == 0) break;
    }
    if (!minimal) continue;
    std::vector<int> v;
    for (int x = 0; x < A.size; ++x)
      if (m >> x & 1u) v.push_back(x);
    out.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

bool same_boundary(const SSet& X, int n, int x, int y) {
  for (int i = 0; i <= n && n > 0; ++i)
    if (X.face(n, x, i) != X.face(n, y, i)) return false;
  return true;
}

}  // namespace

Homotopy p_homotopic(const Fibration& p, int c, int n, int x, int y, long long budget, int T) {
  const SSet& X = p.total[c];
  if (!same_boundary(X, n, x, y)) throw ValidationError("p-homotopy needs equal boundaries");
  if (p.p.comp[c](n, x) != p.p.comp[c](n, y)) throw ValidationError("p-homotopy needs equal projections");
  return prism_homotopy(X, n, x, y, &p.base[c], &p.p.comp[c], true, true, budget, T);
}

int SubPreorder::position(const GammaSimplex& s) const {
  auto it = std::lower_bound(elems.begin(), elems.end(), s);
  return it != elems.end() && *it == s ? static_cast<int>(it - elems.begin()) : -1;
}

SubPreorder sub_p_preorder(const Fibration& p, const FreeBasis& basis, int d, long long budget) {
  const FiniteCategory& C = *p.total.cat;
  if (d + 1 > p.total.truncation()) throw TruncationError("sub-p-homotopy in dimension d needs truncation d+1");
  SubPreorder S;
  S.dim = d;
  for (auto& b : basis.gens)
    if (b.dim <= d) S.elems.push_back(b);
  std::sort(S.elems.begin(), S.elems.end());
  const int K = static_cast<int>(S.elems.size());
  std::vector<std::pair<int, int>> pairs;
  std::map<std::pair<int, int>, int> via;
  for (int a = 0; a < K; ++a)
    for (int b = 0; b < K; ++b) {
      if (a == b) continue;
      const GammaSimplex &x = S.elems[a], &y = S.elems[b];
      if (x.dim != y.dim) continue;
      const int n = x.dim;
      const SSet& Y = p.total[y.obj];
      bool found = false, exhausted = false;
      for (int f : C.hom(x.obj, y.obj)) {
        int fx = p.total.act[f](n, x.idx);
        if (!same_boundary(Y, n, fx, y.idx) || p.p.comp[y.obj](n, fx) != p.p.comp[y.obj](n, y.idx)) continue;
        Homotopy h = p_homotopic(p, y.obj, n, fx, y.idx, budget);
        S.nodes += h.nodes;
        if (h.status == SearchStatus::Exhausted) exhausted = true;
        if (h.status != SearchStatus::Found) continue;
        S.links.push_back({a, b, f, h.top});
        via[{a, b}] = f;
        pairs.emplace_back(a, b);
        found = true;
        break;
      }
      if (!found && exhausted) S.unknown.emplace_back(a, b);
    }
  S.order = PreorderedSet::from_pairs(K, pairs);
  for (auto& [ab, f] : via) {
    auto it = via.find({ab.second, ab.first});
    if (it == via.end() || ab.first > ab.second) continue;
    int g = it->second;
    if (!C.is_iso(C.compose(g, f)) || !C.is_iso(C.compose(f, g))) S.ei_violations.push_back(ab);
  }
  return S;
}

MinimalityReport is_minimal(const Fibration& p, const FreeBasis& basis, int d, long long budget) {
  MinimalityReport R;
  R.dim = d;
  R.preorder = sub_p_preorder(p, basis, d, budget);
  R.violations = R.preorder.links;
  R.minimal = R.violations.empty();
  R.up_to_budget = !R.preorder.unknown.empty();
  return R;
}

// ---------------------------------------------------------------------------

namespace {

// Delta[n] x Delta[2] keyed, for the second lifting square.
struct Wedge {
  Keyed<Seq> simplex;
  Keyed<Seq> tri;
  Keyed<Pair> prod;
};

bool surjective_onto(const Seq& a, int n) {
  std::vector<char> hit(n + 1, 0);
  for (int v : a) hit[v] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
}

bool within(const Seq& w, int lo, int hi) {
  return std::all_of(w.begin(), w.end(), [&](int v) { return v == lo || v == hi; });
}

}  // namespace

MinimalModel extract_minimal(const Fibration& p, const FreeBasis& basis, int d, long long budget) {
  const CDiagram& X = p.total;
  const FiniteCategory& C = *X.cat;
  const int N = X.truncation();
  if (d < 0) throw ValidationError("dimension cap must be non-negative");
  if (d + 2 > N) throw TruncationError("extraction up to dimension d needs truncation d+2");
  if (!C.is_ei()) throw ValidationError("extraction needs an EI category");
  if (!verify_basis(X, basis.gens).basis) throw ValidationError("extraction needs a free diagram with its basis");

  MinimalModel M;
  M.dim = d;
  auto fail = [&](SearchStatus s, std::string why) {
    M.status = s;
    M.failure = std::move(why);
    return M;
  };

  // Step 1: minimal subset of the basis with degenerate representatives preferred.
  SubPreorder S = sub_p_preorder(p, basis, d, budget);
  M.nodes += S.nodes;
  if (!S.unknown.empty()) return fail(SearchStatus::Exhausted, "sub-p-homotopy preorder left pairs undecided");
  if (!S.ei_violations.empty()) return fail(SearchStatus::None, "mutually related generators via a non-invertible composite");
  std::vector<char> degenerate(S.elems.size());
  for (std::size_t k = 0; k < S.elems.size(); ++k)
    degenerate[k] = X[S.elems[k].obj].degenerate(S.elems[k].dim, S.elems[k].idx);
  for (int k : minimal_subset(S.order, degenerate)) M.sigma_prime.push_back(S.elems[k]);
  auto in_sigma_prime = [&](const GammaSimplex& s) {
    return std::binary_search(M.sigma_prime.begin(), M.sigma_prime.end(), s);
  };
  for (auto& x : M.sigma_prime)
    for (int i = 0; i <= x.dim && x.dim < d; ++i)
      if (!in_sigma_prime({x.obj, x.dim + 1, X[x.obj].degen(x.dim, x.idx, i)}))
        return fail(SearchStatus::None, "selected generators are not closed under degeneracies");

  // Steps 2-3: grow X̂ from Σ'_0, adjoining generators whose faces are inside.
  M.member.resize(C.num_objects());
  for (int c = 0; c < C.num_objects(); ++c) {
    M.member[c].resize(N + 1);
    for (int m = 0; m <= N; ++m) M.member[c][m].assign(X[c].size(m), 0);
  }
  auto adjoin = [&](const GammaSimplex& x) {
    for (int e = 0; e < C.num_objects(); ++e)
      for (int h : C.hom(x.obj, e)) {
        std::vector<int> cur{X.act[h](x.dim, x.idx)};
        for (int m = x.dim; m <= N; ++m) {
          std::vector<int> next;
          for (int s : cur) {
            if (M.member[e][m][s]) continue;
            M.member[e][m][s] = 1;
            for (int i = 0; i <= m && m < N; ++i) next.push_back(X[e].degen(m, s, i));
          }
          cur = std::move(next);
        }
      }
  };
  for (int n = 0; n <= d; ++n)
    for (auto& x : M.sigma_prime) {
      if (x.dim != n || M.member[x.obj][n][x.idx]) continue;
      bool faces_in = true;
      for (int i = 0; i <= n && n > 0 && faces_in; ++i) faces_in = M.member[x.obj][n - 1][X[x.obj].face(n, x.idx, i)];
      if (faces_in) adjoin(x);
    }
  // Above the cap, keep every simplex whose faces are inside.
  for (int m = d + 1; m <= N; ++m)
    for (int c = 0; c < C.num_objects(); ++c)
      for (int x = 0; x < X[c].size(m); ++x) {
        bool faces_in = true;
        for (int i = 0; i <= m && faces_in; ++i) faces_in = M.member[c][m - 1][X[c].face(m, x, i)];
        if (faces_in) M.member[c][m][x] = 1;
      }

  // Steps 4-5: the homotopy, one non-degenerate generator outside X̂ at a time.
  const int T = d + 1;
  std::vector<std::shared_ptr<const PrismShape>> prism(d + 1);
  std::vector<Wedge> wedge(d + 1);
  for (int n = 0; n <= d; ++n) {
    prism[n] = prism_shape(n, T);
    wedge[n].simplex = standard_simplex_keyed(n, d + 2);
    wedge[n].tri = standard_simplex_keyed(2, d + 2);
    wedge[n].prod = product_keyed(wedge[n].simplex.set, wedge[n].tri.set);
  }
  std::map<std::pair<int, int>, SMap> cell;  // (object, root) -> H on Delta[n] x Delta[1]

  auto H_at = [&](int c, int m, int x, const Seq& u) {
    auto [pos, h] = basis.witness[c][m][x];
    const GammaSimplex& b = basis.gens[pos];
    const SSet& Xb = X[b.obj];
    const SimplexRef& r = Xb.ref(m, b.idx);
    const int n = Xb.generator(r.gen).dim;
    const int root = Xb.generator_simplex(r.gen);
    Seq a = word_surjection(r.word, n);
    int v;
    if (M.member[b.obj][n][root]) {
      v = b.idx;
    } else {
      auto it = cell.find({b.obj, root});
      if (it == cell.end()) throw Error("homotopy requested on a generator not yet processed");
      const PrismShape& P = *prism[n];
      v = it->second(m, P.prism.at(m, Pair{P.simplex.at(m, a), P.interval.at(m, u)}));
    }
    return X.act[h](m, v);
  };

  for (int n = 0; n <= d; ++n)
    for (auto& z : basis.gens) {
      if (z.dim != n) continue;
      const SSet& Xc = X[z.obj];
      if (Xc.degenerate(n, z.idx) || M.member[z.obj][n][z.idx]) continue;
      const SSet& Bc = p.base[z.obj];
      const SMap& pc = p.p.comp[z.obj];
      const int pz = pc(n, z.idx);
      const PrismShape& P = *prism[n];
      const SSet& PS = P.prism.set;
      MinimalModel::CellStep step;
      step.z = z;

      // G: Delta[n] x Delta[1] -> X, H on the boundary, z at the end 1.
      std::vector<char> small(PS.num_generators(), 0);
      std::vector<int> partial(PS.num_generators(), -1), base(PS.num_generators(), -1);
      for (int g = 0; g < PS.num_generators(); ++g) {
        const int m = PS.generator(g).dim, idx = PS.generator_simplex(g);
        Seq a = P.seq_a(m, idx), u = P.seq_u(m, idx);
        base[g] = Bc.apply_monotone(a, n, pz);
        if (within(u, 1, 1)) {
          small[g] = 1;
          partial[g] = Xc.apply_monotone(a, n, z.idx);
        } else if (!surjective_onto(a, n)) {
          small[g] = 1;
          partial[g] = H_at(z.obj, m, Xc.apply_monotone(a, n, z.idx), u);
        }
      }
      SMap gbase = map_from_generators(PS, Bc, base);
      LiftingProblem pg;
      pg.inclusion = CellInclusion::make(PS, small);
      pg.X = &Xc;
      pg.B = &Bc;
      pg.p = &pc;
      pg.base = &gbase;
      pg.partial = partial;
      LiftResult G = solve(pg, budget);
      M.nodes += G.nodes;
      if (G.status != SearchStatus::Found)
        return fail(G.status, "no homotopy lift for generator " + Xc.simplex_string(n, z.idx));
      Seq id(n + 1), zeros(n + 1, 0);
      for (int i = 0; i <= n; ++i) id[i] = i;
      step.z1 = G.map(n, P.prism.at(n, Pair{P.simplex.at(n, id), P.interval.at(n, zeros)}));

      // F: z1 ≃_p y rel boundary with y in X̂.
      Homotopy F;
      bool exhausted = false;
      for (int y = 0; y < Xc.size(n) && step.y < 0; ++y) {
        if (!M.member[z.obj][n][y] || !same_boundary(Xc, n, y, step.z1) || pc(n, y) != pc(n, step.z1)) continue;
        Homotopy h = prism_homotopy(Xc, n, step.z1, y, &Bc, &pc, true, true, budget, T);
        M.nodes += h.nodes;
        if (h.status == SearchStatus::Exhausted) exhausted = true;
        if (h.status == SearchStatus::Found) {
          step.y = y;
          F = std::move(h);
        }
      }
      if (step.y < 0)
        return fail(exhausted ? SearchStatus::Exhausted : SearchStatus::None,
                    "no representative in the retract for " + Xc.simplex_string(n, step.z1));

      // J: Delta[n] x Delta[2] -> X with (-, G, F) on the horn and H(1 x s^0) on the boundary.
      const Wedge& W = wedge[n];
      const SSet& WS = W.prod.set;
      std::vector<char> wsmall(WS.num_generators(), 0);
      std::vector<int> wpartial(WS.num_generators(), -1), wbase(WS.num_generators(), -1);
      for (int g = 0; g < WS.num_generators(); ++g) {
        const int m = WS.generator(g).dim, idx = WS.generator_simplex(g);
        auto [ai, wi] = W.prod.key[m][idx];
        const Seq& a = W.simplex.key[m][ai];
        const Seq& w = W.tri.key[m][wi];
        wbase[g] = Bc.apply_monotone(a, n, pz);
        if (!surjective_onto(a, n)) {
          Seq u(w.size());
          for (std::size_t q = 0; q < w.size(); ++q) u[q] = w[q] == 2 ? 1 : 0;
          wsmall[g] = 1;
          wpartial[g] = H_at(z.obj, m, Xc.apply_monotone(a, n, z.idx), u);
        } else if (within(w, 0, 1)) {
          wsmall[g] = 1;
          wpartial[g] = F.map(m, P.prism.at(m, Pair{P.simplex.at(m, a), P.interval.at(m, w)}));
        } else if (within(w, 0, 2)) {
          Seq u(w.size());
          for (std::size_t q = 0; q < w.size(); ++q) u[q] = w[q] / 2;
          wsmall[g] = 1;
          wpartial[g] = G.map(m, P.prism.at(m, Pair{P.simplex.at(m, a), P.interval.at(m, u)}));
        }
      }
      SMap jbase = map_from_generators(WS, Bc, wbase);
      LiftingProblem pj;
      pj.inclusion = CellInclusion::make(WS, wsmall);
      pj.X = &Xc;
      pj.B = &Bc;
      pj.p = &pc;
      pj.base = &jbase;
      pj.partial = wpartial;
      LiftResult J = solve(pj, budget);
      M.nodes += J.nodes;
      if (J.status != SearchStatus::Found)
        return fail(J.status, "no filler joining the homotopies for " + Xc.simplex_string(n, z.idx));

      // H_z = J o (1 x d^0).
      SMap Hz;
      Hz.level.resize(T + 1);
      for (int m = 0; m <= T; ++m)
        for (int idx = 0; idx < PS.size(m); ++idx) {
          Seq a = P.seq_a(m, idx), u = P.seq_u(m, idx);
          for (int& v : u) v += 1;
          Hz.level[m].push_back(J.map(m, W.prod.at(m, Pair{W.simplex.at(m, a), W.tri.at(m, u)})));
        }
      for (int j = 0; j <= n; ++j) step.top.push_back(Hz(n + 1, P.top(j)));
      cell.emplace(std::make_pair(z.obj, z.idx), std::move(Hz));
      M.steps.push_back(std::move(step));
    }

  // Assemble H and r on X up to the cap.
  M.interval = standard_simplex_keyed(1, d);
  for (int c = 0; c < C.num_objects(); ++c) {
    std::vector<std::vector<char>> all(d + 1);
    for (int m = 0; m <= d; ++m) all[m].assign(X[c].size(m), 1);
    Keyed<int> Xd = subcomplex(X[c], all, d);
    Keyed<Pair> cyl = product_keyed(Xd.set, M.interval.set);
    for (int m = 0; m <= d; ++m)
      for (auto& k : cyl.key[m]) k.first = Xd.key[m][k.first];
    for (int m = 0; m <= d; ++m) {
      cyl.index[m].clear();
      for (int i = 0; i < static_cast<int>(cyl.key[m].size()); ++i) cyl.index[m].emplace(cyl.key[m][i], i);
    }
    SMap H, r;
    H.level.resize(d + 1);
    r.level.resize(d + 1);
    for (int m = 0; m <= d; ++m) {
      for (auto& [x, ui] : cyl.key[m]) H.level[m].push_back(H_at(c, m, x, M.interval.key[m][ui]));
      for (int x = 0; x < X[c].size(m); ++x) r.level[m].push_back(H_at(c, m, x, Seq(m + 1, 0)));
    }
    M.cylinder.push_back(std::move(cyl));
    M.homotopy.push_back(std::move(H));
    M.retraction.push_back(std::move(r));
  }

  // The retract as a fibration over the same base.
  M.sub.base = p.base;
  M.sub.total.cat = X.cat;
  for (int c = 0; c < C.num_objects(); ++c) {
    M.sub_keys.push_back(subcomplex(X[c], M.member[c], N));
    M.sub.total.at.push_back(std::make_shared<const SSet>(M.sub_keys.back().set));
  }
  for (int f = 0; f < C.num_morphisms(); ++f) {
    const Morphism& mo = C.morphism(f);
    SMap a;
    a.level.resize(N + 1);
    for (int m = 0; m <= N; ++m)
      for (int x : M.sub_keys[mo.src].key[m]) a.level[m].push_back(M.sub_keys[mo.dst].at(m, X.act[f](m, x)));
    M.sub.total.act.push_back(std::move(a));
  }
  for (int c = 0; c < C.num_objects(); ++c) {
    SMap q;
    q.level.resize(N + 1);
    for (int m = 0; m <= N; ++m)
      for (int x : M.sub_keys[c].key[m]) q.level[m].push_back(p.p.comp[c](m, x));
    M.sub.p.comp.push_back(std::move(q));
  }
  M.sub.validate();
  BasisReport br = compute_basis(M.sub.total);
  if (!br.basis) return fail(SearchStatus::None, "retract is not free: " + br.reason);
  M.sub_basis = std::move(*br.basis);
  for (auto& b : M.sub_basis.gens) {
    if (b.dim > d) continue;
    GammaSimplex in_x{b.obj, b.dim, M.sub_keys[b.obj].key[b.dim][b.idx]};
    if (!in_sigma_prime(in_x)) return fail(SearchStatus::None, "retract basis leaves the selected generators");
  }
  if (auto bad = model_defect(p, M)) return fail(SearchStatus::None, "model check failed: " + *bad);
  M.status = SearchStatus::Found;
  return M;
}

std::optional<std::string> model_defect(const Fibration& p, const MinimalModel& M) {
  const CDiagram& X = p.total;
  const FiniteCategory& C = *X.cat;
  const int d = M.dim;
  if (static_cast<int>(M.homotopy.size()) != C.num_objects()) return "homotopy missing";
  for (int c = 0; c < C.num_objects(); ++c) {
    const SMap& H = M.homotopy[c];
    const Keyed<Pair>& cyl = M.cylinder[c];
    if (auto e = map_defect(cyl.set, X[c], H)) return "homotopy at " + C.object(c) + " is not simplicial: " + *e;
    for (int m = 0; m <= d; ++m)
      for (int idx = 0; idx < cyl.set.size(m); ++idx) {
        auto [x, ui] = cyl.key[m][idx];
        const Seq& u = M.interval.key[m][ui];
        int v = H(m, idx);
        bool at0 = std::all_of(u.begin(), u.end(), [](int t) { return t == 0; });
        bool at1 = std::all_of(u.begin(), u.end(), [](int t) { return t == 1; });
        if (at1 && v != x) return "H_1 is not the identity at " + X[c].simplex_string(m, x);
        if (at0 && !M.member[c][m][v]) return "H_0 leaves the retract at " + X[c].simplex_string(m, x);
        if (at0 && M.retraction[c](m, x) != v) return "retraction differs from H_0";
        if (M.member[c][m][x] && v != x) return "H moves a simplex of the retract";
        if (p.p.comp[c](m, v) != p.p.comp[c](m, x)) return "p o H is not constant";
      }
    for (int m = 0; m <= d; ++m)
      for (int x = 0; x < X[c].size(m); ++x)
        if (M.member[c][m][x] && M.retraction[c](m, x) != x) return "retraction is not the identity on the retract";
  }
  for (int f = 0; f < C.num_morphisms(); ++f) {
    const Morphism& mo = C.morphism(f);
    for (int m = 0; m <= d; ++m)
      for (int idx = 0; idx < M.cylinder[mo.src].set.size(m); ++idx) {
        auto [x, ui] = M.cylinder[mo.src].key[m][idx];
        int img = M.cylinder[mo.dst].at(m, Pair{X.act[f](m, x), ui});
        if (M.homotopy[mo.dst](m, img) != X.act[f](m, M.homotopy[mo.src](m, idx)))
          return "homotopy is not natural for '" + mo.name + "'";
      }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

IsoResult minimal_iso(const Fibration& p, const Fibration& q, long long budget) {
  const FiniteCategory& C = *p.total.cat;
  if (q.total.cat->num_objects() != C.num_objects() || q.total.cat->num_morphisms() != C.num_morphisms())
    throw ValidationError("fibrations live over different categories");
  for (int c = 0; c < C.num_objects(); ++c) {
    const SSet &a = p.base[c], &b = q.base[c];
    const int L = std::min({a.truncation(), b.truncation(), p.total.truncation(), q.total.truncation()});
    for (int n = 0; n <= L; ++n) {
      if (a.size(n) != b.size(n)) throw ValidationError("fibrations have different bases");
      for (int x = 0; x < a.size(n) && n > 0; ++x)
        for (int i = 0; i <= n; ++i)
          if (a.face(n, x, i) != b.face(n, x, i)) throw ValidationError("fibrations have different bases");
    }
  }
  HomSearch opts;
  opts.over_source = &p;
  opts.over_target = &q;
  opts.bijective = true;
  opts.budget = budget;
  opts.max_results = 1;
  HomResult r = enumerate_maps(p.total, q.total, opts);
  IsoResult out;
  out.nodes = r.nodes;
  out.status = r.status;
  if (r.status == SearchStatus::Found) out.iso = r.maps.front();
  return out;
}

Relabeled relabel_generators(const Fibration& p, std::uint32_t seed, const std::string& prefix) {
  const CDiagram& X = p.total;
  const FiniteCategory& C = *X.cat;
  const int N = X.truncation();
  std::mt19937 rng(seed);
  Relabeled out;
  out.fibration.base = p.base;
  out.fibration.total.cat = X.cat;
  out.to_new.resize(C.num_objects());
  for (int c = 0; c < C.num_objects(); ++c) {
    const SSet& S = X[c];
    std::vector<int> order(S.num_generators());
    for (int g = 0; g < S.num_generators(); ++g) order[g] = g;
    // Generators are stored dimension-sorted, so shuffling within runs keeps that.
    for (int lo = 0; lo < S.num_generators();) {
      int hi = lo;
      while (hi < S.num_generators() && S.generator(hi).dim == S.generator(lo).dim) ++hi;
      std::shuffle(order.begin() + lo, order.begin() + hi, rng);
      lo = hi;
    }
    std::vector<int> new_of(S.num_generators());
    for (int k = 0; k < S.num_generators(); ++k) new_of[order[k]] = k;
    std::vector<Generator> gens;
    for (int k = 0; k < S.num_generators(); ++k) {
      Generator g = S.generator(order[k]);
      g.name = prefix + g.name;
      for (auto& f : g.faces) f.gen = new_of[f.gen];
      gens.push_back(std::move(g));
    }
    auto T = std::make_shared<const SSet>(SSet::from_presentation(N, std::move(gens)));
    out.to_new[c].resize(N + 1);
    for (int n = 0; n <= N; ++n)
      for (int x = 0; x < S.size(n); ++x) {
        SimplexRef r = S.ref(n, x);
        r.gen = new_of[r.gen];
        out.to_new[c][n].push_back(T->index(n, r));
      }
    out.fibration.total.at.push_back(std::move(T));
  }
  auto translate = [&](const SMap& f, int src, const std::vector<std::vector<int>>* dst) {
    SMap g;
    g.level.resize(f.level.size());
    for (std::size_t n = 0; n < f.level.size(); ++n) {
      g.level[n].assign(f.level[n].size(), -1);
      for (std::size_t x = 0; x < f.level[n].size(); ++x)
        g.level[n][out.to_new[src][n][x]] = dst ? (*dst)[n][f.level[n][x]] : f.level[n][x];
    }
    return g;
  };
  for (int f = 0; f < C.num_morphisms(); ++f)
    out.fibration.total.act.push_back(translate(X.act[f], C.morphism(f).src, &out.to_new[C.morphism(f).dst]));
  for (int c = 0; c < C.num_objects(); ++c) out.fibration.p.comp.push_back(translate(p.p.comp[c], c, nullptr));
  out.fibration.validate();
  return out;
}

}  // namespace mfib
