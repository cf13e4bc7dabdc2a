// One PASS/FAIL line per acceptance criterion, with wall time against a
// pinned limit. Exit status 0 iff the set of failing criteria equals the
// --known-fail list, so a regression or an unexpected pass both show up.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mfib/commands.hpp"

using namespace mfib;
using io::json;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

std::shared_ptr<const FiniteCategory> share(FiniteCategory C) { return std::make_shared<const FiniteCategory>(std::move(C)); }
std::shared_ptr<const SSet> share(SSet X) { return std::make_shared<const SSet>(std::move(X)); }

Fibration over_point_of(std::shared_ptr<const FiniteCategory> cat, SSet X) {
  return over_point(CDiagram::constant_diagram(std::move(cat), share(std::move(X))));
}

// ---------------------------------------------------------------- 1

// Every instance of the face/degeneracy identities, straight from the tables.
long long identity_violations(const SSet& X, long long& instances) {
  long long bad = 0;
  auto expect = [&](bool ok) {
    ++instances;
    if (!ok) ++bad;
  };
  const int N = X.truncation();
  for (int n = 0; n <= N; ++n)
    for (int x = 0; x < X.size(n); ++x) {
      if (n >= 2)
        for (int j = 1; j <= n; ++j)
          for (int i = 0; i < j; ++i) expect(X.face(n - 1, X.face(n, x, j), i) == X.face(n - 1, X.face(n, x, i), j - 1));
      if (n + 1 <= N) {
        for (int j = 0; j <= n; ++j) {
          int s = X.degen(n, x, j);
          for (int i = 0; i <= n + 1; ++i) {
            int lhs = X.face(n + 1, s, i);
            if (i == j || i == j + 1)
              expect(lhs == x);
            else if (i < j)
              expect(lhs == X.degen(n - 1, X.face(n, x, i), j - 1));
            else
              expect(lhs == X.degen(n - 1, X.face(n, x, i - 1), j));
          }
        }
      }
      if (n + 2 <= N)
        for (int j = 0; j <= n; ++j)
          for (int i = 0; i <= j; ++i)
            expect(X.degen(n + 1, X.degen(n, x, j), i) == X.degen(n + 1, X.degen(n, x, i), j + 1));
    }
  return bad;
}

Outcome simplicial_identities() {
  std::vector<std::pair<std::string, SSet>> corpus;
  for (int n = 0; n <= 3; ++n) corpus.emplace_back("simplex " + std::to_string(n), standard_simplex(n, 4));
  corpus.emplace_back("boundary 2", boundary(2, 4));
  for (int k = 0; k <= 2; ++k) corpus.emplace_back("horn 2," + std::to_string(k), horn(2, k, 4));
  corpus.emplace_back("nerve Z/2", group_nerve(FiniteGroup::cyclic(2), 4));
  corpus.emplace_back("nerve Z/3", group_nerve(FiniteGroup::cyclic(3), 4));
  corpus.emplace_back("E(Z/2)", codiscrete_nerve(2, 3));
  corpus.emplace_back("circle", circle(4));
  long long instances = 0, bad = 0;
  std::string which;
  for (auto& [name, X] : corpus) {
    long long b = identity_violations(X, instances);
    if (X.check_identities()) ++b;
    if (b) which += " " + name;
    bad += b;
  }
  return {bad == 0, std::to_string(corpus.size()) + " sets, " + std::to_string(instances) + " instances" +
                        (bad ? ", violations in" + which : "")};
}

// ---------------------------------------------------------------- 2

// Degeneracy closure, existence and uniqueness of (b, h) witnesses, by counting.
std::string basis_axioms(const CDiagram& X, const FreeBasis& B) {
  const FiniteCategory& C = *X.cat;
  std::set<GammaSimplex> in(B.gens.begin(), B.gens.end());
  for (const auto& b : B.gens)
    if (b.dim + 1 <= X.truncation())
      for (int i = 0; i <= b.dim; ++i)
        if (!in.count(GammaSimplex{b.obj, b.dim + 1, X[b.obj].degen(b.dim, b.idx, i)})) return "not degeneracy-closed";
  std::map<GammaSimplex, int> hits;
  for (const auto& b : B.gens)
    for (int d = 0; d < C.num_objects(); ++d)
      for (int h : C.hom(b.obj, d)) ++hits[GammaSimplex{d, b.dim, X.act[h](b.dim, b.idx)}];
  for (int c = 0; c < C.num_objects(); ++c)
    for (int n = 0; n <= X.truncation(); ++n)
      for (int x = 0; x < X[c].size(n); ++x) {
        int k = hits[GammaSimplex{c, n, x}];
        if (k == 0) return "simplex without witness";
        if (k > 1) return "simplex with two witnesses";
      }
  return {};
}

Outcome basis_criterion() {
  std::vector<std::pair<std::string, std::shared_ptr<const FiniteCategory>>> cats{
      {"point", share(FiniteCategory::trivial())},
      {"arrow", share(FiniteCategory::arrow())},
      {"B(Z/2)", share(FiniteCategory::from_group(FiniteGroup::cyclic(2)))}};
  int checked = 0;
  for (auto& [name, cat] : cats)
    for (int n = 0; n <= 3; ++n) {
      FreeDiagram D = delta(cat, 0, n, 3);
      BasisReport r = compute_basis(D.diagram);
      if (!r.basis) return {false, "no basis for delta_" + std::to_string(n) + " over " + name};
      std::string why = basis_axioms(D.diagram, *r.basis);
      if (!why.empty()) return {false, why + " for delta_" + std::to_string(n) + " over " + name};
      ++checked;
    }
  // A trivial Z/2-action does have a fixed simplex, so freeness fails there.
  CDiagram KG = CDiagram::constant_diagram(cats[2].second, share(point(2)));
  bool group_refuted = !compute_basis(KG).basis;
  // The constant diagram over a -> b: the claimed refutation.
  CDiagram K = CDiagram::constant_diagram(cats[1].second, share(circle(3)));
  BasisReport rk = compute_basis(K);
  std::ostringstream s;
  s << checked << " bases verified; constant over B(Z/2) " << (group_refuted ? "refuted" : "NOT refuted");
  if (rk.basis) {
    std::string why = basis_axioms(K, *rk.basis);
    s << "; constant over a->b is free (" << rk.basis->gens.size() << " generators at a, axioms "
      << (why.empty() ? "hold" : "fail: " + why) << "), so it cannot be refuted";
    return {false, s.str()};
  }
  return {group_refuted, s.str() + "; constant over a->b refuted"};
}

// ---------------------------------------------------------------- 3

// The model file re-validates: Kan, free with the reported basis, minimal,
// and a second extraction changes nothing.
std::string revalidate_model(const cmd::Report& r, int dim) {
  io::Loader L;
  Fibration m = L.fibration(L.parse_text(r.body["outputs"]["model.json"].dump(), "model.json"));
  if (cmd::fibration_check(m, dim).status != cmd::Status::Ok) return "model is not a fibration";
  cmd::Report again = cmd::minimal_model(m, dim, 1000000);
  if (again.status != cmd::Status::Ok) return "re-extraction failed";
  if (!again.body["witnesses"]["steps"].empty()) return "model not stable under re-extraction";
  if (again.body["witnesses"]["model"] != r.body["witnesses"]["model"]) return "re-extraction changed the model";
  return {};
}

Outcome minimal_models() {
  auto T = share(FiniteCategory::trivial());
  Fibration E = over_point_of(T, codiscrete_nerve(2, 4));
  cmd::Report e = cmd::minimal_model(E, 2, 1000000);
  if (e.status != cmd::Status::Ok) return {false, "E(Z/2): " + e.body["verdict"].get<std::string>()};
  json sizes = e.body["witnesses"]["model"]["*"]["simplices"];
  if (sizes != json::array({1, 1, 1, 1, 1})) return {false, "E(Z/2) model is not a point: " + sizes.dump()};
  if (auto why = revalidate_model(e, 2); !why.empty()) return {false, "E(Z/2): " + why};

  Fibration BZ2 = over_point_of(T, group_nerve(FiniteGroup::cyclic(2), 4));
  cmd::Report b = cmd::minimal_model(BZ2, 2, 1000000);
  if (b.status != cmd::Status::Ok) return {false, "BZ/2: " + b.body["verdict"].get<std::string>()};
  if (b.body["witnesses"]["model"] != b.body["witnesses"]["input"]) return {false, "BZ/2 model differs from the input"};
  if (!b.body["witnesses"]["steps"].empty()) return {false, "BZ/2 extraction moved cells"};
  if (auto why = revalidate_model(b, 2); !why.empty()) return {false, "BZ/2: " + why};
  return {true, "E(Z/2) -> one point (" + std::to_string(e.body["witnesses"]["nodes"].get<long long>()) +
                    " nodes), BZ/2 unchanged, both certificates re-validate"};
}

// ---------------------------------------------------------------- 4

Outcome uniqueness() {
  auto T = share(FiniteCategory::trivial());
  auto A = share(FiniteCategory::arrow());
  std::vector<std::pair<std::string, Fibration>> inputs{
      {"E(Z/2)", over_point_of(T, codiscrete_nerve(2, 4))},
      {"E(Z/3)", over_point_of(T, codiscrete_nerve(3, 4))},
      {"BZ/2", over_point_of(T, group_nerve(FiniteGroup::cyclic(2), 4))}};
  FreeDiagram FA = free_diagram_from(A, 0, codiscrete_nerve(2, 4));
  inputs.emplace_back("E(Z/2) free over a->b", over_point(FA.diagram));
  int pairs = 0;
  for (auto& [name, p] : inputs) {
    auto br = compute_basis(p.total);
    if (!br.basis) return {false, name + ": no basis"};
    MinimalModel a = extract_minimal(p, *br.basis, 2, 1000000);
    if (a.status != SearchStatus::Found) return {false, name + ": extraction failed"};
    for (std::uint32_t seed : {1u, 2u, 3u}) {
      Relabeled R = relabel_generators(p, seed);
      auto rb = compute_basis(R.fibration.total);
      if (!rb.basis) return {false, name + ": relabeled input has no basis"};
      MinimalModel b = extract_minimal(R.fibration, *rb.basis, 2, 1000000);
      if (b.status != SearchStatus::Found) return {false, name + ": relabeled extraction failed"};
      if (minimal_iso(a.sub, b.sub, 0).status != SearchStatus::Found)
        return {false, name + ": models not isomorphic for seed " + std::to_string(seed)};
      ++pairs;
    }
  }
  return {true, std::to_string(pairs) + " relabeled pairs isomorphic"};
}

// ---------------------------------------------------------------- 5

Outcome preorders() {
  std::mt19937 rng(5);
  const int trials = 600;
  int with_preference = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 10)(rng);
    const double density = std::uniform_real_distribution<double>(0.0, 0.4)(rng);
    std::bernoulli_distribution edge(density), pref(0.3);
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b && edge(rng)) pairs.emplace_back(a, b);
    auto A = PreorderedSet::from_pairs(n, pairs);
    std::vector<char> preferred(n);
    for (auto& p : preferred) p = pref(rng);
    std::vector<int> S = minimal_subset(A, preferred);

    // R1 for a bitmask, from the relation directly.
    auto r1 = [&](unsigned mask) {
      for (int x = 0; x < n; ++x) {
        bool covered = false;
        for (int s = 0; s < n && !covered; ++s) covered = (mask >> s & 1u) && A.leq(s, x);
        if (!covered) return false;
      }
      return true;
    };
    // R1 is upward closed, so R2 only needs single removals.
    auto r2 = [&](unsigned mask) {
      for (int s = 0; s < n; ++s)
        if ((mask >> s & 1u) && r1(mask & ~(1u << s))) return false;
      return true;
    };
    std::set<unsigned> oracle;
    for (unsigned m = 0; m < (1u << n); ++m)
      if (r1(m) && r2(m)) oracle.insert(m);
    unsigned got = 0;
    for (int s : S) got |= 1u << s;
    if (!oracle.count(got)) return {false, "trial " + std::to_string(trial) + ": output violates R1/R2"};
    std::set<unsigned> library;
    for (const auto& sub : brute_force_minimal_subsets(A)) {
      unsigned m = 0;
      for (int s : sub) m |= 1u << s;
      library.insert(m);
    }
    if (library != oracle) return {false, "trial " + std::to_string(trial) + ": library brute force disagrees"};
    if (!satisfies_r1(A, S) || !satisfies_r2(A, S)) return {false, "trial " + std::to_string(trial) + ": R1/R2 predicates"};
    // Each chosen element's class: prefer a flagged member when one exists.
    for (int s : S) {
      bool admits = false;
      for (int y = 0; y < n; ++y) admits |= A.equivalent(s, y) && preferred[y];
      if (admits) {
        ++with_preference;
        if (!preferred[s]) return {false, "trial " + std::to_string(trial) + ": preference ignored"};
      }
    }
  }
  return {true, std::to_string(trials) + " preorders (|A| <= 10), " + std::to_string(with_preference) +
                    " classes with a preferred member"};
}

// ---------------------------------------------------------------- 6

GroupAction swap_action(std::shared_ptr<const FiniteCategory> cat, int N) {
  auto G = std::make_shared<const SimplicialGroup>(SimplicialGroup::constant(FiniteGroup::cyclic(2), N));
  auto F = CDiagram::constant_diagram(cat, share(discrete_set(2, N)));
  const int k = cat->num_objects();
  std::vector<std::vector<std::vector<int>>> images(2);
  for (int c = 0; c < k; ++c) {
    images[0].push_back({0, 1});
    images[1].push_back({1, 0});
  }
  return GroupAction::from_generators(G, F, images);
}

Outcome tcp_round_trip() {
  const int N = 3;
  std::vector<std::pair<std::string, SSet>> bases{{"interval", standard_simplex(1, N)}, {"circle", circle(N)}};
  std::vector<std::pair<std::string, std::shared_ptr<const FiniteCategory>>> cats{{"point", share(FiniteCategory::trivial())},
                                                                                   {"arrow", share(FiniteCategory::arrow())}};
  int cases = 0;
  for (auto& [bname, B] : bases)
    for (auto& [cname, cat] : cats) {
      GroupAction A = swap_action(cat, N);
      const SimplicialGroup& G = *A.group;
      // The edge generator: "e" on the circle, the top simplex of the interval.
      const int edge_gen = B.num_generators() - 1;
      for (int g : {0, 1}) {
        std::string where = bname + "/" + cname + "/t(e)=" + (g ? "g" : "e");
        std::vector<int> vals(B.num_generators(), 0);
        vals[edge_gen] = g;
        TwistingFunction t = twisting_from_generators(B, G, N, vals);
        if (twisting_defect(B, G, t)) return {false, where + ": not a twisting function"};
        Tcp X = build_tcp(B, t, A);
        if (auto d = X.bundle.total.defect()) return {false, where + ": naturality " + *d};
        try {
          X.bundle.validate();
        } catch (const Error& e) {
          return {false, where + ": projection " + e.what()};
        }
        if (!is_fibration_upto(X.bundle, 2).ok) return {false, where + ": not a fibration at dim 2"};
        Atlas at = tautological_atlas(X, B, t, A);
        if (auto d = atlas_defect(at, X.bundle, A)) return {false, where + ": atlas " + *d};
        TransformationElements xi = transformation_elements(at, B, A);
        if (xi.status != SearchStatus::Found || xi0_twisting(xi) != t) return {false, where + ": xi^0 differs from t"};
        // Over the circle the double cover is connected iff t(e) = g; over the
        // interval it always splits.
        const int expect = bname == "circle" && g ? 1 : 2;
        for (int c = 0; c < cat->num_objects(); ++c)
          if (connected_components(X.bundle.total[c]) != expect) return {false, where + ": wrong component count"};
        ++cases;
      }
    }
  return {true, std::to_string(cases) + " bundles: natural, Kan at dim 2, xi^0 = t, connectivity as predicted"};
}

// ---------------------------------------------------------------- 7

// Twisting functions on B up to dim d, by trying every assignment.
int brute_force_twistings(const SSet& B, const SimplicialGroup& G, int d) {
  TwistingFunction t;
  t.value.resize(d + 1);
  std::vector<std::pair<int, int>> slots;
  for (int n = 1; n <= d; ++n) {
    t.value[n].assign(B.size(n), 0);
    for (int v = 0; v < B.size(n); ++v) slots.emplace_back(n, v);
  }
  int count = 0;
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (k == slots.size()) {
      count += !twisting_defect(B, G, t);
      return;
    }
    auto [n, v] = slots[k];
    for (int g = 0; g < G.level(n - 1).order(); ++g) {
      t.value[n][v] = g;
      go(k + 1);
    }
  };
  go(0);
  return count;
}

// Simplicial maps B -> W up to dim d, by trying every level function.
int brute_force_maps(const SSet& B, const SSet& W, int d) {
  std::vector<std::vector<int>> f(d + 1);
  std::vector<std::pair<int, int>> slots;
  for (int n = 0; n <= d; ++n) {
    f[n].assign(B.size(n), 0);
    for (int v = 0; v < B.size(n); ++v) slots.emplace_back(n, v);
  }
  auto ok = [&] {
    for (int n = 0; n <= d; ++n)
      for (int v = 0; v < B.size(n); ++v) {
        for (int i = 0; n > 0 && i <= n; ++i)
          if (f[n - 1][B.face(n, v, i)] != W.face(n, f[n][v], i)) return false;
        for (int i = 0; n < d && i <= n; ++i)
          if (f[n + 1][B.degen(n, v, i)] != W.degen(n, f[n][v], i)) return false;
      }
    return true;
  };
  int count = 0;
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (k == slots.size()) {
      count += ok();
      return;
    }
    auto [n, v] = slots[k];
    for (int w = 0; w < W.size(n); ++w) {
      f[n][v] = w;
      go(k + 1);
    }
  };
  go(0);
  return count;
}

Outcome classification() {
  const int d = 2;
  GroupAction A = swap_action(share(FiniteCategory::trivial()), d);
  SSet S = circle(d);
  ClassifyReport r = classify(S, A, d, 0);
  if (r.status != SearchStatus::Found) return {false, "classification search did not finish"};
  const int tw = brute_force_twistings(S, *A.group, d);
  Wbar W = wbar(*A.group, d);
  const int maps = brute_force_maps(S, W.set.set, d);
  std::ostringstream s;
  s << r.twisting_classes << " twisting classes of " << r.twistings.size() << " (brute force " << tw << "), "
    << r.map_classes << " map classes of " << r.maps.size() << " (brute force " << maps << ")"
    << (r.bijection ? ", bijection confirmed" : ", NO bijection");
  bool ok = r.twisting_classes == 2 && r.map_classes == 2 && r.bijection && r.tcp_isos_ok &&
            static_cast<int>(r.twistings.size()) == tw && static_cast<int>(r.maps.size()) == maps;
  return {ok, s.str()};
}

// ---------------------------------------------------------------- 8

struct Corpus {
  std::string name;
  SSet base;
  Fibration p;
  int vertex;                  // simplex index of a vertex of the base
  std::vector<int> edge_gens;  // generator values of Delta[1] -> base
};

Fibration product_over(std::shared_ptr<const FiniteCategory> cat, const SSet& B, const SSet& F) {
  auto prod = product_keyed(B, F);
  Fibration p;
  p.total = CDiagram::constant_diagram(cat, share(prod.set));
  p.base = CDiagram::constant_diagram(cat, share(B));
  SMap pr;
  for (auto& lvl : prod.key) {
    pr.level.emplace_back();
    for (auto& k : lvl) pr.level.back().push_back(k.first);
  }
  p.p.comp.assign(cat->num_objects(), pr);
  return p;
}

Outcome pullbacks() {
  const int N = 3;
  auto T = share(FiniteCategory::trivial());
  auto Ar = share(FiniteCategory::arrow());
  std::vector<Corpus> corpus;
  SSet S = circle(N);
  const int v = S.generator_simplex(S.generator_by_name("v"));
  const int e = S.generator_simplex(S.generator_by_name("e"));
  SSet I = standard_simplex(1, N);
  const int a = I.generator_simplex(0), b = I.generator_simplex(1), u = I.generator_simplex(2);
  for (auto cat : {T, Ar}) {
    GroupAction A = swap_action(cat, N);
    std::vector<int> vals(S.num_generators(), 0);
    vals[S.generator_by_name("e")] = 1;
    std::string suffix = cat == T ? "" : " over a->b";
    corpus.push_back({"double cover of the circle" + suffix, S, build_tcp(S, twisting_from_generators(S, *A.group, N, vals), A).bundle, v, {v, v, e}});
    std::vector<int> ivals(I.num_generators(), 0);
    ivals[2] = 1;
    corpus.push_back({"twisted cover of the interval" + suffix, I, build_tcp(I, twisting_from_generators(I, *A.group, N, ivals), A).bundle, b, {a, b, u}});
  }
  corpus.push_back({"circle x BZ/2", S, product_over(T, S, group_nerve(FiniteGroup::cyclic(2), N)), v, {v, v, e}});
  corpus.push_back({"interval x point", I, product_over(T, I, point(N)), a, {a, b, u}});
  SSet P = point(N);
  corpus.push_back({"BZ/2 over a point", P, product_over(T, P, group_nerve(FiniteGroup::cyclic(2), N)), 0, {0, 0, P.degen(0, 0, 0)}});

  const int d = 2;
  int checked = 0;
  SSet pt = point(N), edge = standard_simplex(1, N);
  for (auto& c : corpus) {
    auto br = compute_basis(c.p.total);
    if (!br.basis) return {false, c.name + ": total not free"};
    if (!is_minimal(c.p, *br.basis, d, 100000).minimal) return {false, c.name + ": input not minimal"};
    std::vector<std::pair<std::string, SMap>> along{{"vertex", map_from_generators(pt, c.base, {c.vertex})},
                                                    {"edge", map_from_generators(edge, c.base, c.edge_gens)}};
    for (auto& [kind, alpha] : along) {
      const SSet& src = kind == "vertex" ? pt : edge;
      Pullback pb = pullback_constant_base(src, alpha, c.p, &*br.basis);
      if (!pb.basis) return {false, c.name + " along " + kind + ": no basis"};
      if (static_cast<long long>(pb.basis->gens.size()) != pb.predicted_size)
        return {false, c.name + " along " + kind + ": basis size " + std::to_string(pb.basis->gens.size()) + " vs predicted " +
                           std::to_string(pb.predicted_size)};
      // Independent count of the prediction: pairs (u, x) with alpha(u) = p(x).
      long long pairs = 0;
      for (const auto& g : br.basis->gens) {
        int px = c.p.p.comp[g.obj](g.dim, g.idx);
        for (int w = 0; w < src.size(g.dim); ++w) pairs += alpha(g.dim, w) == px;
      }
      if (pairs != pb.predicted_size) return {false, c.name + " along " + kind + ": prediction miscounted"};
      MinimalityReport mr = is_minimal(pb.fibration, *pb.basis, d, 100000);
      if (!mr.minimal) return {false, c.name + " along " + kind + ": pullback not minimal"};
      ++checked;
    }
  }
  // Control: a non-minimal fibration must be caught by the same check.
  Fibration E = over_point_of(T, codiscrete_nerve(2, N));
  auto eb = compute_basis(E.total);
  if (!eb.basis || is_minimal(E, *eb.basis, d, 100000).minimal) return {false, "control: E(Z/2) reported minimal"};
  return {true, std::to_string(checked) + " pullbacks of " + std::to_string(corpus.size()) +
                    " minimal fibrations minimal with predicted basis size"};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known_fail;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--known-fail" && i + 1 < argc) {
      std::stringstream s(argv[++i]);
      std::string item;
      while (std::getline(s, item, ',')) known_fail.insert(std::stoi(item));
    }
  }
  const std::vector<Criterion> all{
      {1, "simplicial identities", 5, simplicial_identities},
      {2, "basis axioms", 5, basis_criterion},
      {3, "minimal models", 60, minimal_models},
      {4, "uniqueness up to isomorphism", 60, uniqueness},
      {5, "minimal subsets of preorders", 30, preorders},
      {6, "twisted product round trip", 10, tcp_round_trip},
      {7, "classification over the circle", 120, classification},
      {8, "pullback minimality", 30, pullbacks},
  };
  std::set<int> failed;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > c.limit_s) {
      o.pass = false;
      o.detail += "; over the time limit";
    }
    if (!o.pass) failed.insert(c.id);
    std::printf("[%s] %d %s (%.2f s, limit %.0f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, s, c.limit_s,
                o.detail.c_str());
  }
  std::fflush(stdout);
  if (failed != known_fail) {
    std::printf("failing criteria differ from the expected list\n");
    return 1;
  }
  return 0;
}
