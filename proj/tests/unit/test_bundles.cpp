#include <random>

#include "doctest.h"

#include "mfib/bundles.hpp"

using namespace mfib;

namespace {

std::shared_ptr<const FiniteCategory> share(FiniteCategory C) { return std::make_shared<const FiniteCategory>(std::move(C)); }

std::shared_ptr<const SimplicialGroup> constant_group(const FiniteGroup& G, int N) {
  return std::make_shared<const SimplicialGroup>(SimplicialGroup::constant(G, N));
}

// Z/2 swapping two points at every object of the arrow.
GroupAction swap_action(int N) {
  auto G = constant_group(FiniteGroup::cyclic(2), N);
  auto F = CDiagram::constant_diagram(share(FiniteCategory::arrow()), std::make_shared<const SSet>(discrete_set(2, N)));
  return GroupAction::from_generators(G, F, {{{0, 1}, {0, 1}}, {{1, 0}, {1, 0}}});
}

GammaFunction random_gamma(const SSet& B, const SimplicialGroup& G, int d, std::mt19937& rng) {
  GammaFunction g(d + 1);
  for (int n = 0; n <= d; ++n)
    for (int v = 0; v < B.size(n); ++v) {
      if (B.degenerate(n, v)) {
        int j = B.ref(n, v).word.front();
        g[n].push_back(G.degen(n - 1, g[n - 1][B.face(n, v, j)], j));
      } else {
        g[n].push_back(static_cast<int>(rng() % G.level(n).order()));
      }
    }
  return g;
}

bool bijective(const DiagramMap& h, const CDiagram& X, const CDiagram& Y) {
  for (std::size_t c = 0; c < h.comp.size(); ++c)
    for (int n = 0; n <= h.comp[c].truncation(); ++n) {
      std::vector<int> v = h.comp[c].level[n];
      std::sort(v.begin(), v.end());
      if (static_cast<int>(v.size()) != Y[c].size(n) || std::adjacent_find(v.begin(), v.end()) != v.end()) return false;
      if (X[c].size(n) != Y[c].size(n)) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("truncate_set keeps indices") {
  SSet X = group_nerve(FiniteGroup::cyclic(3), 3);
  SSet Y = truncate_set(X, 2);
  CHECK(Y.truncation() == 2);
  for (int n = 0; n <= 2; ++n) {
    REQUIRE(Y.size(n) == X.size(n));
    for (int x = 0; x < X.size(n); ++x) CHECK(Y.simplex_string(n, x) == X.simplex_string(n, x));
  }
}

TEST_CASE("simplicial groups and actions") {
  auto G = constant_group(FiniteGroup::symmetric(3), 3);
  CHECK(G->underlying().set.size(2) == 6);
  CHECK(G->underlying().set.generator_counts() == std::vector<int>{6, 0, 0, 0});

  // Levels Z/2 with a non-homomorphic face.
  FiniteGroup Z2 = FiniteGroup::cyclic(2);
  CHECK_THROWS_AS(SimplicialGroup::from_tables({Z2, Z2}, {{}, {1, 1, 1, 1}}, {{0, 1}}), ValidationError);
  SimplicialGroup ok = SimplicialGroup::from_tables({Z2, Z2}, {{}, {0, 0, 1, 1}}, {{0, 1}});
  CHECK(ok.apply_monotone({0, 0}, 0, 1) == 1);

  GroupAction A = swap_action(3);
  CHECK_FALSE(A.defect());
  GroupAction L = GroupAction::left_translation(G);
  CHECK_FALSE(L.defect());

  // Swapping at a only is not natural along a -> b.
  auto F = CDiagram::constant_diagram(share(FiniteCategory::arrow()), std::make_shared<const SSet>(discrete_set(2, 2)));
  CHECK_THROWS_AS(GroupAction::from_generators(constant_group(Z2, 2), F, {{{0, 1}, {0, 1}}, {{1, 0}, {0, 1}}}),
                  ValidationError);
}

TEST_CASE("twisting functions on the circle") {
  SSet S = circle(3);
  auto G = constant_group(FiniteGroup::cyclic(2), 3);
  const int e = S.generator_by_name("e");
  std::vector<int> vals(S.num_generators(), 0);
  vals[e] = 1;
  TwistingFunction t = twisting_from_generators(S, *G, 3, vals);
  CHECK_FALSE(twisting_defect(S, *G, t));
  TwistingFunction u = unit_twisting(S, *G, 3);
  CHECK_FALSE(twisting_defect(S, *G, u));

  // t(s_0 v) must be e, also in dimension 1.
  TwistingFunction bad = u;
  int s0v = S.degen(0, 0, 0);
  bad.value[1][s0v] = 1;
  auto def = twisting_defect(S, *G, bad);
  REQUIRE(def);
  CHECK(def->n == 1);

  GroupAction A = swap_action(3);
  Tcp twisted = build_tcp(S, t, A);
  Tcp trivial = build_tcp(S, u, A);
  for (int c = 0; c < 2; ++c) {
    CHECK(connected_components(twisted.bundle.total[c]) == 1);
    CHECK(connected_components(trivial.bundle.total[c]) == 2);
  }
  twisted.bundle.validate();
  CHECK(is_fibration_upto(twisted.bundle, 2).ok);
  CHECK(is_fibration_upto(trivial.bundle, 2).ok);

  TwistingSearch all = enumerate_twistings(S, *G, 3, 0);
  CHECK(all.status == SearchStatus::Found);
  CHECK(all.found.size() == 2u);
  TwistingSearch capped = enumerate_twistings(S, *G, 3, 1);
  CHECK(capped.status == SearchStatus::Exhausted);
}

TEST_CASE("twisting equivalence is an equivalence relation") {
  SSet S = circle(2);
  auto G = constant_group(FiniteGroup::symmetric(3), 2);
  TwistingSearch all = enumerate_twistings(S, *G, 2, 0);
  REQUIRE(all.found.size() == 6u);
  const int k = static_cast<int>(all.found.size());
  std::vector<std::vector<char>> rel(k, std::vector<char>(k, 0));
  GroupAction L = GroupAction::left_translation(G);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      EquivalenceSearch e = twisting_equivalent(S, *G, all.found[i], all.found[j], 0);
      REQUIRE(e.status != SearchStatus::Exhausted);
      rel[i][j] = e.status == SearchStatus::Found;
      if (rel[i][j]) {
        CHECK_FALSE(gamma_defect(S, *G, all.found[i], all.found[j], e.gamma));
        Tcp a = build_tcp(S, all.found[i], L), b = build_tcp(S, all.found[j], L);
        DiagramMap h = tcp_map_from_gamma(a, b, L, e.gamma);
        CHECK_FALSE(diagram_map_defect(a.bundle.total, b.bundle.total, h));
        CHECK(bijective(h, a.bundle.total, b.bundle.total));
      }
    }
  int classes = 0;
  std::vector<char> seen(k, 0);
  for (int i = 0; i < k; ++i) {
    CHECK(rel[i][i]);
    for (int j = 0; j < k; ++j) {
      CHECK(rel[i][j] == rel[j][i]);
      for (int l = 0; l < k; ++l)
        if (rel[i][j] && rel[j][l]) CHECK(rel[i][l]);
    }
    if (!seen[i]) {
      ++classes;
      for (int j = 0; j < k; ++j)
        if (rel[i][j]) seen[j] = 1;
    }
  }
  CHECK(classes == 3);  // conjugacy classes of S_3
}

TEST_CASE("tautological atlas") {
  auto G = constant_group(FiniteGroup::symmetric(3), 2);
  GroupAction L = GroupAction::left_translation(G);
  std::mt19937 rng(7);
  for (const SSet& B : {circle(2), boundary(2, 2), group_nerve(FiniteGroup::cyclic(2), 2)}) {
    TwistingSearch all = enumerate_twistings(B, *G, 2, 0);
    REQUIRE(!all.found.empty());
    const TwistingFunction& t = all.found[rng() % all.found.size()];
    Tcp X = build_tcp(B, t, L);
    Atlas a = tautological_atlas(X, B, t, L);
    CHECK_FALSE(atlas_defect(a, X.bundle, L));
    CHECK(atlas_is_normal(a, B));
    TransformationElements xi = transformation_elements(a, B, L);
    REQUIRE(xi.status == SearchStatus::Found);
    CHECK(xi.unique);
    CHECK(is_regular(xi, *G));
    CHECK(xi0_twisting(xi) == t);

    Tcp model = build_tcp(B, xi0_twisting(xi), L);
    DiagramMap h = atlas_trivialization(a, model, X.bundle);
    CHECK_FALSE(diagram_map_defect(model.bundle.total, X.bundle.total, h));
    CHECK(bijective(h, model.bundle.total, X.bundle.total));
  }
}

TEST_CASE("perturbation and regularization") {
  auto G = constant_group(FiniteGroup::symmetric(3), 2);
  GroupAction L = GroupAction::left_translation(G);
  std::mt19937 rng(11);
  SSet B = boundary(2, 2);
  TwistingSearch all = enumerate_twistings(B, *G, 2, 0);
  for (int trial = 0; trial < 4; ++trial) {
    const TwistingFunction& t = all.found[rng() % all.found.size()];
    Tcp X = build_tcp(B, t, L);
    Atlas a = tautological_atlas(X, B, t, L);
    TransformationElements xi = transformation_elements(a, B, L);
    GammaFunction gamma = random_gamma(B, *G, 2, rng);
    Atlas p = perturb_atlas(a, L, gamma);
    CHECK_FALSE(atlas_defect(p, X.bundle, L));
    CHECK(atlas_is_normal(p, B));
    TransformationElements xp = transformation_elements(p, B, L);
    REQUIRE(xp.status == SearchStatus::Found);
    for (int n = 1; n <= 2; ++n)
      for (int v = 0; v < B.size(n); ++v)
        for (int i = 0; i <= n; ++i) {
          int want = G->mul(n - 1, G->inv(n - 1, gamma[n - 1][B.face(n, v, i)]),
                            G->mul(n - 1, xi.xi[n][v][i], G->face(n, gamma[n][v], i)));
          CHECK(xp.xi[n][v][i] == want);
        }

    Regularized r = regularize(p, B, L, 0);
    REQUIRE(r.status == SearchStatus::Found);
    CHECK_FALSE(atlas_defect(r.atlas, X.bundle, L));
    TransformationElements xr = transformation_elements(r.atlas, B, L);
    CHECK(is_regular(xr, *G));
    // The regular atlas presents an equivalent twisting function.
    EquivalenceSearch e = twisting_equivalent(B, *G, t, xi0_twisting(xr), 0);
    CHECK(e.status == SearchStatus::Found);
  }
}

TEST_CASE("normalization") {
  auto G = constant_group(FiniteGroup::cyclic(2), 2);
  GroupAction A = swap_action(2);
  SSet B = circle(2);
  TwistingFunction t = unit_twisting(B, *G, 2);
  Tcp X = build_tcp(B, t, A);
  Atlas a = tautological_atlas(X, B, t, A);
  // Perturb only at one degenerate edge: still an atlas, no longer normal.
  GammaFunction g(3);
  for (int n = 0; n <= 2; ++n) g[n].assign(B.size(n), G->unit(n));
  int s0v = B.degen(0, 0, 0);
  g[1][s0v] = 1;
  Atlas p = perturb_atlas(a, A, g);
  CHECK_FALSE(atlas_defect(p, X.bundle, A));
  CHECK_FALSE(atlas_is_normal(p, B));
  Atlas q = normalize_atlas(p, B);
  CHECK(atlas_is_normal(q, B));
  CHECK_FALSE(atlas_defect(q, X.bundle, A));
  // Non-degenerate trivializations are untouched.
  const int e = B.generator_simplex(B.generator_by_name("e"));
  CHECK(q.beta[1][e] == p.beta[1][e]);
}

TEST_CASE("W-bar") {
  for (const FiniteGroup& H : {FiniteGroup::cyclic(2), FiniteGroup::symmetric(3)}) {
    auto G = constant_group(H, 3);
    Wbar W = wbar(*G, 3);
    for (int n = 0; n <= 3; ++n) {
      long long want = 1;
      for (int k = 0; k < n; ++k) want *= H.order();
      CHECK(W.set.set.size(n) == want);
    }
    CHECK_FALSE(twisting_defect(W.set.set, *G, W.tau));
    Wbar M = wbar(*G, 3, WbarConvention::May);
    if (H.order() == 2)
      CHECK_FALSE(twisting_defect(M.set.set, *G, M.tau));
    else
      CHECK(twisting_defect(M.set.set, *G, M.tau));

    // f_t pulls tau back to t.
    SSet B = boundary(2, 3);
    TwistingSearch all = enumerate_twistings(B, *G, 3, 0);
    for (const auto& t : all.found) {
      SMap f = classifying_map(B, W, t);
      CHECK_FALSE(map_defect(B, W.set.set, f));
      CHECK(pullback_twisting(B, W, f) == t);
    }
  }
}

TEST_CASE("principal and associated bundles") {
  auto G = constant_group(FiniteGroup::cyclic(2), 2);
  GroupAction A = swap_action(2);
  SSet S = circle(2);
  std::vector<int> vals(S.num_generators(), 0);
  vals[S.generator_by_name("e")] = 1;
  TwistingFunction t = twisting_from_generators(S, *G, 2, vals);
  Tcp P = principal_tcp(S, t, G);
  CHECK(connected_components(P.bundle.total[0]) == 1);
  Associated As = associated(S, t, A);
  CHECK(As.iso);
  CHECK_FALSE(diagram_map_defect(As.bundle.total, build_tcp(S, t, A).bundle.total, As.to_tcp));
}

TEST_CASE("classification") {
  GroupAction A = swap_action(2);
  ClassifyReport c = classify(circle(2), A, 2, 0);
  CHECK(c.status == SearchStatus::Found);
  CHECK(c.twistings.size() == 2u);
  CHECK(c.twisting_classes == 2);
  CHECK(c.map_classes == 2);
  CHECK(c.bijection);
  CHECK(c.tcp_isos_ok);

  ClassifyReport d = classify(standard_simplex(1, 2), A, 2, 0);
  CHECK(d.twisting_classes == 1);
  CHECK(d.map_classes == 1);
  CHECK(d.bijection);

  auto S3 = constant_group(FiniteGroup::symmetric(3), 2);
  GroupAction L = GroupAction::left_translation(S3);
  ClassifyReport s = classify(circle(2), L, 2, 0);
  CHECK(s.twisting_classes == 3);
  CHECK(s.map_classes == 3);
  CHECK(s.bijection);

  ClassifyReport capped = classify(circle(2), L, 2, 2);
  CHECK(capped.status == SearchStatus::Exhausted);
}

TEST_CASE("small oracles") {
  // W-bar of the trivial group: one simplex per dimension.
  auto E = constant_group(FiniteGroup::cyclic(1), 3);
  Wbar W1 = wbar(*E, 3);
  for (int n = 0; n <= 3; ++n) CHECK(W1.set.set.size(n) == 1);
  CHECK(W1.set.set.generator_counts() == std::vector<int>{1, 0, 0, 0});
  auto Z2 = constant_group(FiniteGroup::cyclic(2), 3);
  Wbar W2 = wbar(*Z2, 3);
  CHECK(W2.set.set.size(0) == 1);
  CHECK(W2.set.set.size(1) == 2);
  CHECK(W2.set.set.generator_counts()[1] == 1);

  // Circle: the double cover twisting is not equivalent to the unit.
  SSet S = circle(2);
  std::vector<int> vals(S.num_generators(), 0);
  vals[S.generator_by_name("e")] = 1;
  TwistingFunction t = twisting_from_generators(S, *Z2, 2, vals);
  TwistingFunction u = unit_twisting(S, *Z2, 2);
  EquivalenceSearch none = twisting_equivalent(S, *Z2, t, u, 0);
  CHECK(none.status == SearchStatus::None);
  EquivalenceSearch self = twisting_equivalent(S, *Z2, t, t, 0);
  REQUIRE(self.status == SearchStatus::Found);
  for (int n = 0; n <= 2; ++n)
    for (int g : self.gamma[n]) CHECK(g == Z2->unit(n));

  // Product bundle: every transformation element is a unit.
  GroupAction A = swap_action(2);
  Tcp X = build_tcp(S, u, A);
  TransformationElements xi = transformation_elements(tautological_atlas(X, S, u, A), S, A);
  REQUIRE(xi.status == SearchStatus::Found);
  for (int n = 1; n <= 2; ++n)
    for (const auto& row : xi.xi[n])
      for (int g : row) CHECK(g == Z2->unit(n - 1));

  // associated(B, t, G on itself) is the principal bundle.
  GroupAction L = GroupAction::left_translation(constant_group(FiniteGroup::cyclic(2), 2));
  Associated As = associated(S, t, L);
  CHECK(As.iso);

  // Trivial group: one class.
  auto F = CDiagram::constant_diagram(share(FiniteCategory::trivial()), std::make_shared<const SSet>(discrete_set(2, 2)));
  ClassifyReport c = classify(circle(2), GroupAction::trivial(constant_group(FiniteGroup::cyclic(1), 2), F), 2, 0);
  CHECK(c.twisting_classes == 1);
  CHECK(c.map_classes == 1);
  CHECK(c.bijection);
}

TEST_CASE("normalization on simplices") {
  auto G = constant_group(FiniteGroup::cyclic(2), 3);
  GroupAction A = swap_action(3);
  std::mt19937 rng(5);
  for (int n = 1; n <= 2; ++n) {
    SSet B = standard_simplex(n, 3);
    TwistingFunction u = unit_twisting(B, *G, 3);
    Tcp X = build_tcp(B, u, A);
    Atlas a = tautological_atlas(X, B, u, A);
    // Scramble every degenerate simplex independently.
    GammaFunction g(4);
    for (int m = 0; m <= 3; ++m)
      for (int v = 0; v < B.size(m); ++v) g[m].push_back(B.degenerate(m, v) ? static_cast<int>(rng() % 2) : 0);
    Atlas p = perturb_atlas(a, A, g);
    CHECK_FALSE(atlas_defect(p, X.bundle, A));
    Atlas q = normalize_atlas(p, B);
    CHECK(atlas_is_normal(q, B));
    CHECK(normalize_atlas(q, B).beta == q.beta);
    // beta(s_i w) = beta(w) o (s^i x 1) for every representation s_i w of a
    // degenerate simplex, including s_i v = s_j v'.
    for (int m = 1; m <= 3; ++m)
      for (int v = 0; v < B.size(m); ++v)
        for (int i = 0; i < m; ++i) {
          int w = B.face(m, v, i);
          if (B.degen(m - 1, w, i) != v) continue;
          for (int c = 0; c < 2; ++c) {
            const Keyed<Pair>& D = q.domain[m][c];
            for (int k = 0; k <= 3; ++k)
              for (int x = 0; x < D.set.size(k); ++x) {
                auto [si, z] = D.key[k][x];
                Seq s = q.simplex[m].key[k][si];
                for (int& e : s)
                  if (e > i) --e;
                int y = q.domain[m - 1][c].at(k, {q.simplex[m - 1].at(k, s), z});
                CHECK(q.beta[m][v][c](k, x) == q.beta[m - 1][w][c](k, y));
              }
          }
        }
  }
}
