#include "doctest.h"

#include <random>

#include "mfib/minimal.hpp"

using namespace mfib;

namespace {

std::shared_ptr<const FiniteCategory> trivial_cat() { return std::make_shared<const FiniteCategory>(FiniteCategory::trivial()); }

Fibration over_point_of(SSet X) {
  return over_point(CDiagram::constant_diagram(trivial_cat(), std::make_shared<const SSet>(std::move(X))));
}

FreeBasis basis_of(const Fibration& p) {
  auto r = compute_basis(p.total);
  REQUIRE(r.basis);
  return *r.basis;
}

int named(const SSet& X, const std::string& name) { return X.generator_simplex(X.generator_by_name(name)); }

}  // namespace

TEST_CASE("minimal_subset examples") {
  auto anti = PreorderedSet::from_pairs(4, {});
  CHECK(minimal_subset(anti) == std::vector<int>{0, 1, 2, 3});
  // a ~ b, a <= c
  auto A = PreorderedSet::from_pairs(3, {{0, 1}, {1, 0}, {0, 2}});
  CHECK(minimal_subset(A) == std::vector<int>{0});
  auto all = brute_force_minimal_subsets(A);
  CHECK(all.size() == 2u);
  // class {x, w} with w preferred (degenerate)
  auto B = PreorderedSet::from_pairs(3, {{0, 1}, {1, 0}, {1, 2}});
  CHECK(minimal_subset(B, {0, 1, 0}) == std::vector<int>{1});
}

TEST_CASE("minimal_subset against brute force on random preorders") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    int n = std::uniform_int_distribution<int>(1, 8)(rng);
    std::vector<std::pair<int, int>> pairs;
    std::bernoulli_distribution edge(0.2);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b && edge(rng)) pairs.emplace_back(a, b);
    auto A = PreorderedSet::from_pairs(n, pairs);
    std::vector<char> pref(n);
    for (auto& x : pref) x = edge(rng);
    auto S = minimal_subset(A, pref);
    CHECK(satisfies_r1(A, S));
    CHECK(satisfies_r2(A, S));
    auto all = brute_force_minimal_subsets(A);
    CHECK(std::find(all.begin(), all.end(), S) != all.end());
  }
}

TEST_CASE("p-homotopy") {
  Fibration E = over_point_of(codiscrete_nerve(2, 3));
  const SSet& X = E.total[0];
  Homotopy same = p_homotopic(E, 0, 1, named(X, "[0,1]"), named(X, "[0,1]"), 0);
  CHECK(same.status == SearchStatus::Found);
  Homotopy v = p_homotopic(E, 0, 0, named(X, "[0]"), named(X, "[1]"), 0);
  CHECK(v.status == SearchStatus::Found);
  CHECK_THROWS_AS(p_homotopic(E, 0, 1, named(X, "[0,1]"), named(X, "[1,0]"), 0), ValidationError);

  // Distinct degenerate simplices of a minimal complex are never related.
  Fibration N = over_point_of(group_nerve(FiniteGroup::cyclic(2), 3));
  const SSet& Y = N.total[0];
  for (int n = 1; n <= 2; ++n)
    for (int a = 0; a < Y.size(n); ++a)
      for (int b = 0; b < Y.size(n); ++b) {
        if (a == b || !Y.degenerate(n, a) || !Y.degenerate(n, b)) continue;
        bool sb = true;
        for (int i = 0; i <= n; ++i) sb = sb && Y.face(n, a, i) == Y.face(n, b, i);
        if (sb) CHECK(p_homotopic(N, 0, n, a, b, 0).status == SearchStatus::None);
      }
}

TEST_CASE("sub-p preorder and minimality") {
  Fibration E = over_point_of(codiscrete_nerve(2, 3));
  auto R = is_minimal(E, basis_of(E), 1, 0);
  CHECK_FALSE(R.minimal);
  REQUIRE_FALSE(R.violations.empty());
  CHECK(R.violations.front().a != R.violations.front().b);
  int v0 = R.preorder.position({0, 0, named(E.total[0], "[0]")});
  int v1 = R.preorder.position({0, 0, named(E.total[0], "[1]")});
  CHECK(R.preorder.order.equivalent(v0, v1));

  Fibration N = over_point_of(group_nerve(FiniteGroup::cyclic(2), 3));
  auto RN = is_minimal(N, basis_of(N), 2, 0);
  CHECK(RN.minimal);
  CHECK_FALSE(RN.up_to_budget);

  Fibration P = over_point_of(point(2));
  CHECK(is_minimal(P, basis_of(P), 1, 0).minimal);

  auto arrow = std::make_shared<const FiniteCategory>(FiniteCategory::arrow());
  FreeDiagram D = free_diagram_from(arrow, 0, point(2));
  Fibration FD = over_point(D.diagram);
  auto S = sub_p_preorder(FD, D.basis, 1, 0);
  CHECK(S.links.empty());

  auto tight = is_minimal(E, basis_of(E), 1, 1);
  CHECK(tight.up_to_budget);
}

TEST_CASE("extract_minimal on the codiscrete nerve") {
  Fibration E = over_point_of(codiscrete_nerve(2, 4));
  MinimalModel M = extract_minimal(E, basis_of(E), 2, 1000000);
  REQUIRE(M.status == SearchStatus::Found);
  CHECK(M.sub.total[0].generator_counts() == std::vector<int>{1, 0, 0, 0, 0});
  CHECK(M.steps.size() == 1u + 2u + 2u);  // non-degenerate simplices other than [0]: alternating tuples
  CHECK_FALSE(model_defect(E, M));
  CHECK(is_minimal(M.sub, M.sub_basis, 2, 0).minimal);
}

TEST_CASE("extract_minimal leaves minimal fibrations alone") {
  Fibration N = over_point_of(group_nerve(FiniteGroup::cyclic(2), 4));
  MinimalModel M = extract_minimal(N, basis_of(N), 2, 1000000);
  REQUIRE(M.status == SearchStatus::Found);
  CHECK(M.steps.empty());
  CHECK(M.sub.total[0].generator_counts() == N.total[0].generator_counts());
  for (int m = 0; m <= 2; ++m)
    for (int x = 0; x < N.total[0].size(m); ++x) CHECK(M.retraction[0](m, x) == x);

  // Product B x F -> B with F minimal.
  SSet B = circle(4);
  SSet F = discrete_set(2, 4);
  auto prod = product_keyed(B, F);
  auto T = trivial_cat();
  Fibration p;
  p.total = CDiagram::constant_diagram(T, std::make_shared<const SSet>(prod.set));
  p.base = CDiagram::constant_diagram(T, std::make_shared<const SSet>(B));
  SMap pr;
  for (auto& lvl : prod.key) {
    pr.level.emplace_back();
    for (auto& k : lvl) pr.level.back().push_back(k.first);
  }
  p.p.comp = {pr};
  MinimalModel Mp = extract_minimal(p, basis_of(p), 2, 1000000);
  REQUIRE(Mp.status == SearchStatus::Found);
  CHECK(Mp.sub.total[0].generator_counts() == p.total[0].generator_counts());
}

TEST_CASE("extraction over the arrow category") {
  auto arrow = std::make_shared<const FiniteCategory>(FiniteCategory::arrow());
  FreeDiagram D = free_diagram_from(arrow, 0, codiscrete_nerve(2, 4));
  Fibration p = over_point(D.diagram);
  MinimalModel M = extract_minimal(p, D.basis, 2, 1000000);
  REQUIRE(M.status == SearchStatus::Found);
  CHECK(M.sub.total[0].generator_counts() == std::vector<int>{1, 0, 0, 0, 0});
  CHECK(M.sub.total[1].generator_counts() == std::vector<int>{1, 0, 0, 0, 0});
  CHECK_FALSE(model_defect(p, M));
}

TEST_CASE("models from relabeled inputs are isomorphic") {
  Fibration E = over_point_of(codiscrete_nerve(3, 4));
  Relabeled R = relabel_generators(E, 11);
  MinimalModel a = extract_minimal(E, basis_of(E), 2, 1000000);
  MinimalModel b = extract_minimal(R.fibration, basis_of(R.fibration), 2, 1000000);
  REQUIRE(a.status == SearchStatus::Found);
  REQUIRE(b.status == SearchStatus::Found);
  IsoResult iso = minimal_iso(a.sub, b.sub, 0);
  CHECK(iso.status == SearchStatus::Found);

  Fibration two = over_point_of(discrete_set(2, 2));
  Fibration one = over_point_of(point(2));
  CHECK(minimal_iso(two, one, 0).status == SearchStatus::None);
  CHECK(minimal_iso(two, two, 0).status == SearchStatus::Found);
}

TEST_CASE("extract_minimal preconditions") {
  Fibration E = over_point_of(codiscrete_nerve(2, 3));
  CHECK_THROWS_AS(extract_minimal(E, basis_of(E), 2, 0), TruncationError);
  auto idem = std::make_shared<const FiniteCategory>(
      FiniteCategory::make({"a", "b"}, {{"e", 0, 0}, {"f", 0, 1}}, {{"e", "e", "e"}, {"f", "e", "f"}}));
  Fibration Q = over_point(CDiagram::constant_diagram(idem, std::make_shared<const SSet>(point(3))));
  CHECK_THROWS_AS(extract_minimal(Q, FreeBasis{}, 1, 0), ValidationError);
}
