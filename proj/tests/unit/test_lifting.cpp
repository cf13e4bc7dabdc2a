#include "doctest.h"

#include "mfib/lifting.hpp"

using namespace mfib;

namespace {

int named(const SSet& X, const std::string& name) { return X.generator_simplex(X.generator_by_name(name)); }

}  // namespace

TEST_CASE("solve fills the 2-horn in the nerve of Z/2") {
  SSet BZ2 = group_nerve(FiniteGroup::cyclic(2), 3);
  auto D = standard_simplex_keyed(2, 2);
  const SSet& K = D.set;
  std::vector<char> small(K.num_generators(), 1);
  small[K.generator_by_name("v012")] = 0;
  small[K.generator_by_name("v02")] = 0;
  std::vector<int> partial(K.num_generators(), -1);
  int star = named(BZ2, "*"), g = named(BZ2, "(g)");
  for (auto v : {"v0", "v1", "v2"}) partial[K.generator_by_name(v)] = star;
  partial[K.generator_by_name("v01")] = g;
  partial[K.generator_by_name("v12")] = g;
  LiftingProblem pr;
  pr.inclusion = CellInclusion::make(K, small);
  pr.X = &BZ2;
  pr.partial = partial;
  LiftResult r = solve(pr, 0);
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(BZ2.simplex_string(2, r.gen_values[K.generator_by_name("v012")]) == "(g,g)");
  CHECK(r.map(1, named(K, "v01")) == g);

  pr.partial[K.generator_by_name("v12")] = BZ2.size(1);
  CHECK_THROWS_AS(solve(pr, 0), ValidationError);
}

TEST_CASE("solve with nothing to attach returns the partial map") {
  SSet C = circle(2);
  SSet K = standard_simplex(1, 2);
  std::vector<char> small(K.num_generators(), 1);
  std::vector<int> partial{named(C, "v"), named(C, "v"), named(C, "e")};
  LiftingProblem pr;
  pr.inclusion = CellInclusion::make(K, small);
  pr.X = &C;
  pr.partial = partial;
  LiftResult r = solve(pr, 0);
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(r.gen_values == partial);
}

TEST_CASE("solve refutes joining distinct points of a discrete set") {
  SSet two = discrete_set(2, 1);
  SSet K = standard_simplex(1, 1);
  std::vector<char> small{1, 1, 0};
  LiftingProblem pr;
  pr.inclusion = CellInclusion::make(K, small);
  pr.X = &two;
  pr.partial = {0, 1, -1};
  CHECK(solve(pr, 0).status == SearchStatus::None);
  pr.partial = {1, 1, -1};
  CHECK(solve(pr, 0).status == SearchStatus::Found);
  // A subcomplex must be face-closed.
  CHECK_THROWS_AS(CellInclusion::make(K, {0, 1, 1}), ValidationError);
}

TEST_CASE("solve reports budget exhaustion separately from refutation") {
  SSet E = codiscrete_nerve(3, 3);
  auto P = prism_shape(2);
  Homotopy h = prism_homotopy(E, 2, named(E, "[0,1,2]"), named(E, "[0,2,1]"), nullptr, nullptr, false, false, 1);
  CHECK(h.status == SearchStatus::Exhausted);
  Homotopy full = prism_homotopy(E, 2, named(E, "[0,1,2]"), named(E, "[0,2,1]"), nullptr, nullptr, false, false, 0);
  CHECK(full.status == SearchStatus::Found);
}

TEST_CASE("prism homotopies") {
  SSet BZ2 = group_nerve(FiniteGroup::cyclic(2), 3);
  SSet pt = point(3);
  SMap p = constant_map(BZ2, pt, 0);
  int s0 = BZ2.degen(0, named(BZ2, "*"), 0), g = named(BZ2, "(g)");
  Homotopy none = prism_homotopy(BZ2, 1, s0, g, &pt, &p, true, true, 0);
  CHECK(none.status == SearchStatus::None);

  Homotopy same = prism_homotopy(BZ2, 1, g, g, &pt, &p, true, true, 0);
  REQUIRE(same.status == SearchStatus::Found);
  CHECK(same.top == std::vector<int>{BZ2.degen(1, g, 0), BZ2.degen(1, g, 1)});
  CHECK(homotopy_valid(BZ2, g, g, &pt, &p, true, true, same));

  SSet E = codiscrete_nerve(2, 3);
  SMap q = constant_map(E, pt, 0);
  Homotopy v = prism_homotopy(E, 0, named(E, "[0]"), named(E, "[1]"), &pt, &q, true, true, 0);
  REQUIRE(v.status == SearchStatus::Found);
  CHECK(v.top == std::vector<int>{named(E, "[0,1]")});
  CHECK(homotopy_valid(E, named(E, "[0]"), named(E, "[1]"), &pt, &q, true, true, v));

  CHECK_THROWS_AS(prism_homotopy(E, 1, named(E, "[0,1]"), named(E, "[1,0]"), &pt, &q, true, true, 0), ValidationError);
}

TEST_CASE("rel-boundary fibrewise homotopy is an equivalence relation on small fibres") {
  SSet pt = point(4);
  std::vector<SSet> spaces{group_nerve(FiniteGroup::cyclic(2), 4), group_nerve(FiniteGroup::cyclic(3), 3),
                           codiscrete_nerve(2, 4)};
  for (const SSet& X : spaces) {
    SMap p = constant_map(X, pt, 0);
    for (int n = 0; n + 2 <= X.truncation() && n <= 1; ++n) {
      const int S = X.size(n);
      std::vector<std::vector<int>> rel(S, std::vector<int>(S, 0));
      for (int a = 0; a < S; ++a)
        for (int b = 0; b < S; ++b) {
          bool same_boundary = true;
          for (int i = 0; i <= n && n > 0; ++i) same_boundary = same_boundary && X.face(n, a, i) == X.face(n, b, i);
          if (!same_boundary) continue;
          Homotopy h = prism_homotopy(X, n, a, b, &pt, &p, true, true, 0);
          rel[a][b] = h.status == SearchStatus::Found;
          if (rel[a][b]) CHECK(homotopy_valid(X, a, b, &pt, &p, true, true, h));
        }
      for (int a = 0; a < S; ++a) {
        CHECK(rel[a][a]);
        for (int b = 0; b < S; ++b) {
          CHECK(rel[a][b] == rel[b][a]);
          for (int c = 0; c < S; ++c)
            if (rel[a][b] && rel[b][c]) CHECK(rel[a][c]);
        }
      }
    }
  }
}
