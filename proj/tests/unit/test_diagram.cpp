#include "doctest.h"

#include "mfib/diagram.hpp"

using namespace mfib;

namespace {

std::shared_ptr<const FiniteCategory> share(FiniteCategory C) { return std::make_shared<const FiniteCategory>(std::move(C)); }

// Exhaustive bijection check of (b, h) -> h(b) onto all simplices.
bool witnesses_bijective(const CDiagram& X, const FreeBasis& B) {
  const FiniteCategory& C = *X.cat;
  std::map<GammaSimplex, int> hits;
  for (auto& b : B.gens)
    for (int d = 0; d < C.num_objects(); ++d)
      for (int h : C.hom(b.obj, d)) ++hits[GammaSimplex{d, b.dim, X.act[h](b.dim, b.idx)}];
  for (int c = 0; c < C.num_objects(); ++c)
    for (int n = 0; n <= X.truncation(); ++n)
      for (int x = 0; x < X[c].size(n); ++x)
        if (hits[GammaSimplex{c, n, x}] != 1) return false;
  return true;
}

}  // namespace

TEST_CASE("free_diagram_from") {
  auto T = share(FiniteCategory::trivial());
  FreeDiagram D = delta(T, 0, 2, 2);
  CHECK(D.diagram[0].generator_counts() == std::vector<int>{3, 3, 1});
  CHECK(D.basis.gens.size() == 3u + 6u + 10u);  // every simplex of Delta[2] up to dim 2

  auto A = share(FiniteCategory::arrow());
  FreeDiagram P = free_diagram_from(A, 0, point(2));
  CHECK(P.diagram[0].size(0) == 1);
  CHECK(P.diagram[1].size(0) == 1);
  CHECK(P.basis.gens.size() == 3u);
  for (auto& b : P.basis.gens) CHECK(b.obj == 0);
  P.diagram.validate();
}

TEST_CASE("compute_basis on delta^c_n") {
  std::vector<std::shared_ptr<const FiniteCategory>> cats{share(FiniteCategory::trivial()), share(FiniteCategory::arrow()),
                                                          share(FiniteCategory::from_group(FiniteGroup::cyclic(2)))};
  for (auto& cat : cats)
    for (int n = 0; n <= 2; ++n) {
      FreeDiagram D = delta(cat, 0, n, 2);
      BasisReport r = compute_basis(D.diagram);
      REQUIRE(r.basis);
      long long total = 0;
      for (int m = 0; m <= 2; ++m) total += standard_simplex(n, 2).size(m);
      CHECK(static_cast<long long>(r.basis->gens.size()) == total);
      for (auto& b : r.basis->gens) CHECK(b.obj == 0);
      CHECK(witnesses_bijective(D.diagram, *r.basis));
    }
}

TEST_CASE("compute_basis over the arrow") {
  auto A = share(FiniteCategory::arrow());
  // Constant diagrams over a -> b are free on the a-copy.
  CDiagram K = CDiagram::constant_diagram(A, std::make_shared<const SSet>(circle(2)));
  BasisReport r = compute_basis(K);
  REQUIRE(r.basis);
  for (auto& b : r.basis->gens) CHECK(b.obj == 0);
  // Identity at b alone does not produce a second witness.
  CHECK(witnesses_bijective(K, *r.basis));

  // Over B(Z/2) with trivial action the nontrivial element fixes everything.
  auto G = share(FiniteCategory::from_group(FiniteGroup::cyclic(2)));
  CDiagram KG = CDiagram::constant_diagram(G, std::make_shared<const SSet>(point(1)));
  BasisReport rg = compute_basis(KG);
  CHECK_FALSE(rg.basis);
  CHECK_FALSE(rg.offending.empty());

  // Injective a -> b missing a vertex of b.
  CDiagram D;
  D.cat = A;
  auto one = std::make_shared<const SSet>(point(1));
  auto two = std::make_shared<const SSet>(discrete_set(2, 1));
  D.at = {one, two};
  D.act = {map_from_generators(*one, *two, {0}), identity_map(*one), identity_map(*two)};
  D.validate();
  BasisReport ri = compute_basis(D);
  REQUIRE(ri.basis);
  int at_a = 0, at_b = 0;
  for (auto& b : ri.basis->gens) (b.obj == 0 ? at_a : at_b)++;
  CHECK(at_a == 2);  // the point and its degeneracy
  CHECK(at_b == 2);  // p1 and s0 p1
  CHECK(witnesses_bijective(D, *ri.basis));
}

TEST_CASE("verify_basis rejects bad generator sets") {
  auto T = share(FiniteCategory::trivial());
  FreeDiagram D = delta(T, 0, 1, 1);
  auto gens = D.basis.gens;
  gens.pop_back();
  CHECK_FALSE(verify_basis(D.diagram, gens).basis);
}

TEST_CASE("fibration checks") {
  auto T = share(FiniteCategory::trivial());
  CDiagram N = CDiagram::constant_diagram(T, std::make_shared<const SSet>(group_nerve(FiniteGroup::cyclic(3), 3)));
  CHECK(is_fibration_upto(over_point(N), 2).ok);
  CDiagram Bd = CDiagram::constant_diagram(T, std::make_shared<const SSet>(boundary(2, 2)));
  auto rep = is_fibration_upto(over_point(Bd), 2);
  CHECK_FALSE(rep.ok);
  CHECK_FALSE(rep.per_object[0].second.ok);
  Fibration id;
  id.total = Bd;
  id.base = Bd;
  id.p.comp = {identity_map(Bd[0])};
  CHECK(is_fibration_upto(id, 2).ok);
}

TEST_CASE("attach_cell") {
  auto T = share(FiniteCategory::trivial());
  CDiagram E = empty_diagram(T, 2);
  FreeDiagram P = attach_cell(E, FreeBasis{}, 0, 0, {}, "v");
  CHECK(P.diagram[0].generator_counts() == std::vector<int>{1, 0, 0});
  CHECK(P.basis.gens.size() == 3u);
  FreeDiagram S = attach_cell(P.diagram, P.basis, 0, 1, {0, 0}, "e");
  CHECK(S.diagram[0].generator_counts() == std::vector<int>{1, 1, 0});
  CHECK(S.basis.gens.size() == P.basis.gens.size() + 1 + 2);
  BasisReport r = compute_basis(S.diagram);
  REQUIRE(r.basis);
  CHECK(r.basis->gens == S.basis.gens);

  auto A = share(FiniteCategory::arrow());
  FreeDiagram a0 = attach_cell(empty_diagram(A, 1), FreeBasis{}, 0, 0, {});
  CHECK(a0.diagram[1].size(0) == 1);
  CHECK(compute_basis(a0.diagram).basis->gens == a0.basis.gens);
}

TEST_CASE("external product and pullback") {
  auto A = share(FiniteCategory::arrow());
  FreeDiagram D = delta(A, 0, 1, 2);
  ProductDiagram P = external_product(D.diagram, standard_simplex(1, 2));
  P.diagram.validate();
  for (int c = 0; c < 2; ++c) CHECK(P.diagram[c].size(0) == D.diagram[c].size(0) * 2);
  ProductDiagram Q = external_product(D.diagram, point(2));
  for (int c = 0; c < 2; ++c) CHECK(Q.diagram[c].generator_counts() == D.diagram[c].generator_counts());

  auto T = share(FiniteCategory::trivial());
  SSet B = circle(2);
  SSet F = discrete_set(2, 2);
  auto prod = product_keyed(B, F);
  CDiagram X = CDiagram::constant_diagram(T, std::make_shared<const SSet>(prod.set));
  Fibration p;
  p.total = X;
  p.base = CDiagram::constant_diagram(T, std::make_shared<const SSet>(B));
  SMap pr;
  for (auto& lvl : prod.key) {
    pr.level.emplace_back();
    for (auto& k : lvl) pr.level.back().push_back(k.first);
  }
  p.p.comp = {pr};
  p.validate();
  BasisReport br = compute_basis(X);
  REQUIRE(br.basis);
  Pullback same = pullback_constant_base(B, identity_map(B), p, &*br.basis);
  CHECK(same.fibration.total[0].generator_counts() == X[0].generator_counts());
  REQUIRE(same.basis);
  CHECK(static_cast<long long>(same.basis->gens.size()) == same.predicted_size);
  SSet pt = point(2);
  Pullback fib = pullback_constant_base(pt, map_from_generators(pt, B, {0}), p, &*br.basis);
  CHECK(fib.fibration.total[0].generator_counts() == std::vector<int>{2, 0, 0});
  REQUIRE(fib.basis);
  CHECK(static_cast<long long>(fib.basis->gens.size()) == fib.predicted_size);
}

TEST_CASE("maps, mapping spaces and automorphisms") {
  auto T = share(FiniteCategory::trivial());
  CDiagram two = CDiagram::constant_diagram(T, std::make_shared<const SSet>(discrete_set(2, 1)));
  AutGroup a = aut_group(two, 0, 0);
  REQUIRE(a.status == SearchStatus::Found);
  CHECK(a.group.order() == 2);

  CDiagram circ = CDiagram::constant_diagram(T, std::make_shared<const SSet>(circle(2)));
  CHECK(aut_group(circ, 0, 0).group.order() == 1);

  CDiagram Y = CDiagram::constant_diagram(T, std::make_shared<const SSet>(codiscrete_nerve(3, 2)));
  CDiagram pt = CDiagram::constant_diagram(T, std::make_shared<const SSet>(point(2)));
  MappingSpace m0 = mapping_space(pt, Y, 0, 0);
  CHECK(m0.simplices.size() == 3u);
  MappingSpace m1 = mapping_space(pt, Y, 1, 0);
  CHECK(m1.simplices.size() == 9u);
  for (auto& f : m1.simplices)
    for (int i = 0; i <= 1; ++i) {
      DiagramMap g = mapping_face(m1, m0, f, i);
      CHECK_FALSE(diagram_map_defect(m0.source.diagram, Y, g));
    }
  for (auto& f : m0.simplices) {
    DiagramMap g = mapping_degeneracy(m0, m1, f, 0);
    CHECK(mapping_face(m1, m0, g, 0).comp == f.comp);
    CHECK(mapping_face(m1, m0, g, 1).comp == f.comp);
  }
  CHECK(mapping_space(pt, Y, 1, 2).status == SearchStatus::Exhausted);
}

TEST_CASE("adjunction cardinality for free diagrams") {
  auto A = share(FiniteCategory::arrow());
  SSet Y = standard_simplex(1, 1);
  FreeDiagram D = free_diagram_from(A, 0, Y);
  CDiagram X;
  X.cat = A;
  auto xa = std::make_shared<const SSet>(codiscrete_nerve(2, 1));
  auto xb = std::make_shared<const SSet>(point(1));
  X.at = {xa, xb};
  X.act = {constant_map(*xa, *xb, 0), identity_map(*xa), identity_map(*xb)};
  X.validate();
  HomResult r = enumerate_maps(D.diagram, X, {});
  CDiagram Yd = CDiagram::constant_diagram(share(FiniteCategory::trivial()), std::make_shared<const SSet>(Y));
  CDiagram Xa = CDiagram::constant_diagram(share(FiniteCategory::trivial()), xa);
  HomResult s = enumerate_maps(Yd, Xa, {});
  CHECK(r.maps.size() == s.maps.size());
  CHECK(r.maps.size() == 4u);
}
