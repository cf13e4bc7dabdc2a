#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mfib/category.hpp"
#include "mfib/lifting.hpp"
#include "mfib/simplicial.hpp"

namespace mfib {

// Functor from a finite category to truncated simplicial sets.
struct CDiagram {
  std::shared_ptr<const FiniteCategory> cat;
  std::vector<std::shared_ptr<const SSet>> at;  // per object
  std::vector<SMap> act;                        // per morphism
  bool constant = false;                        // all objects share one set, identity acts

  int truncation() const;
  const SSet& operator[](int c) const { return *at[c]; }

  static CDiagram constant_diagram(std::shared_ptr<const FiniteCategory> cat, std::shared_ptr<const SSet> X);
  // act(id) = id, act(g∘f) = act(g)∘act(f) and simpliciality of every act.
  std::optional<std::string> defect() const;
  void validate() const;
};

struct GammaSimplex {
  int obj = 0;
  int dim = 0;
  int idx = 0;
  auto operator<=>(const GammaSimplex&) const = default;
};

struct FreeBasis {
  std::vector<GammaSimplex> gens;
  // witness[c][n][x] = (position in gens, morphism h) with h(gens[pos]) = x.
  std::vector<std::vector<std::vector<std::pair<int, int>>>> witness;
  int position(const GammaSimplex& s) const;  // -1 if not a generator
};

struct BasisReport {
  std::optional<FreeBasis> basis;
  std::string reason;
  std::vector<GammaSimplex> offending;  // simplex with zero or two witnesses
};

// Checks the unique-witness and degeneracy-closure conditions for gens.
BasisReport verify_basis(const CDiagram& X, std::vector<GammaSimplex> gens);
BasisReport compute_basis(const CDiagram& X);

struct DiagramMap {
  std::vector<SMap> comp;  // per object
};

std::optional<std::string> diagram_map_defect(const CDiagram& X, const CDiagram& Y, const DiagramMap& f);

// p: total -> base, usually with a constant base.
struct Fibration {
  CDiagram total;
  CDiagram base;
  DiagramMap p;
  void validate() const;
};

// The projection X -> * onto the constant point diagram.
Fibration over_point(const CDiagram& X);

struct FibrationReport {
  int dim = 0;
  bool ok = true;
  std::vector<std::pair<int, KanReport>> per_object;  // (object, report)
};

FibrationReport is_fibration_upto(const Fibration& p, int d);

struct FreeDiagram {
  CDiagram diagram;
  FreeBasis basis;
};

// Left Kan extension along {c} -> C; copies indexed by Mor(c, d) with the
// identity first.
FreeDiagram free_diagram_from(std::shared_ptr<const FiniteCategory> cat, int c, const SSet& Y);
FreeDiagram delta(std::shared_ptr<const FiniteCategory> cat, int c, int n, int N);

// Pushout along the boundary of delta^c_n. boundary lists the n+1 faces
// (simplices of X(c) in dimension n-1) of the attached cell.
FreeDiagram attach_cell(const CDiagram& X, const FreeBasis& basis, int c, int n, const std::vector<int>& boundary,
                        const std::string& name = "y");
CDiagram empty_diagram(std::shared_ptr<const FiniteCategory> cat, int N);

struct ProductDiagram {
  CDiagram diagram;
  std::vector<Keyed<Pair>> keys;  // per object: (x, k) coordinates
};
ProductDiagram external_product(const CDiagram& X, const SSet& K);

struct Pullback {
  Fibration fibration;              // A x_B X -> A
  std::vector<Keyed<Pair>> keys;    // per object: (u, x)
  std::optional<FreeBasis> basis;   // pairs (u, x) with x in the given basis
  long long predicted_size = 0;     // sum over basis elements of |alpha^{-1}(p(x))|
};
Pullback pullback_constant_base(const SSet& A, const SMap& alpha, const Fibration& p, const FreeBasis* basis);

// Enumerates diagram maps D -> Y in lexicographic order of generator values.
struct HomSearch {
  const Fibration* over_source = nullptr;  // optional: maps must commute with
  const Fibration* over_target = nullptr;  // the projections to a common base
  bool bijective = false;
  long long budget = 0;                    // candidate nodes, <= 0 unlimited
  std::size_t max_results = 0;             // 0 means all
};
struct HomResult {
  SearchStatus status = SearchStatus::None;  // Found if at least one map
  std::vector<DiagramMap> maps;
  long long nodes = 0;
  bool complete = true;                      // false when stopped early
};
HomResult enumerate_maps(const CDiagram& D, const CDiagram& Y, const HomSearch& opts);

struct MappingSpace {
  SearchStatus status = SearchStatus::None;
  std::vector<DiagramMap> simplices;  // maps X x Delta[n] -> Y
  ProductDiagram source;
  Keyed<Seq> simplex;
};
MappingSpace mapping_space(const CDiagram& X, const CDiagram& Y, int n, long long budget);
// Face and degeneracy operators of the function complex.
DiagramMap mapping_face(const MappingSpace& from, const MappingSpace& to, const DiagramMap& f, int i);
DiagramMap mapping_degeneracy(const MappingSpace& from, const MappingSpace& to, const DiagramMap& f, int i);

struct AutGroup {
  SearchStatus status = SearchStatus::None;
  FiniteGroup group;
  std::vector<DiagramMap> elements;  // automorphisms of F x Delta[n] over Delta[n]
  ProductDiagram source;
};
AutGroup aut_group(const CDiagram& F, int n, long long budget);

}  // namespace mfib
