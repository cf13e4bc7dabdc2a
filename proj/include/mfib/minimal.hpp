#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mfib/diagram.hpp"

namespace mfib {

// Finite preorder; rel is kept reflexive and transitive.
struct PreorderedSet {
  int size = 0;
  std::vector<std::vector<char>> rel;  // rel[a][b]: a ⪯ b

  static PreorderedSet from_pairs(int n, const std::vector<std::pair<int, int>>& pairs);
  bool leq(int a, int b) const { return rel[a][b] != 0; }
  bool equivalent(int a, int b) const { return rel[a][b] && rel[b][a]; }
};

// One element of every minimal class, the least index of the class, or the
// least preferred index when the class has preferred members.
std::vector<int> minimal_subset(const PreorderedSet& A, const std::vector<char>& preferred = {});
// R1: every element is preceded by a member of sub.
bool satisfies_r1(const PreorderedSet& A, const std::vector<int>& sub);
// R2: no proper subset of sub satisfies R1.
bool satisfies_r2(const PreorderedSet& A, const std::vector<int>& sub);
// Every subset satisfying R1 and R2, by exhaustive search (size <= 20).
std::vector<std::vector<int>> brute_force_minimal_subsets(const PreorderedSet& A);

// Fibrewise homotopy rel boundary between two n-simplices of X(c).
Homotopy p_homotopic(const Fibration& p, int c, int n, int x, int y, long long budget, int T = -1);

struct SubPreorder {
  int dim = 0;
  std::vector<GammaSimplex> elems;  // basis elements of dimension <= dim
  PreorderedSet order;
  struct Link {
    int a = 0, b = 0;   // positions in elems, a != b
    int morphism = -1;  // f with f(a) ≃_p b
    std::vector<int> top;
  };
  std::vector<Link> links;
  std::vector<std::pair<int, int>> unknown;  // pairs whose every search hit the budget
  // Mutually related pairs whose witness morphisms compose to a non-iso.
  std::vector<std::pair<int, int>> ei_violations;
  long long nodes = 0;
  int position(const GammaSimplex& s) const;
};

// budget caps each individual prism search.
SubPreorder sub_p_preorder(const Fibration& p, const FreeBasis& basis, int d, long long budget);

struct MinimalityReport {
  int dim = 0;
  bool minimal = true;       // no violation found
  bool up_to_budget = false; // some pairs stayed unknown
  SubPreorder preorder;
  std::vector<SubPreorder::Link> violations;
};
MinimalityReport is_minimal(const Fibration& p, const FreeBasis& basis, int d, long long budget);

// Strong fibrewise deformation retract q: X̂ -> B of p with its retraction
// and homotopy, certified through dimension dim.
struct MinimalModel {
  SearchStatus status = SearchStatus::None;
  std::string failure;
  int dim = 0;
  std::vector<GammaSimplex> sigma_prime;
  std::vector<std::vector<std::vector<char>>> member;  // [c][m][x]: x in X̂(c)
  Fibration sub;                                       // truncated like X
  std::vector<Keyed<int>> sub_keys;                    // X̂(c) simplex -> X(c) index
  FreeBasis sub_basis;
  std::vector<Keyed<Pair>> cylinder;  // X(c) up to dim x Delta[1]; keys (X(c) index, Delta[1] index)
  Keyed<Seq> interval;
  std::vector<SMap> homotopy;         // cylinder(c) -> X(c)
  std::vector<SMap> retraction;       // X(c) -> X(c) up to dim, image in X̂(c)
  struct CellStep {
    GammaSimplex z;
    int z1 = -1;              // G_0, boundary inside X̂
    int y = -1;               // simplex of X̂ homotopic to z1 rel boundary
    std::vector<int> top;     // H_z on the top prism simplices
  };
  std::vector<CellStep> steps;
  long long nodes = 0;
};

// Needs an EI category, a basis of X, and truncation of X at least d + 2.
MinimalModel extract_minimal(const Fibration& p, const FreeBasis& basis, int d, long long budget);
// Rechecks every retract identity bit-exactly; nullopt when all hold.
std::optional<std::string> model_defect(const Fibration& p, const MinimalModel& m);

struct IsoResult {
  SearchStatus status = SearchStatus::None;
  std::optional<DiagramMap> iso;
  long long nodes = 0;
};
// Isomorphism of total diagrams over a shared base.
IsoResult minimal_iso(const Fibration& p, const Fibration& q, long long budget);

// Copy of p with generators shuffled within each dimension and renamed.
struct Relabeled {
  Fibration fibration;
  std::vector<std::vector<std::vector<int>>> to_new;  // [c][n][old index]
};
Relabeled relabel_generators(const Fibration& p, std::uint32_t seed, const std::string& prefix = "r_");

}  // namespace mfib
