#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "mfib/simplicial.hpp"

namespace mfib {

enum class SearchStatus { Found, None, Exhausted };
const char* status_name(SearchStatus s);

// big together with the generators that form the subcomplex small; the
// remaining generators are the attached cells, dimension-ascending and in
// canonical order within a dimension.
struct CellInclusion {
  const SSet* big = nullptr;
  std::vector<char> in_small;  // per generator of big
  std::vector<int> cells;

  // Throws ValidationError if small is not closed under faces.
  static CellInclusion make(const SSet& big, std::vector<char> in_small);
};

struct LiftingProblem {
  CellInclusion inclusion;
  const SSet* X = nullptr;
  // Optional fibration p: X -> B and base map big -> B.
  const SSet* B = nullptr;
  const SMap* p = nullptr;
  const SMap* base = nullptr;
  std::vector<int> partial;  // per generator of big, -1 off small
};

struct LiftResult {
  SearchStatus status = SearchStatus::None;
  std::vector<int> gen_values;
  SMap map;  // big -> X when found
  long long nodes = 0;
};

// Backtracking over cells in order; candidates are tried in canonical order,
// so the returned lift is the least one. budget <= 0 means unlimited.
LiftResult solve(const LiftingProblem& problem, long long budget);

// Delta[n] x Delta[1] with keyed coordinates, truncated at T >= n+1.
struct PrismShape {
  int n = 0;
  int T = 0;
  Keyed<Seq> simplex;
  Keyed<Seq> interval;
  Keyed<Pair> prism;
  // Index in prism level n+1 of the j-th top simplex (0 <= j <= n).
  int top(int j) const;
  Seq seq_a(int m, int idx) const { return simplex.key[m][prism.key[m][idx].first]; }
  Seq seq_u(int m, int idx) const { return interval.key[m][prism.key[m][idx].second]; }
};

std::shared_ptr<const PrismShape> prism_shape(int n, int T = -1);

struct Homotopy {
  SearchStatus status = SearchStatus::None;
  int n = 0;
  std::vector<int> top;  // H on the n+1 top prism simplices
  SMap map;              // H as a map on shape->prism.set
  std::shared_ptr<const PrismShape> shape;
  long long nodes = 0;
};

// H: Delta[n] x Delta[1] -> X with H_0 = x and H_1 = y. p and B may be null
// when fibrewise is false. T is the prism truncation (default n+1).
Homotopy prism_homotopy(const SSet& X, int n, int x, int y, const SSet* B, const SMap* p, bool rel_boundary,
                        bool fibrewise, long long budget, int T = -1);

// Checks a homotopy against the conditions it was searched under.
bool homotopy_valid(const SSet& X, int x, int y, const SSet* B, const SMap* p, bool rel_boundary, bool fibrewise,
                    const Homotopy& h);

}  // namespace mfib
