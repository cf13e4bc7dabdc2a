#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mfib/finite_group.hpp"

namespace mfib {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationError : Error {
  using Error::Error;
};
struct TruncationError : Error {
  using Error::Error;
};

// Degeneracy word s_{j_t} ... s_{j_1}, stored outermost first and strictly
// decreasing. The empty word is the identity.
using Word = std::vector<int>;

bool word_valid(const Word& w, int base_dim);
// Normal form of s_a applied on top of w.
Word word_insert(int a, const Word& w);
// Normal form of outer o inner, where outer is any sequence of degeneracies
// (outermost first).
Word word_compose(const Word& outer, const Word& inner);
// The monotone surjection [base_dim + |w|] -> [base_dim] encoded by w.
std::vector<int> word_surjection(const Word& w, int base_dim);

struct SimplexRef {
  int gen = -1;
  Word word;
  auto operator<=>(const SimplexRef&) const = default;
};

struct Generator {
  std::string name;
  int dim = 0;
  std::vector<SimplexRef> faces;  // empty in dimension 0
};

// One face or degeneracy operator; kind is 'd' or 's'.
struct Op {
  char kind = 'd';
  int index = 0;
};
// Parses "d1 s0" (outermost first).
std::vector<Op> parse_ops(const std::string& text);

// Levelwise-finite simplicial set truncated at dimension N, presented by
// non-degenerate generators and their faces. All simplices up to N are
// materialized in canonical order (dimension, generator id, word).
class SSet {
 public:
  SSet() = default;

  // Generators are reordered stably by dimension; face refs use indices of
  // the input vector. Throws ValidationError/TruncationError.
  static SSet from_presentation(int truncation, std::vector<Generator> gens);

  int truncation() const { return N_; }
  int size(int n) const { return n < 0 || n > N_ ? 0 : static_cast<int>(levels_[n].size()); }
  int num_generators() const { return static_cast<int>(gens_.size()); }
  const Generator& generator(int g) const { return gens_[g]; }
  const std::vector<Generator>& generators() const { return gens_; }
  int generator_by_name(const std::string& name) const;
  int generator_simplex(int g) const;
  std::vector<int> generator_counts() const;

  const SimplexRef& ref(int n, int x) const { return levels_[n][x]; }
  int find(int n, const SimplexRef& r) const;  // -1 if absent
  int index(int n, const SimplexRef& r) const;  // throws if absent

  int face(int n, int x, int i) const { return face_[n][static_cast<std::size_t>(x) * (n + 1) + i]; }
  int degen(int n, int x, int i) const;
  bool degenerate(int n, int x) const { return !levels_[n][x].word.empty(); }

  // Applies a degeneracy word to the m-simplex x.
  int apply_word(const Word& w, int m, int x) const;
  // Applies the simplicial operator a: [k] -> [n] (monotone) to x in X_n.
  int apply_monotone(const std::vector<int>& a, int n, int x) const;
  // Applies an operator word (outermost first) to x in X_n; returns (dim, idx).
  std::pair<int, int> apply_ops(const std::vector<Op>& ops, int n, int x) const;

  // Face of a normal-form reference of dimension n, computed symbolically.
  SimplexRef ref_face(const SimplexRef& r, int n, int i) const;
  int ref_dim(const SimplexRef& r) const { return gens_[r.gen].dim + static_cast<int>(r.word.size()); }

  std::string ref_string(const SimplexRef& r) const;
  std::string simplex_string(int n, int x) const { return ref_string(ref(n, x)); }
  SimplexRef parse_ref(const std::string& text) const;

  // Returns a description of the first violated simplicial identity.
  std::optional<std::string> check_identities() const;

 private:
  int N_ = -1;
  std::vector<Generator> gens_;
  std::map<std::string, int> by_name_;
  std::vector<std::vector<SimplexRef>> levels_;
  std::vector<std::map<SimplexRef, int>> index_;
  std::vector<std::vector<int>> face_;
  std::vector<std::vector<int>> degen_;
  std::vector<int> gen_simplex_;
};

// Operator word applied to a normal-form reference. Throws TruncationError
// if an intermediate dimension exceeds the truncation.
SimplexRef normalize(const SSet& X, const std::vector<Op>& ops, const SimplexRef& s);

// Explicit levelwise tables; converted to a presentation by detecting
// non-degenerate simplices.
struct Tables {
  int N = 0;
  std::vector<int> size;
  std::vector<std::vector<int>> face;   // [n][x*(n+1)+i]
  std::vector<std::vector<int>> degen;  // [n][x*(n+1)+i], n < N
  std::vector<std::vector<std::string>> label;
};

struct BuiltSet {
  SSet set;
  std::vector<std::vector<int>> to_canon;  // table index -> canonical index
};

// Validates that the tables are simplicial and returns the presentation.
BuiltSet build_from_tables(const Tables& t);

// A simplicial set whose simplices carry keys (pairs, tuples, ...).
template <class Key>
struct Keyed {
  SSet set;
  std::vector<std::vector<Key>> key;           // canonical index -> key
  std::vector<std::map<Key, int>> index;        // key -> canonical index
  int at(int n, const Key& k) const {
    auto it = index[n].find(k);
    if (it == index[n].end()) throw Error("simplex key not present");
    return it->second;
  }
};

template <class Key, class FaceFn, class DegFn, class LabelFn>
Keyed<Key> build_keyed(int N, const std::vector<std::vector<Key>>& levels, FaceFn face, DegFn degen, LabelFn label) {
  Tables t;
  t.N = N;
  t.size.resize(N + 1);
  t.face.resize(N + 1);
  t.degen.resize(N + 1);
  t.label.resize(N + 1);
  std::vector<std::map<Key, int>> local(N + 1);
  for (int n = 0; n <= N; ++n) {
    t.size[n] = static_cast<int>(levels[n].size());
    for (int x = 0; x < t.size[n]; ++x) local[n].emplace(levels[n][x], x);
    if (static_cast<int>(local[n].size()) != t.size[n]) throw Error("duplicate simplex keys");
  }
  auto lookup = [&](int n, const Key& k) {
    auto it = local[n].find(k);
    if (it == local[n].end()) throw ValidationError("operator leaves the simplex set in dimension " + std::to_string(n));
    return it->second;
  };
  for (int n = 0; n <= N; ++n) {
    for (int x = 0; x < t.size[n]; ++x) {
      t.label[n].push_back(label(n, levels[n][x]));
      if (n > 0)
        for (int i = 0; i <= n; ++i) t.face[n].push_back(lookup(n - 1, face(n, levels[n][x], i)));
      if (n < N)
        for (int i = 0; i <= n; ++i) t.degen[n].push_back(lookup(n + 1, degen(n, levels[n][x], i)));
    }
  }
  BuiltSet b = build_from_tables(t);
  Keyed<Key> out;
  out.key.resize(N + 1);
  out.index.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    out.key[n].resize(t.size[n]);
    for (int x = 0; x < t.size[n]; ++x) {
      int c = b.to_canon[n][x];
      out.key[n][c] = levels[n][x];
      out.index[n].emplace(levels[n][x], c);
    }
  }
  out.set = std::move(b.set);
  return out;
}

// Simplicial map, stored levelwise up to min(source, target) truncation.
struct SMap {
  std::vector<std::vector<int>> level;
  int operator()(int n, int x) const { return level[n][x]; }
  int truncation() const { return static_cast<int>(level.size()) - 1; }
  bool operator==(const SMap&) const = default;
};

// Extends an assignment of generators (as simplex indices of Y in the
// generator's dimension) to all simplices.
SMap map_from_generators(const SSet& X, const SSet& Y, const std::vector<int>& gen_values);
SMap identity_map(const SSet& X);
SMap constant_map(const SSet& X, const SSet& Y, int vertex);
SMap compose(const SMap& g, const SMap& f);
// Checks commutation with faces and degeneracies; returns the first defect.
std::optional<std::string> map_defect(const SSet& X, const SSet& Y, const SMap& f);
void validate_map(const SSet& X, const SSet& Y, const SMap& f);

// Standard complexes. Simplices of Delta[n] are monotone sequences [m] -> [n].
using Seq = std::vector<int>;
Keyed<Seq> standard_simplex_keyed(int n, int N);
SSet standard_simplex(int n, int N = -1);
SSet boundary(int n, int N = -1);
SSet horn(int n, int k, int N = -1);
SSet point(int N);
SSet empty_set(int N);
SSet circle(int N);
SSet group_nerve(const FiniteGroup& G, int N);
// Codiscrete nerve on m points: n-simplices are (n+1)-tuples.
SSet codiscrete_nerve(int points, int N);
SSet discrete_set(int points, int N);

// Enumerates X_n in canonical order.
std::vector<SimplexRef> enumerate_simplices(const SSet& X, int n);

// Number of degeneracy words raising dimension m to n.
long long word_count(int m, int n);

struct HornProblem {
  int n = 1;
  int k = 0;
  std::vector<int> faces;  // simplices of X_{n-1}; entry k ignored (use -1)
};

// Throws ValidationError naming the first incompatible face pair.
void validate_horn(const SSet& X, const HornProblem& h);
std::optional<int> fill_horn(const SSet& X, const HornProblem& h);

struct HornFailure {
  HornProblem horn;
  int base = -1;  // simplex of B_n the horn lies over
};

struct KanReport {
  int dim = 0;
  bool ok = true;
  long long horns_checked = 0;
  std::vector<HornFailure> failures;
};

KanReport is_kan_fibration_upto(const SSet& X, const SSet& B, const SMap& p, int d, std::size_t max_failures = 8);

using Pair = std::pair<int, int>;
Keyed<Pair> product_keyed(const SSet& X, const SSet& K);
SSet product(const SSet& X, const SSet& K);

// Coproduct of copies; keys are (copy, simplex).
Keyed<Pair> disjoint_union(const std::vector<const SSet*>& parts, const std::vector<std::string>& suffixes);

// Subcomplex spanned by a face- and degeneracy-closed selection.
Keyed<int> subcomplex(const SSet& X, const std::vector<std::vector<char>>& keep, int N = -1);

int connected_components(const SSet& X);

}  // namespace mfib
