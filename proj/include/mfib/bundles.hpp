#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mfib/diagram.hpp"

namespace mfib {

// Simplicial group truncated at N: one finite group per level, faces and
// degeneracies as homomorphisms.
class SimplicialGroup {
 public:
  static SimplicialGroup constant(const FiniteGroup& G, int N);
  // face[n][g*(n+1)+i] (n >= 1), degen[n][g*(n+1)+i] (n < N). Throws on
  // non-homomorphisms or violated identities.
  static SimplicialGroup from_tables(std::vector<FiniteGroup> levels, std::vector<std::vector<int>> face,
                                     std::vector<std::vector<int>> degen);

  int truncation() const { return static_cast<int>(levels_.size()) - 1; }
  const FiniteGroup& level(int n) const { return levels_[n]; }
  int unit(int n) const { return levels_[n].unit; }
  int mul(int n, int a, int b) const { return levels_[n].mul(a, b); }
  int inv(int n, int a) const { return levels_[n].inv[a]; }
  int face(int n, int g, int i) const { return face_[n][static_cast<std::size_t>(g) * (n + 1) + i]; }
  int degen(int n, int g, int i) const { return degen_[n][static_cast<std::size_t>(g) * (n + 1) + i]; }
  // a: [m] -> [n] monotone, applied to g in G_n.
  int apply_monotone(const Seq& a, int n, int g) const;
  bool is_constant() const { return constant_; }
  // Underlying simplicial set; key = element index.
  const Keyed<int>& underlying() const { return *under_; }

 private:
  std::vector<FiniteGroup> levels_;
  std::vector<std::vector<int>> face_, degen_;
  bool constant_ = false;
  std::shared_ptr<const Keyed<int>> under_;
  void finish();
};

// Left action G x F -> F, levelwise tables.
struct GroupAction {
  std::shared_ptr<const SimplicialGroup> group;
  CDiagram space;
  std::vector<std::vector<std::vector<int>>> table;  // [c][n][g * |F(c)_n| + x]

  int act(int c, int n, int g, int x) const {
    return table[c][n][static_cast<std::size_t>(g) * space[c].size(n) + x];
  }
  std::optional<std::string> defect() const;
  void validate() const;

  // Constant group: element g sends generator k of F(c) to images[g][c][k]
  // (a simplex index of F(c) in the generator's dimension).
  static GroupAction from_generators(std::shared_ptr<const SimplicialGroup> G, CDiagram F,
                                     const std::vector<std::vector<std::vector<int>>>& images);
  static GroupAction trivial(std::shared_ptr<const SimplicialGroup> G, CDiagram F);
  // G acting on its underlying set by left multiplication, trivial category.
  static GroupAction left_translation(std::shared_ptr<const SimplicialGroup> G);
};

// t_n: B_n -> G_{n-1} for 1 <= n <= dim; value[0] is empty.
struct TwistingFunction {
  std::vector<std::vector<int>> value;
  int dim() const { return static_cast<int>(value.size()) - 1; }
  bool operator==(const TwistingFunction&) const = default;
};

struct TwistingDefect {
  std::string identity;
  int n = 0;  // dimension of v
  int v = 0;
};
std::optional<TwistingDefect> twisting_defect(const SSet& B, const SimplicialGroup& G, const TwistingFunction& t);
TwistingFunction unit_twisting(const SSet& B, const SimplicialGroup& G, int d);
// Values on non-degenerate simplices (by generator); degenerate values follow
// t(s_0 w) = e and t(s_{j+1} w) = s_j t(w).
TwistingFunction twisting_from_generators(const SSet& B, const SimplicialGroup& G, int d,
                                          const std::vector<int>& gen_values);

struct TwistingSearch {
  SearchStatus status = SearchStatus::None;
  std::vector<TwistingFunction> found;
  long long nodes = 0;
};
TwistingSearch enumerate_twistings(const SSet& B, const SimplicialGroup& G, int d, long long budget);

// Degree-preserving gamma: B_n -> G_n, n <= dim.
using GammaFunction = std::vector<std::vector<int>>;

struct EquivalenceSearch {
  SearchStatus status = SearchStatus::None;
  GammaFunction gamma;
  long long nodes = 0;
};
// Searches gamma with t'(v) d_0 gamma(v) = gamma(d_0 v) t(v), d_i gamma = gamma d_i (i > 0),
// s_i gamma = gamma s_i.
EquivalenceSearch twisting_equivalent(const SSet& B, const SimplicialGroup& G, const TwistingFunction& t,
                                      const TwistingFunction& t2, long long budget);
std::optional<std::string> gamma_defect(const SSet& B, const SimplicialGroup& G, const TwistingFunction& t,
                                        const TwistingFunction& t2, const GammaFunction& gamma);

// B x_t F over the constant base B.
struct Tcp {
  Fibration bundle;
  std::vector<Keyed<Pair>> keys;  // per object: (b, x)
  int dim() const { return bundle.total.truncation(); }
};
Tcp build_tcp(const SSet& B, const TwistingFunction& t, const GroupAction& action);
// h(v, x) = (v, gamma(v) x) from B x_t F to B x_t' F.
DiagramMap tcp_map_from_gamma(const Tcp& from, const Tcp& to, const GroupAction& action, const GammaFunction& gamma);

// Local trivializations beta(v): Delta[n] x F -> X over v.
struct Atlas {
  int dim = 0;
  std::vector<Keyed<Seq>> simplex;                  // [n]: Delta[n] truncated at dim
  std::vector<std::vector<Keyed<Pair>>> domain;     // [n][c]: Delta[n] x F(c)
  std::vector<std::vector<std::vector<SMap>>> beta; // [n][v][c]
};

Atlas tautological_atlas(const Tcp& X, const SSet& B, const TwistingFunction& t, const GroupAction& action);
// beta'(v) = beta(v) o rho(gamma(v)).
Atlas perturb_atlas(const Atlas& a, const GroupAction& action, const GammaFunction& gamma);
// beta'(s_J v) = beta(v) o (s^J x 1) on degenerate v.
Atlas normalize_atlas(const Atlas& a, const SSet& B);
// Replaces beta on one simplex (used to build non-normal inputs).
std::optional<std::string> atlas_defect(const Atlas& a, const Fibration& bundle, const GroupAction& action);
bool atlas_is_normal(const Atlas& a, const SSet& B);

struct TransformationElements {
  SearchStatus status = SearchStatus::None;  // None: some xi is not in G
  std::string failure;
  std::vector<std::vector<std::vector<int>>> xi;  // [n][v][i] in G_{n-1}
  bool unique = true;  // false when the action is not faithful enough to pin xi
};
TransformationElements transformation_elements(const Atlas& a, const SSet& B, const GroupAction& action);
bool is_regular(const TransformationElements& x, const SimplicialGroup& G);
TwistingFunction xi0_twisting(const TransformationElements& x);

struct Regularized {
  SearchStatus status = SearchStatus::None;
  Atlas atlas;
  GammaFunction gamma;
  long long nodes = 0;
};
Regularized regularize(const Atlas& a, const SSet& B, const GroupAction& action, long long budget);

// h_c(v, z) = beta(v)(iota_n, z) from B x_{xi^0} F to the bundle.
DiagramMap atlas_trivialization(const Atlas& a, const Tcp& model, const Fibration& bundle);

enum class WbarConvention { Twisting, May };
struct Wbar {
  Keyed<std::vector<int>> set;  // key: (g_{n-1}, ..., g_0)
  TwistingFunction tau;         // tau(g_{n-1}, ..., g_0) = g_{n-1}
  WbarConvention convention = WbarConvention::Twisting;
};
Wbar wbar(const SimplicialGroup& G, int d, WbarConvention conv = WbarConvention::Twisting);
// f_t(v) = (t(v), t(d_0 v), ..., t(d_0^{n-1} v)).
SMap classifying_map(const SSet& B, const Wbar& W, const TwistingFunction& t);
TwistingFunction pullback_twisting(const SSet& B, const Wbar& W, const SMap& f);

Tcp principal_tcp(const SSet& B, const TwistingFunction& t, std::shared_ptr<const SimplicialGroup> G);
struct Associated {
  Fibration bundle;            // ((B x_t G) x F) / G
  DiagramMap to_tcp;           // class of ((b, g), x) -> (b, g x)
  bool iso = false;            // to_tcp is a bijective diagram map over B
};
Associated associated(const SSet& B, const TwistingFunction& t, const GroupAction& action);

struct ClassifyReport {
  SearchStatus status = SearchStatus::None;
  int dim = 0;
  std::vector<TwistingFunction> twistings;
  std::vector<int> twisting_class;
  int twisting_classes = 0;
  std::vector<SMap> maps;
  std::vector<int> map_class;
  int map_classes = 0;
  bool bijection = false;      // t -> f_t bijective and compatible with both relations
  bool tcp_isos_ok = false;    // every gamma found induces an isomorphism of TCPs
  std::vector<std::string> notes;
  long long nodes = 0;
};
ClassifyReport classify(const SSet& B, const GroupAction& action, int d, long long budget);

// Restriction of X to dimensions <= d; simplex indices are unchanged.
SSet truncate_set(const SSet& X, int d);

}  // namespace mfib
