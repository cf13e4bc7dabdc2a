#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mfib/finite_group.hpp"

namespace mfib {

struct Morphism {
  std::string name;
  int src = 0;
  int dst = 0;
};

// Finite category with a total composition table. Identities are named
// id_<object> and are added when missing.
class FiniteCategory {
 public:
  struct Law {
    bool ok = true;
    std::string message;
    std::vector<std::string> witness;  // offending morphisms, e.g. (h, g, f)
  };

  // compositions: (g, f, g∘f) by name. Composites with identities may be
  // omitted. Throws ValidationError on malformed input or failed laws.
  static FiniteCategory make(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                             const std::vector<std::array<std::string, 3>>& compositions);
  // Same but returns the failed law instead of throwing on law violations.
  static FiniteCategory make_unchecked(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                                       const std::vector<std::array<std::string, 3>>& compositions);

  static FiniteCategory trivial();
  static FiniteCategory arrow();                 // a -> b
  static FiniteCategory cospan();                // a -> b <- c
  static FiniteCategory from_group(const FiniteGroup& G);  // one object

  int num_objects() const { return static_cast<int>(objects_.size()); }
  int num_morphisms() const { return static_cast<int>(mor_.size()); }
  const std::string& object(int c) const { return objects_[c]; }
  const Morphism& morphism(int f) const { return mor_[f]; }
  int object_index(const std::string& name) const;
  int morphism_index(const std::string& name) const;
  int identity(int c) const { return id_[c]; }
  // g∘f, or -1 if not composable.
  int compose(int g, int f) const { return comp_[g][f]; }
  const std::vector<int>& hom(int a, int b) const { return hom_[a][b]; }
  bool is_identity(int f) const { return id_[mor_[f].src] == f; }
  bool is_iso(int f) const;
  std::optional<int> inverse(int f) const;

  Law validate() const;
  bool is_ei() const;
  // Finite categories always satisfy the descending chain condition.
  bool is_artinian() const { return true; }

 private:
  std::vector<std::string> objects_;
  std::vector<Morphism> mor_;
  std::vector<int> id_;
  std::vector<std::vector<int>> comp_;
  std::vector<std::vector<std::vector<int>>> hom_;
};

struct ComponentPoset {
  std::vector<int> class_of;              // object -> class
  std::vector<std::vector<int>> classes;  // class -> objects
  std::vector<std::vector<char>> leq;     // leq[a][b]: [a] <= [b]
  std::vector<int> maximal() const;
  std::vector<int> minimal() const;
};

ComponentPoset component_poset(const FiniteCategory& C);

}  // namespace mfib
