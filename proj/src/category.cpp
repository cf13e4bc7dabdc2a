#include "mfib/category.hpp"

#include <array>
#include <map>

#include "mfib/simplicial.hpp"

namespace mfib {

namespace {

FiniteCategory::Law check_laws(const FiniteCategory& C) {
  FiniteCategory::Law law;
  const int M = C.num_morphisms();
  for (int g = 0; g < M; ++g)
    for (int f = 0; f < M; ++f) {
      bool composable = C.morphism(g).src == C.morphism(f).dst;
      int h = C.compose(g, f);
      if (composable && h < 0) {
        law = {false, "composite missing", {C.morphism(g).name, C.morphism(f).name}};
        return law;
      }
      if (composable && (C.morphism(h).src != C.morphism(f).src || C.morphism(h).dst != C.morphism(g).dst)) {
        law = {false, "composite has the wrong type", {C.morphism(g).name, C.morphism(f).name}};
        return law;
      }
    }
  for (int f = 0; f < M; ++f) {
    if (C.compose(C.identity(C.morphism(f).dst), f) != f || C.compose(f, C.identity(C.morphism(f).src)) != f) {
      law = {false, "identity law fails", {C.morphism(f).name}};
      return law;
    }
  }
  for (int h = 0; h < M; ++h)
    for (int g = 0; g < M; ++g) {
      int hg = C.compose(h, g);
      if (hg < 0) continue;
      for (int f = 0; f < M; ++f) {
        int gf = C.compose(g, f);
        if (gf < 0) continue;
        if (C.compose(hg, f) != C.compose(h, gf)) {
          law = {false, "associativity fails", {C.morphism(h).name, C.morphism(g).name, C.morphism(f).name}};
          return law;
        }
      }
    }
  return law;
}

}  // namespace

FiniteCategory FiniteCategory::make_unchecked(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                                              const std::vector<std::array<std::string, 3>>& compositions) {
  FiniteCategory C;
  C.objects_ = std::move(objects);
  std::map<std::string, int> obj;
  for (int c = 0; c < C.num_objects(); ++c)
    if (!obj.emplace(C.objects_[c], c).second) throw ValidationError("duplicate object '" + C.objects_[c] + "'");
  std::map<std::string, int> mor;
  for (auto& m : morphisms) {
    if (m.src < 0 || m.src >= C.num_objects() || m.dst < 0 || m.dst >= C.num_objects())
      throw ValidationError("morphism '" + m.name + "' has an unknown endpoint");
    if (!mor.emplace(m.name, static_cast<int>(C.mor_.size())).second)
      throw ValidationError("duplicate morphism '" + m.name + "'");
    C.mor_.push_back(m);
  }
  C.id_.assign(C.num_objects(), -1);
  for (int c = 0; c < C.num_objects(); ++c) {
    std::string name = "id_" + C.objects_[c];
    auto it = mor.find(name);
    if (it == mor.end()) {
      mor.emplace(name, static_cast<int>(C.mor_.size()));
      C.id_[c] = static_cast<int>(C.mor_.size());
      C.mor_.push_back({name, c, c});
    } else {
      if (C.mor_[it->second].src != c || C.mor_[it->second].dst != c)
        throw ValidationError("'" + name + "' must be an endomorphism of " + C.objects_[c]);
      C.id_[c] = it->second;
    }
  }
  const int M = C.num_morphisms();
  C.comp_.assign(M, std::vector<int>(M, -1));
  for (int f = 0; f < M; ++f) {
    C.comp_[C.id_[C.mor_[f].dst]][f] = f;
    C.comp_[f][C.id_[C.mor_[f].src]] = f;
  }
  for (auto& t : compositions) {
    auto g = mor.find(t[0]), f = mor.find(t[1]), h = mor.find(t[2]);
    if (g == mor.end() || f == mor.end() || h == mor.end())
      throw ValidationError("composition entry names an unknown morphism: " + t[0] + " o " + t[1] + " = " + t[2]);
    if (C.mor_[g->second].src != C.mor_[f->second].dst)
      throw ValidationError("composition entry is not composable: " + t[0] + " o " + t[1]);
    int& slot = C.comp_[g->second][f->second];
    if (slot >= 0 && slot != h->second)
      throw ValidationError("conflicting composition entries for " + t[0] + " o " + t[1]);
    slot = h->second;
  }
  C.hom_.assign(C.num_objects(), std::vector<std::vector<int>>(C.num_objects()));
  for (int f = 0; f < M; ++f) C.hom_[C.mor_[f].src][C.mor_[f].dst].push_back(f);
  return C;
}

FiniteCategory FiniteCategory::make(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                                    const std::vector<std::array<std::string, 3>>& compositions) {
  FiniteCategory C = make_unchecked(std::move(objects), std::move(morphisms), compositions);
  Law law = C.validate();
  if (!law.ok) {
    std::string w;
    for (auto& s : law.witness) w += (w.empty() ? "" : ", ") + s;
    throw ValidationError("category law violated: " + law.message + " at (" + w + ")");
  }
  return C;
}

FiniteCategory FiniteCategory::trivial() { return make({"*"}, {}, {}); }

FiniteCategory FiniteCategory::arrow() { return make({"a", "b"}, {{"f", 0, 1}}, {}); }

FiniteCategory FiniteCategory::cospan() { return make({"a", "b", "c"}, {{"f", 0, 1}, {"g", 2, 1}}, {}); }

FiniteCategory FiniteCategory::from_group(const FiniteGroup& G) {
  std::vector<Morphism> mor;
  std::vector<std::string> name(G.order());
  for (int a = 0; a < G.order(); ++a) {
    name[a] = a == G.unit ? "id_*" : G.names[a];
    mor.push_back({name[a], 0, 0});
  }
  std::vector<std::array<std::string, 3>> comp;
  for (int a = 0; a < G.order(); ++a)
    for (int b = 0; b < G.order(); ++b) comp.push_back({name[a], name[b], name[G.mul(a, b)]});
  return make({"*"}, mor, comp);
}

int FiniteCategory::object_index(const std::string& name) const {
  for (int c = 0; c < num_objects(); ++c)
    if (objects_[c] == name) return c;
  return -1;
}

int FiniteCategory::morphism_index(const std::string& name) const {
  for (int f = 0; f < num_morphisms(); ++f)
    if (mor_[f].name == name) return f;
  return -1;
}

std::optional<int> FiniteCategory::inverse(int f) const {
  const Morphism& m = mor_[f];
  for (int g : hom_[m.dst][m.src])
    if (comp_[g][f] == id_[m.src] && comp_[f][g] == id_[m.dst]) return g;
  return std::nullopt;
}

bool FiniteCategory::is_iso(int f) const { return inverse(f).has_value(); }

FiniteCategory::Law FiniteCategory::validate() const { return check_laws(*this); }

bool FiniteCategory::is_ei() const {
  for (int c = 0; c < num_objects(); ++c)
    for (int f : hom_[c][c])
      if (!is_iso(f)) return false;
  return true;
}

ComponentPoset component_poset(const FiniteCategory& C) {
  const int n = C.num_objects();
  // Reachability through hom-sets; composition makes it transitive already.
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) reach[a][b] = !C.hom(a, b).empty();
  ComponentPoset P;
  P.class_of.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    if (P.class_of[a] >= 0) continue;
    int k = static_cast<int>(P.classes.size());
    P.classes.push_back({});
    for (int b = a; b < n; ++b)
      if (P.class_of[b] < 0 && reach[a][b] && reach[b][a]) {
        P.class_of[b] = k;
        P.classes[k].push_back(b);
      }
  }
  const int K = static_cast<int>(P.classes.size());
  P.leq.assign(K, std::vector<char>(K, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (reach[a][b]) P.leq[P.class_of[a]][P.class_of[b]] = 1;
  return P;
}

std::vector<int> ComponentPoset::maximal() const {
  std::vector<int> out;
  const int K = static_cast<int>(classes.size());
  for (int a = 0; a < K; ++a) {
    bool top = true;
    for (int b = 0; b < K && top; ++b) top = b == a || !leq[a][b];
    if (top) out.push_back(a);
  }
  return out;
}

std::vector<int> ComponentPoset::minimal() const {
  std::vector<int> out;
  const int K = static_cast<int>(classes.size());
  for (int a = 0; a < K; ++a) {
    bool bottom = true;
    for (int b = 0; b < K && bottom; ++b) bottom = b == a || !leq[b][a];
    if (bottom) out.push_back(a);
  }
  return out;
}

}  // namespace mfib
