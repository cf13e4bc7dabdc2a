#include "mfib/finite_group.hpp"

#include <algorithm>
#include <numeric>

#include "mfib/simplicial.hpp"

namespace mfib {

int FiniteGroup::index_of(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

FiniteGroup FiniteGroup::from_table(std::vector<std::string> names, std::vector<std::vector<int>> mult) {
  const int n = static_cast<int>(names.size());
  if (n == 0) throw ValidationError("group has no elements");
  if (static_cast<int>(mult.size()) != n) throw ValidationError("multiplication table has wrong row count");
  for (auto& row : mult) {
    if (static_cast<int>(row.size()) != n) throw ValidationError("multiplication table has wrong column count");
    for (int v : row)
      if (v < 0 || v >= n) throw ValidationError("multiplication table entry out of range");
  }
  FiniteGroup G;
  G.names = std::move(names);
  G.mult = std::move(mult);
  G.unit = -1;
  for (int e = 0; e < n && G.unit < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = G.mult[e][a] == a && G.mult[a][e] == a;
    if (ok) G.unit = e;
  }
  if (G.unit < 0) throw ValidationError("multiplication table has no unit");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (G.mult[G.mult[a][b]][c] != G.mult[a][G.mult[b][c]])
          throw ValidationError("multiplication is not associative at (" + G.names[a] + "," + G.names[b] + "," +
                                G.names[c] + ")");
  G.inv.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (G.mult[a][b] == G.unit && G.mult[b][a] == G.unit) G.inv[a] = b;
    if (G.inv[a] < 0) throw ValidationError("element " + G.names[a] + " has no inverse");
  }
  return G;
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw ValidationError("cyclic group order must be positive");
  std::vector<std::string> names;
  for (int k = 0; k < n; ++k) names.push_back(k == 0 ? "e" : k == 1 ? "g" : "g" + std::to_string(k));
  std::vector<std::vector<int>> mult(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mult[a][b] = (a + b) % n;
  return from_table(std::move(names), std::move(mult));
}

FiniteGroup FiniteGroup::symmetric(int n) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::string> names;
  for (auto& q : perms) {
    std::string s = "[";
    for (int i = 0; i < n; ++i) s += (i ? "," : "") + std::to_string(q[i]);
    names.push_back(s + "]");
  }
  const int m = static_cast<int>(perms.size());
  std::vector<std::vector<int>> mult(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      std::vector<int> c(n);
      for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      mult[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return from_table(std::move(names), std::move(mult));
}

}  // namespace mfib
