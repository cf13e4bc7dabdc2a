#pragma once

#include <string>
#include <vector>

namespace mfib {

// A finite group given by its multiplication table. Element 0 need not be
// the unit; `unit` is located on construction.
struct FiniteGroup {
  std::vector<std::string> names;
  std::vector<std::vector<int>> mult;  // mult[a][b] = a*b
  int unit = 0;
  std::vector<int> inv;

  int order() const { return static_cast<int>(names.size()); }
  int mul(int a, int b) const { return mult[a][b]; }
  int index_of(const std::string& name) const;  // -1 when absent

  // Throws ValidationError on a non-group table.
  static FiniteGroup from_table(std::vector<std::string> names, std::vector<std::vector<int>> mult);
  static FiniteGroup cyclic(int n);
  static FiniteGroup symmetric(int n);
};

}  // namespace mfib
