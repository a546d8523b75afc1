#include "homfinsler/numkernel/structure_constants.hpp"

#include <algorithm>

namespace homfinsler::numkernel {

StructureConstants::StructureConstants(std::size_t dim, std::vector<Entry> entries) : dim_(dim), entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (e.i < 0 || e.j < 0 || e.k < 0 || static_cast<std::size_t>(e.i) >= dim_ || static_cast<std::size_t>(e.j) >= dim_ ||
        static_cast<std::size_t>(e.k) >= dim_)
      throw DimensionError("StructureConstants: index out of range");
  }
  std::stable_sort(entries_.begin(), entries_.end(),
                   [](const Entry& a, const Entry& b) { return a.i != b.i ? a.i < b.i : (a.j != b.j ? a.j < b.j : a.k < b.k); });
}

double StructureConstants::coefficient(int i, int j, int k) const {
  double s = 0.0;
  for (const auto& e : entries_)
    if (e.i == i && e.j == j && e.k == k) s += e.c;
  return s;
}

}  // namespace homfinsler::numkernel
