#include "homfinsler/numkernel/jet.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace homfinsler::numkernel {

namespace {

int degree_of(const std::array<int, kMaxJetOrder>& m) {
  int d = 0;
  for (int v : m)
    if (v >= 0) ++d;
  return d;
}

}  // namespace

const JetLayout* JetLayout::get(int nvars, int order) {
  if (nvars < 0 || order < 0 || order > kMaxJetOrder) throw DomainError("JetLayout: unsupported (nvars, order)");
  thread_local std::map<std::pair<int, int>, const JetLayout*> local;
  if (auto it = local.find({nvars, order}); it != local.end()) return it->second;
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<JetLayout>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{nvars, order}];
  if (!slot) slot.reset(new JetLayout(nvars, order));
  local[{nvars, order}] = slot.get();
  return slot.get();
}

JetLayout::JetLayout(int nvars, int order) : nvars_(nvars), order_(order) {
  const std::size_t n = static_cast<std::size_t>(nvars);
  monomials_.push_back({-1, -1, -1});
  if (order >= 1)
    for (int i = 0; i < nvars; ++i) monomials_.push_back({i, -1, -1});
  if (order >= 2) {
    idx2_.assign(n * n, -1);
    for (int i = 0; i < nvars; ++i)
      for (int j = i; j < nvars; ++j) {
        const int idx = static_cast<int>(monomials_.size());
        idx2_[static_cast<std::size_t>(i * nvars + j)] = idx;
        idx2_[static_cast<std::size_t>(j * nvars + i)] = idx;
        monomials_.push_back({i, j, -1});
      }
  }
  if (order >= 3) {
    idx3_.assign(n * n * n, -1);
    for (int i = 0; i < nvars; ++i)
      for (int j = i; j < nvars; ++j)
        for (int k = j; k < nvars; ++k) {
          const int idx = static_cast<int>(monomials_.size());
          std::array<int, 3> p{i, j, k};
          do {
            idx3_[static_cast<std::size_t>((p[0] * nvars + p[1]) * nvars + p[2])] = idx;
          } while (std::next_permutation(p.begin(), p.end()));
          monomials_.push_back({i, j, k});
        }
  }
  degrees_.reserve(monomials_.size());
  for (const auto& m : monomials_) degrees_.push_back(degree_of(m));

  for (std::size_t a = 0; a < monomials_.size(); ++a) {
    lhs_offsets_.push_back(products_.size());
    for (std::size_t b = 0; b < monomials_.size(); ++b) {
      const int da = degrees_[a];
      const int db = degrees_[b];
      if (da + db > order) continue;
      std::array<int, kMaxJetOrder> merged{};
      int k = 0;
      for (int t = 0; t < da; ++t) merged[static_cast<std::size_t>(k++)] = monomials_[a][static_cast<std::size_t>(t)];
      for (int t = 0; t < db; ++t) merged[static_cast<std::size_t>(k++)] = monomials_[b][static_cast<std::size_t>(t)];
      const int out = index_of(std::span<const int>(merged.data(), static_cast<std::size_t>(k)));
      products_.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(out)});
    }
  }
  lhs_offsets_.push_back(products_.size());
}

int JetLayout::index_of(std::span<const int> vars) const {
  switch (vars.size()) {
    case 0:
      return 0;
    case 1:
      return order_ >= 1 ? 1 + vars[0] : -1;
    case 2:
      return order_ >= 2 ? idx2_[static_cast<std::size_t>(vars[0] * nvars_ + vars[1])] : -1;
    case 3:
      return order_ >= 3 ? idx3_[static_cast<std::size_t>((vars[0] * nvars_ + vars[1]) * nvars_ + vars[2])] : -1;
    default:
      return -1;
  }
}

std::pair<int, int> JetLayout::divide(std::size_t idx, int v) const {
  const auto& m = monomials_[idx];
  const int d = degrees_[idx];
  int mult = 0;
  std::array<int, kMaxJetOrder> rest{};
  int k = 0;
  bool removed = false;
  for (int t = 0; t < d; ++t) {
    const int var = m[static_cast<std::size_t>(t)];
    if (var == v) ++mult;
    if (var == v && !removed) {
      removed = true;
      continue;
    }
    rest[static_cast<std::size_t>(k++)] = var;
  }
  if (mult == 0) return {-1, 0};
  return {index_of(std::span<const int>(rest.data(), static_cast<std::size_t>(k))), mult};
}

std::string JetLayout::describe(std::size_t idx) const {
  std::string s = "(";
  const int d = degrees_[idx];
  for (int t = 0; t < d; ++t) {
    if (t) s += ",";
    s += std::to_string(monomials_[idx][static_cast<std::size_t>(t)]);
  }
  return s + ")";
}

}  // namespace homfinsler::numkernel
