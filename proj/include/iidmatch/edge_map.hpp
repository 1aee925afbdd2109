#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "iidmatch/graph_core.hpp"

namespace iidmatch {

/// One value per type-graph edge, stored row-wise in the same order as
/// TypeGraph::adj.
template <class T>
class EdgeMap {
 public:
  EdgeMap() = default;
  explicit EdgeMap(const TypeGraph& tg, T init = T{}) : rows_(tg.adj.size()) {
    for (std::size_t l = 0; l < tg.adj.size(); ++l) rows_[l].assign(tg.adj[l].size(), init);
  }

  std::vector<T>& row(int type) { return rows_[static_cast<std::size_t>(type)]; }
  const std::vector<T>& row(int type) const { return rows_[static_cast<std::size_t>(type)]; }
  T& at(int type, std::size_t k) { return rows_[static_cast<std::size_t>(type)][k]; }
  const T& at(int type, std::size_t k) const { return rows_[static_cast<std::size_t>(type)][k]; }
  std::size_t type_count() const noexcept { return rows_.size(); }

  friend bool operator==(const EdgeMap&, const EdgeMap&) = default;

 private:
  std::vector<std::vector<T>> rows_;
};

/// Position of r within adj[type]; throws if {type, r} is not an edge.
inline std::size_t edge_slot(const TypeGraph& tg, int type, int r) {
  const auto& row = tg.adj[static_cast<std::size_t>(type)];
  auto it = std::lower_bound(row.begin(), row.end(), r);
  if (it == row.end() || *it != r)
    throw std::out_of_range("no edge between type " + std::to_string(type) + " and " + std::to_string(r));
  return static_cast<std::size_t>(it - row.begin());
}

/// For each offline node, its incident edges as (type, slot) in ascending type order.
inline std::vector<std::vector<std::pair<int, std::size_t>>> right_incidence(const TypeGraph& tg) {
  std::vector<std::vector<std::pair<int, std::size_t>>> inc(static_cast<std::size_t>(tg.right_count));
  for (int l = 0; l < tg.left_count; ++l) {
    const auto& row = tg.adj[static_cast<std::size_t>(l)];
    for (std::size_t k = 0; k < row.size(); ++k) inc[static_cast<std::size_t>(row[k])].emplace_back(l, k);
  }
  return inc;
}

}  // namespace iidmatch
