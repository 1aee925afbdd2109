#pragma once

// Slow, obviously-correct reference implementations used only by the tests.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <tuple>
#include <vector>

#include "iidmatch/graph_core.hpp"
#include "iidmatch/rng.hpp"

namespace oracle {

/// Maximum matching size by trying every choice for every left vertex.
inline int brute_matching(const std::vector<std::vector<int>>& adj, int right_count) {
  std::vector<bool> used(static_cast<std::size_t>(right_count), false);
  std::function<int(std::size_t)> go = [&](std::size_t i) -> int {
    if (i == adj.size()) return 0;
    int best = go(i + 1);
    for (int r : adj[i]) {
      if (used[static_cast<std::size_t>(r)]) continue;
      used[static_cast<std::size_t>(r)] = true;
      best = std::max(best, 1 + go(i + 1));
      used[static_cast<std::size_t>(r)] = false;
    }
    return best;
  };
  return go(0);
}

struct Arc {
  int from, to, cap;
};

/// Max flow as the minimum capacity over all s-t cuts (max-flow min-cut),
/// enumerating every subset of the non-terminal nodes.
inline int min_cut_value(int nodes, int s, int t, const std::vector<Arc>& arcs) {
  std::vector<int> inner;
  for (int v = 0; v < nodes; ++v)
    if (v != s && v != t) inner.push_back(v);
  int best = std::numeric_limits<int>::max();
  for (std::uint32_t mask = 0; mask < (1u << inner.size()); ++mask) {
    std::vector<bool> side(static_cast<std::size_t>(nodes), false);
    side[static_cast<std::size_t>(s)] = true;
    for (std::size_t i = 0; i < inner.size(); ++i)
      if (mask >> i & 1u) side[static_cast<std::size_t>(inner[i])] = true;
    int cut = 0;
    for (const auto& a : arcs)
      if (side[static_cast<std::size_t>(a.from)] && !side[static_cast<std::size_t>(a.to)]) cut += a.cap;
    best = std::min(best, cut);
  }
  return best;
}

/// Source-side sets of every minimum cut.
inline std::vector<std::vector<bool>> min_cut_sides(int nodes, int s, int t, const std::vector<Arc>& arcs) {
  const int value = min_cut_value(nodes, s, t, arcs);
  std::vector<int> inner;
  for (int v = 0; v < nodes; ++v)
    if (v != s && v != t) inner.push_back(v);
  std::vector<std::vector<bool>> out;
  for (std::uint32_t mask = 0; mask < (1u << inner.size()); ++mask) {
    std::vector<bool> side(static_cast<std::size_t>(nodes), false);
    side[static_cast<std::size_t>(s)] = true;
    for (std::size_t i = 0; i < inner.size(); ++i)
      if (mask >> i & 1u) side[static_cast<std::size_t>(inner[i])] = true;
    int cut = 0;
    for (const auto& a : arcs)
      if (side[static_cast<std::size_t>(a.from)] && !side[static_cast<std::size_t>(a.to)]) cut += a.cap;
    if (cut == value) out.push_back(side);
  }
  return out;
}

/// Each (type, offline) pair present independently with probability p.
inline iidmatch::TypeGraph random_type_graph(int left, int right, double p, iidmatch::Rng& rng, std::int64_t m = -1) {
  std::vector<std::pair<int, int>> edges;
  for (int l = 0; l < left; ++l)
    for (int r = 0; r < right; ++r)
      if (rng.bernoulli(p)) edges.emplace_back(l, r);
  return iidmatch::TypeGraph::from_edges(left, right, edges, m < 0 ? left : m);
}

/// Arrival-by-arrival greedy with explicit preference order over offline nodes.
inline int step_greedy(const iidmatch::TypeGraph& tg, const std::vector<int>& arrivals, const std::vector<int>& rank,
                       std::vector<int>* matched_to = nullptr) {
  std::vector<bool> taken(static_cast<std::size_t>(tg.right_count), false);
  int size = 0;
  for (int a : arrivals) {
    int pick = -1;
    for (int r : tg.adj[static_cast<std::size_t>(a)])
      if (!taken[static_cast<std::size_t>(r)] && (pick < 0 || rank[static_cast<std::size_t>(r)] < rank[static_cast<std::size_t>(pick)]))
        pick = r;
    if (matched_to) matched_to->push_back(pick);
    if (pick < 0) continue;
    taken[static_cast<std::size_t>(pick)] = true;
    ++size;
  }
  return size;
}

}  // namespace oracle
