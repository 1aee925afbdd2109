#pragma once

// Random-list policies: each arrival samples an ordered candidate list from a
// per-type distribution prepared offline. This header also holds the
// thirds-valued fractional matching that feeds the simpler of the two.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iidmatch/edge_map.hpp"
#include "iidmatch/flow.hpp"
#include "iidmatch/online_baselines.hpp"

namespace iidmatch {

struct WeightedList {
  SuggestionList list;
  double prob = 0.0;
};

/// Per type: lists with probabilities summing to 1. An empty vector means
/// the type always gets the empty list.
using ListDistribution = std::vector<std::vector<WeightedList>>;

inline std::optional<std::string> validate_list_distribution(const ListDistribution& d) {
  for (std::size_t l = 0; l < d.size(); ++l) {
    if (d[l].empty()) continue;
    double sum = 0.0;
    for (const auto& w : d[l]) {
      if (w.prob < -1e-12) return "type " + std::to_string(l) + " has a negative probability";
      sum += w.prob;
    }
    if (std::fabs(sum - 1.0) > 1e-9) return "type " + std::to_string(l) + " probabilities sum to " + std::to_string(sum);
  }
  return std::nullopt;
}

/// Samples one list; always consumes exactly one uniform draw.
inline SuggestionList rla_suggest(const ListDistribution& d, int type, Rng& rng) {
  const double u = rng.uniform();
  const auto& lists = d[static_cast<std::size_t>(type)];
  if (lists.empty()) return {};
  double acc = 0.0;
  for (const auto& w : lists) {
    acc += w.prob;
    if (u < acc) return w.list;
  }
  return lists.back().list;
}

// ---------------------------------------------------------------------------

/// Optimal vertex of the capacity-2/3 fractional matching LP, as integer
/// thirds per edge: network s -> r (3), r -> l (2), l -> t (3).
inline EdgeMap<int> jaillet_lu_fractional(const TypeGraph& tg) {
  const int roff = 2, loff = 2 + tg.right_count;
  FlowNetwork net(2 + tg.right_count + tg.left_count, 0, 1);
  for (int r = 0; r < tg.right_count; ++r) net.add_arc(0, roff + r, 3);
  EdgeMap<int> arc(tg, -1);
  const auto inc = right_incidence(tg);
  for (int r = 0; r < tg.right_count; ++r)
    for (auto [l, k] : inc[static_cast<std::size_t>(r)]) arc.at(l, k) = net.add_arc(roff + r, loff + l, 2);
  for (int l = 0; l < tg.left_count; ++l) net.add_arc(loff + l, 1, 3);
  const auto f = dinic(net);
  EdgeMap<int> thirds(tg, 0);
  for (int l = 0; l < tg.left_count; ++l)
    for (std::size_t k = 0; k < tg.adj[static_cast<std::size_t>(l)].size(); ++k) thirds.at(l, k) = f.on(arc.at(l, k));
  return thirds;
}

namespace detail {

inline const std::array<std::array<int, 3>, 6> kPermutations3{{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

}  // namespace detail

/// Restricted neighborhood = positive-thirds neighbors plus a dummy carrying
/// the missing mass. One entry: unit list. Two: both orders weighted by the
/// leading entry's mass. Three: all six orders, 1/6 each.
inline ListDistribution jl_distributions(const TypeGraph& tg, const EdgeMap<int>& thirds) {
  ListDistribution d(static_cast<std::size_t>(tg.left_count));
  for (int l = 0; l < tg.left_count; ++l) {
    std::vector<int> who;
    std::vector<int> mass;
    int sum = 0;
    const auto& row = tg.adj[static_cast<std::size_t>(l)];
    for (std::size_t k = 0; k < row.size(); ++k) {
      const int t = thirds.at(l, k);
      if (t < 0 || t > 2) throw std::invalid_argument("jl_distributions: value outside {0, 1/3, 2/3}");
      if (t == 0) continue;
      who.push_back(row[k]);
      mass.push_back(t);
      sum += t;
    }
    if (sum > 3) throw std::invalid_argument("jl_distributions: type " + std::to_string(l) + " has mass above 1");
    if (sum < 3) {
      who.push_back(kDummy);
      mass.push_back(3 - sum);
    }
    auto& out = d[static_cast<std::size_t>(l)];
    switch (who.size()) {
      case 1:
        out.push_back({{who[0]}, 1.0});
        break;
      case 2:
        out.push_back({{who[0], who[1]}, mass[0] / 3.0});
        out.push_back({{who[1], who[0]}, mass[1] / 3.0});
        break;
      case 3:
        for (const auto& p : detail::kPermutations3) out.push_back({{who[p[0]], who[p[1]], who[p[2]]}, 1.0 / 6.0});
        break;
      default:
        throw std::invalid_argument("jl_distributions: type " + std::to_string(l) + " has more than 3 candidates");
    }
  }
  return d;
}

inline ListDistribution jaillet_lu_preprocess(const TypeGraph& tg) {
  return jl_distributions(tg, jaillet_lu_fractional(tg));
}

}  // namespace iidmatch
