#pragma once

// Flow-based two-choice policies: the blue/red decomposition of a degree-2
// subgraph, the capacity-2 flow preprocessing, and the balanced variant that
// evens out flow on both sides of the canonical cut.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "iidmatch/edge_map.hpp"
#include "iidmatch/flow.hpp"
#include "iidmatch/graph_core.hpp"
#include "iidmatch/online_baselines.hpp"

namespace iidmatch {

struct BlueRed {
  std::vector<int> blue;  // per type, kNone if absent
  std::vector<int> red;   // per type, kNone if absent
};

/// Red must be injective; blue is at most one node per type by construction.
inline std::optional<std::string> validate_blue_red(const BlueRed& br, int right_count) {
  if (br.blue.size() != br.red.size()) return "blue/red size mismatch";
  std::vector<bool> used(static_cast<std::size_t>(right_count), false);
  for (std::size_t l = 0; l < br.red.size(); ++l) {
    for (int r : {br.blue[l], br.red[l]})
      if (r != kNone && (r < 0 || r >= right_count)) return "offline index out of range";
    const int r = br.red[l];
    if (r == kNone) continue;
    if (used[static_cast<std::size_t>(r)]) return "red is not a matching at offline node " + std::to_string(r);
    used[static_cast<std::size_t>(r)] = true;
    if (br.blue[l] == r) return "type " + std::to_string(l) + " has the same blue and red node";
  }
  return std::nullopt;
}

/// Colors a subgraph of maximum degree 2 given as sorted per-type neighbor
/// lists. Orientation rules for determinism: cycles start at their smallest
/// type, via its smaller neighbor, in blue; even paths are read from the end
/// with the smaller index.
inline BlueRed blue_red_decomposition(int left_count, int right_count,
                                      const std::vector<std::vector<int>>& sub) {
  if (sub.size() != static_cast<std::size_t>(left_count))
    throw std::invalid_argument("blue_red_decomposition: adjacency size mismatch");
  const int n = left_count + right_count;
  std::vector<std::vector<int>> nb(static_cast<std::size_t>(n));
  for (int l = 0; l < left_count; ++l)
    for (int r : sub[static_cast<std::size_t>(l)]) {
      if (r < 0 || r >= right_count) throw std::out_of_range("blue_red_decomposition: bad offline index");
      nb[static_cast<std::size_t>(l)].push_back(left_count + r);
      nb[static_cast<std::size_t>(left_count + r)].push_back(l);
    }
  for (int v = 0; v < n; ++v)
    if (nb[static_cast<std::size_t>(v)].size() > 2)
      throw std::invalid_argument("blue_red_decomposition: node " +
                                  (v < left_count ? "type " + std::to_string(v)
                                                  : "offline " + std::to_string(v - left_count)) +
                                  " has degree > 2");

  BlueRed out{std::vector<int>(static_cast<std::size_t>(left_count), kNone),
              std::vector<int>(static_cast<std::size_t>(left_count), kNone)};
  std::vector<bool> visited(static_cast<std::size_t>(n), false);

  auto paint = [&](int u, int v, bool blue) {
    const int l = u < left_count ? u : v;
    const int r = (u < left_count ? v : u) - left_count;
    (blue ? out.blue : out.red)[static_cast<std::size_t>(l)] = r;
  };

  // Follows the unique continuation from `start` (first step to `next`).
  auto walk = [&](int start, int next) {
    std::vector<int> seq{start};
    visited[static_cast<std::size_t>(start)] = true;
    int prev = start, cur = next;
    for (;;) {
      seq.push_back(cur);
      visited[static_cast<std::size_t>(cur)] = true;
      int step = -1;
      for (int w : nb[static_cast<std::size_t>(cur)])
        if (w != prev) {
          step = w;
          break;
        }
      if (step < 0 || step == start) break;
      prev = cur;
      cur = step;
    }
    return seq;
  };

  // Paths: start at each unvisited degree-1 node.
  for (int v = 0; v < n; ++v) {
    if (visited[static_cast<std::size_t>(v)] || nb[static_cast<std::size_t>(v)].size() != 1) continue;
    auto seq = walk(v, nb[static_cast<std::size_t>(v)][0]);
    const std::size_t edges = seq.size() - 1;
    const bool front_left = seq.front() < left_count;
    const bool back_left = seq.back() < left_count;
    if (edges % 2 == 0 && seq.back() < seq.front()) std::reverse(seq.begin(), seq.end());
    if (edges % 2 == 1 || !front_left || !back_left) {
      for (std::size_t e = 0; e < edges; ++e) paint(seq[e], seq[e + 1], e % 2 == 0);
    } else {
      // Left-to-left: blue, blue, red, blue, red, ...
      for (std::size_t e = 0; e < edges; ++e) paint(seq[e], seq[e + 1], e < 2 || e % 2 == 1);
    }
  }
  // Remaining nodes of degree 2 lie on cycles.
  for (int l = 0; l < left_count; ++l) {
    if (visited[static_cast<std::size_t>(l)] || nb[static_cast<std::size_t>(l)].size() != 2) continue;
    auto seq = walk(l, std::min(nb[static_cast<std::size_t>(l)][0], nb[static_cast<std::size_t>(l)][1]));
    seq.push_back(l);
    for (std::size_t e = 0; e + 1 < seq.size(); ++e) paint(seq[e], seq[e + 1], e % 2 == 0);
  }
  return out;
}

// ---------------------------------------------------------------------------

/// The capacity-2 network: s -> r (2), r -> l (1) per edge, l -> t (2).
struct FeldmanNetwork {
  FlowNetwork net;
  EdgeMap<int> arc;  // arc index of each type-graph edge
  int left_offset = 0;
  int right_offset = 0;
};

inline FeldmanNetwork build_feldman_network(const TypeGraph& tg) {
  FeldmanNetwork fn;
  fn.right_offset = 2;
  fn.left_offset = 2 + tg.right_count;
  fn.net = FlowNetwork(2 + tg.right_count + tg.left_count, 0, 1);
  fn.arc = EdgeMap<int>(tg, -1);
  for (int r = 0; r < tg.right_count; ++r) fn.net.add_arc(0, fn.right_offset + r, 2);
  const auto inc = right_incidence(tg);
  for (int r = 0; r < tg.right_count; ++r)
    for (auto [l, k] : inc[static_cast<std::size_t>(r)])
      fn.arc.at(l, k) = fn.net.add_arc(fn.right_offset + r, fn.left_offset + l, 1);
  for (int l = 0; l < tg.left_count; ++l) fn.net.add_arc(fn.left_offset + l, 1, 2);
  return fn;
}

/// Flow of a Feldman network restricted to graph edges (0/1 per edge).
inline EdgeMap<int> edge_flow(const TypeGraph& tg, const FeldmanNetwork& fn, const IntegralFlow& f) {
  EdgeMap<int> out(tg, 0);
  for (int l = 0; l < tg.left_count; ++l)
    for (std::size_t k = 0; k < tg.adj[static_cast<std::size_t>(l)].size(); ++k) out.at(l, k) = f.on(fn.arc.at(l, k));
  return out;
}

inline std::vector<std::vector<int>> support_of(const TypeGraph& tg, const EdgeMap<int>& values) {
  std::vector<std::vector<int>> sub(static_cast<std::size_t>(tg.left_count));
  for (int l = 0; l < tg.left_count; ++l) {
    const auto& row = tg.adj[static_cast<std::size_t>(l)];
    for (std::size_t k = 0; k < row.size(); ++k)
      if (values.at(l, k) > 0) sub[static_cast<std::size_t>(l)].push_back(row[k]);
  }
  return sub;
}

inline BlueRed feldman_preprocess(const TypeGraph& tg) {
  const auto fn = build_feldman_network(tg);
  const auto f = edmonds_karp(fn.net);
  return blue_red_decomposition(tg.left_count, tg.right_count, support_of(tg, edge_flow(tg, fn, f)));
}

/// First arrival of a type tries blue, second tries red, later ones nothing.
inline SuggestionList feldman_suggest(const BlueRed& br, int type, int k) {
  const int r = k == 1 ? br.blue[static_cast<std::size_t>(type)]
                       : (k == 2 ? br.red[static_cast<std::size_t>(type)] : kNone);
  if (r == kNone) return {};
  return {r};
}

// ---------------------------------------------------------------------------
// Flow balancing.

namespace detail {

struct Throughput {
  std::vector<int> left;
  std::vector<int> right;
};

inline Throughput throughput(const TypeGraph& tg, const EdgeMap<int>& f) {
  Throughput t{std::vector<int>(static_cast<std::size_t>(tg.left_count), 0),
               std::vector<int>(static_cast<std::size_t>(tg.right_count), 0)};
  for (int l = 0; l < tg.left_count; ++l) {
    const auto& row = tg.adj[static_cast<std::size_t>(l)];
    for (std::size_t k = 0; k < row.size(); ++k) {
      const int x = f.at(l, k);
      if (x != 0 && x != 1) throw std::invalid_argument("balance: edge flow outside {0, 1}");
      t.left[static_cast<std::size_t>(l)] += x;
      t.right[static_cast<std::size_t>(row[k])] += x;
    }
  }
  for (int x : t.left)
    if (x > 2) throw std::invalid_argument("balance: type throughput exceeds 2");
  for (int x : t.right)
    if (x > 2) throw std::invalid_argument("balance: offline throughput exceeds 2");
  return t;
}

// Builds the unit network on A and B with the given terminal arcs and
// returns the per-edge signed change in r -> l flow.
template <class Terminals>
EdgeMap<int> balance(const TypeGraph& tg, const std::vector<bool>& A, const std::vector<bool>& B,
                     const EdgeMap<int>& f, Terminals&& add_terminals) {
  const int s = 0, t = 1, loff = 2, roff = 2 + tg.left_count;
  FlowNetwork net(2 + tg.left_count + tg.right_count, s, t);
  add_terminals(net, s, t, loff, roff);
  EdgeMap<int> fwd(tg, -1), bwd(tg, -1);
  for (int l = 0; l < tg.left_count; ++l) {
    if (!A[static_cast<std::size_t>(l)]) continue;
    const auto& row = tg.adj[static_cast<std::size_t>(l)];
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (!B[static_cast<std::size_t>(row[k])]) continue;
      if (f.at(l, k) == 1)
        bwd.at(l, k) = net.add_arc(loff + l, roff + row[k], 1);
      else
        fwd.at(l, k) = net.add_arc(roff + row[k], loff + l, 1);
    }
  }
  const auto fa = dinic(net);
  EdgeMap<int> delta(tg, 0);
  for (int l = 0; l < tg.left_count; ++l)
    for (std::size_t k = 0; k < tg.adj[static_cast<std::size_t>(l)].size(); ++k) {
      if (fwd.at(l, k) >= 0) delta.at(l, k) += fa.on(fwd.at(l, k));
      if (bwd.at(l, k) >= 0) delta.at(l, k) -= fa.on(bwd.at(l, k));
    }
  return delta;
}

}  // namespace detail

/// Moves flow from types carrying 2 units to types carrying none, inside A x B.
inline EdgeMap<int> balance_left(const TypeGraph& tg, const std::vector<bool>& A, const std::vector<bool>& B,
                                 const EdgeMap<int>& f) {
  const auto tp = detail::throughput(tg, f);
  return detail::balance(tg, A, B, f, [&](FlowNetwork& net, int s, int t, int loff, int) {
    for (int l = 0; l < tg.left_count; ++l)
      if (A[static_cast<std::size_t>(l)] && tp.left[static_cast<std::size_t>(l)] == 2) net.add_arc(s, loff + l, 1);
    for (int l = 0; l < tg.left_count; ++l)
      if (A[static_cast<std::size_t>(l)] && tp.left[static_cast<std::size_t>(l)] == 0) net.add_arc(loff + l, t, 1);
  });
}

/// Mirror of balance_left on the offline side.
inline EdgeMap<int> balance_right(const TypeGraph& tg, const std::vector<bool>& A, const std::vector<bool>& B,
                                  const EdgeMap<int>& f) {
  const auto tp = detail::throughput(tg, f);
  return detail::balance(tg, A, B, f, [&](FlowNetwork& net, int s, int t, int, int roff) {
    for (int r = 0; r < tg.right_count; ++r)
      if (B[static_cast<std::size_t>(r)] && tp.right[static_cast<std::size_t>(r)] == 0) net.add_arc(s, roff + r, 1);
    for (int r = 0; r < tg.right_count; ++r)
      if (B[static_cast<std::size_t>(r)] && tp.right[static_cast<std::size_t>(r)] == 2) net.add_arc(roff + r, t, 1);
  });
}

/// Balanced support from a given maximum flow of the Feldman network.
inline EdgeMap<int> bahmani_support(const TypeGraph& tg, const FeldmanNetwork& fn, const IntegralFlow& f) {
  const auto cut = min_cut_source_side(fn.net, f);
  std::vector<bool> SL(static_cast<std::size_t>(tg.left_count)), TL(SL.size());
  std::vector<bool> SR(static_cast<std::size_t>(tg.right_count)), TR(SR.size());
  for (int l = 0; l < tg.left_count; ++l) {
    SL[static_cast<std::size_t>(l)] = cut[static_cast<std::size_t>(fn.left_offset + l)];
    TL[static_cast<std::size_t>(l)] = !SL[static_cast<std::size_t>(l)];
  }
  for (int r = 0; r < tg.right_count; ++r) {
    SR[static_cast<std::size_t>(r)] = cut[static_cast<std::size_t>(fn.right_offset + r)];
    TR[static_cast<std::size_t>(r)] = !SR[static_cast<std::size_t>(r)];
  }
  auto total = edge_flow(tg, fn, f);
  const auto dl = balance_left(tg, TL, TR, total);
  const auto dr = balance_right(tg, SL, SR, total);
  for (int l = 0; l < tg.left_count; ++l)
    for (std::size_t k = 0; k < tg.adj[static_cast<std::size_t>(l)].size(); ++k)
      total.at(l, k) += dl.at(l, k) + dr.at(l, k);
  return total;
}

inline BlueRed bahmani_preprocess(const TypeGraph& tg) {
  const auto fn = build_feldman_network(tg);
  const auto f = edmonds_karp(fn.net);
  return blue_red_decomposition(tg.left_count, tg.right_count, support_of(tg, bahmani_support(tg, fn, f)));
}

}  // namespace iidmatch
