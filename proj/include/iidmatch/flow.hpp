#pragma once

// Integral max-flow (Edmonds-Karp), canonical min cut and maximum bipartite
// matching. Arcs are stored in forward/backward pairs (arc id 2k and 2k+1);
// the residual graph is scanned in insertion order so every result is a
// deterministic function of how the network was built.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "iidmatch/graph_core.hpp"

namespace iidmatch {

template <class Cap>
class BasicFlowNetwork {
 public:
  using capacity_type = Cap;

  BasicFlowNetwork() = default;
  BasicFlowNetwork(int node_count, int source, int sink)
      : node_count_(node_count), source_(source), sink_(sink),
        out_(static_cast<std::size_t>(node_count)) {
    if (node_count < 2) throw std::invalid_argument("flow network needs at least two nodes");
    if (source < 0 || source >= node_count || sink < 0 || sink >= node_count)
      throw std::out_of_range("source/sink outside node range");
    if (source == sink) throw std::invalid_argument("source equals sink");
  }

  /// Adds from->to with the given capacity; returns the arc index k (the
  /// forward residual arc is 2k).
  int add_arc(int from, int to, Cap capacity) {
    if (from < 0 || from >= node_count_ || to < 0 || to >= node_count_)
      throw std::out_of_range("arc endpoint outside node range");
    if (capacity < Cap{0}) throw std::invalid_argument("negative capacity");
    const int k = static_cast<int>(from_.size());
    from_.push_back(from);
    to_.push_back(to);
    cap_.push_back(capacity);
    out_[static_cast<std::size_t>(from)].push_back(2 * k);
    out_[static_cast<std::size_t>(to)].push_back(2 * k + 1);
    return k;
  }

  int node_count() const noexcept { return node_count_; }
  int source() const noexcept { return source_; }
  int sink() const noexcept { return sink_; }
  int arc_count() const noexcept { return static_cast<int>(from_.size()); }
  int from(int k) const { return from_[static_cast<std::size_t>(k)]; }
  int to(int k) const { return to_[static_cast<std::size_t>(k)]; }
  Cap capacity(int k) const { return cap_[static_cast<std::size_t>(k)]; }

  /// Residual arc ids leaving v (even = forward, odd = backward).
  const std::vector<int>& residual_out(int v) const { return out_[static_cast<std::size_t>(v)]; }
  int residual_head(int rid) const { return (rid & 1) ? from_[static_cast<std::size_t>(rid >> 1)] : to_[static_cast<std::size_t>(rid >> 1)]; }

 private:
  int node_count_ = 0;
  int source_ = 0;
  int sink_ = 1;
  std::vector<int> from_;
  std::vector<int> to_;
  std::vector<Cap> cap_;
  std::vector<std::vector<int>> out_;
};

using FlowNetwork = BasicFlowNetwork<std::int32_t>;

template <class Cap>
struct BasicFlow {
  std::vector<Cap> flow;  // per arc index
  Cap value{0};

  /// Signed flow along a directed arc index, f(u,v) = -f(v,u).
  Cap on(int k) const { return flow[static_cast<std::size_t>(k)]; }
};

using IntegralFlow = BasicFlow<std::int32_t>;

namespace detail {

template <class Cap>
Cap residual(const BasicFlowNetwork<Cap>& net, const BasicFlow<Cap>& f, int rid) {
  const auto k = static_cast<std::size_t>(rid >> 1);
  return (rid & 1) ? f.flow[k] : net.capacity(static_cast<int>(k)) - f.flow[k];
}

template <class Cap>
void push(BasicFlow<Cap>& f, int rid, Cap amount) {
  const auto k = static_cast<std::size_t>(rid >> 1);
  if (rid & 1)
    f.flow[k] -= amount;
  else
    f.flow[k] += amount;
}

template <class Cap>
std::vector<bool> residual_reachable(const BasicFlowNetwork<Cap>& net, const BasicFlow<Cap>& f) {
  std::vector<bool> seen(static_cast<std::size_t>(net.node_count()), false);
  std::vector<int> stack{net.source()};
  seen[static_cast<std::size_t>(net.source())] = true;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int rid : net.residual_out(v)) {
      const int w = net.residual_head(rid);
      if (!seen[static_cast<std::size_t>(w)] && residual(net, f, rid) > Cap{0}) {
        seen[static_cast<std::size_t>(w)] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace detail

/// Capacity bounds and conservation; value must equal net source outflow.
template <class Cap>
std::optional<std::string> validate_flow(const BasicFlowNetwork<Cap>& net, const BasicFlow<Cap>& f) {
  if (f.flow.size() != static_cast<std::size_t>(net.arc_count())) return "flow has wrong arc count";
  std::vector<Cap> excess(static_cast<std::size_t>(net.node_count()), Cap{0});
  for (int k = 0; k < net.arc_count(); ++k) {
    const Cap x = f.on(k);
    if (x < Cap{0} || x > net.capacity(k))
      return "arc " + std::to_string(k) + " flow outside [0, capacity]";
    excess[static_cast<std::size_t>(net.from(k))] -= x;
    excess[static_cast<std::size_t>(net.to(k))] += x;
  }
  for (int v = 0; v < net.node_count(); ++v) {
    if (v == net.source() || v == net.sink()) continue;
    if (excess[static_cast<std::size_t>(v)] != Cap{0})
      return "conservation violated at node " + std::to_string(v);
  }
  if (-excess[static_cast<std::size_t>(net.source())] != f.value) return "value differs from source outflow";
  return std::nullopt;
}

/// Continues augmenting from an existing feasible flow along BFS-shortest
/// residual paths until none is left.
template <class Cap>
void edmonds_karp_augment(const BasicFlowNetwork<Cap>& net, BasicFlow<Cap>& f) {
  const auto n = static_cast<std::size_t>(net.node_count());
  std::vector<int> via(n);
  std::queue<int> q;
  for (;;) {
    std::fill(via.begin(), via.end(), -1);
    via[static_cast<std::size_t>(net.source())] = -2;
    q = {};
    q.push(net.source());
    while (!q.empty() && via[static_cast<std::size_t>(net.sink())] == -1) {
      const int v = q.front();
      q.pop();
      for (int rid : net.residual_out(v)) {
        const int w = net.residual_head(rid);
        if (via[static_cast<std::size_t>(w)] == -1 && detail::residual(net, f, rid) > Cap{0}) {
          via[static_cast<std::size_t>(w)] = rid;
          q.push(w);
        }
      }
    }
    if (via[static_cast<std::size_t>(net.sink())] == -1) return;
    Cap bottleneck = std::numeric_limits<Cap>::max();
    for (int v = net.sink(); v != net.source();) {
      const int rid = via[static_cast<std::size_t>(v)];
      bottleneck = std::min(bottleneck, detail::residual(net, f, rid));
      v = net.residual_head(rid ^ 1);
    }
    for (int v = net.sink(); v != net.source();) {
      const int rid = via[static_cast<std::size_t>(v)];
      detail::push(f, rid, bottleneck);
      v = net.residual_head(rid ^ 1);
    }
    f.value += bottleneck;
  }
}

template <class Cap>
BasicFlow<Cap> edmonds_karp(const BasicFlowNetwork<Cap>& net) {
  BasicFlow<Cap> f;
  f.flow.assign(static_cast<std::size_t>(net.arc_count()), Cap{0});
  edmonds_karp_augment(net, f);
  return f;
}

/// Dinic's algorithm. Same contract as edmonds_karp (maximum value), used for
/// the large scaled-capacity networks where EK would be too slow.
template <class Cap>
BasicFlow<Cap> dinic(const BasicFlowNetwork<Cap>& net) {
  const auto n = static_cast<std::size_t>(net.node_count());
  BasicFlow<Cap> f;
  f.flow.assign(static_cast<std::size_t>(net.arc_count()), Cap{0});
  std::vector<int> level(n);
  std::vector<std::size_t> it(n);
  std::vector<int> path;  // residual arc ids on the current DFS path

  auto bfs = [&] {
    std::fill(level.begin(), level.end(), -1);
    std::queue<int> q;
    level[static_cast<std::size_t>(net.source())] = 0;
    q.push(net.source());
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int rid : net.residual_out(v)) {
        const int w = net.residual_head(rid);
        if (level[static_cast<std::size_t>(w)] < 0 && detail::residual(net, f, rid) > Cap{0}) {
          level[static_cast<std::size_t>(w)] = level[static_cast<std::size_t>(v)] + 1;
          q.push(w);
        }
      }
    }
    return level[static_cast<std::size_t>(net.sink())] >= 0;
  };

  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    // Iterative blocking-flow search.
    int v = net.source();
    path.clear();
    for (;;) {
      if (v == net.sink()) {
        Cap b = std::numeric_limits<Cap>::max();
        for (int rid : path) b = std::min(b, detail::residual(net, f, rid));
        for (int rid : path) detail::push(f, rid, b);
        f.value += b;
        // Retreat to the tail of the first saturated arc.
        std::size_t cut = 0;
        while (cut < path.size() && detail::residual(net, f, path[cut]) > Cap{0}) ++cut;
        v = net.residual_head(path[cut] ^ 1);
        path.resize(cut);
        continue;
      }
      const auto& out = net.residual_out(v);
      auto& i = it[static_cast<std::size_t>(v)];
      bool advanced = false;
      for (; i < out.size(); ++i) {
        const int rid = out[i];
        const int w = net.residual_head(rid);
        if (level[static_cast<std::size_t>(w)] == level[static_cast<std::size_t>(v)] + 1 &&
            detail::residual(net, f, rid) > Cap{0}) {
          path.push_back(rid);
          v = w;
          advanced = true;
          break;
        }
      }
      if (advanced) continue;
      if (v == net.source()) break;
      level[static_cast<std::size_t>(v)] = -1;  // dead end
      const int rid = path.back();
      path.pop_back();
      v = net.residual_head(rid ^ 1);
      ++it[static_cast<std::size_t>(v)];
    }
  }
  return f;
}

/// Nodes reachable from the source in the residual network of a maximum
/// flow (the canonical minimum cut). Throws if f is not maximum.
template <class Cap>
std::vector<bool> min_cut_source_side(const BasicFlowNetwork<Cap>& net, const BasicFlow<Cap>& f) {
  if (auto err = validate_flow(net, f)) throw std::invalid_argument("min_cut_source_side: " + *err);
  auto side = detail::residual_reachable(net, f);
  if (side[static_cast<std::size_t>(net.sink())])
    throw std::invalid_argument("min_cut_source_side: flow is not maximum (sink reachable)");
  return side;
}

template <class Cap>
Cap cut_capacity(const BasicFlowNetwork<Cap>& net, const std::vector<bool>& source_side) {
  Cap total{0};
  for (int k = 0; k < net.arc_count(); ++k)
    if (source_side[static_cast<std::size_t>(net.from(k))] && !source_side[static_cast<std::size_t>(net.to(k))])
      total += net.capacity(k);
  return total;
}

// ---------------------------------------------------------------------------
// Maximum bipartite matching.
//
// Maximum bipartite matching by Hopcroft-Karp. Free left vertices are scanned
// in index order and neighbors in list order, so the result is deterministic,
// but only its SIZE is part of the contract. `neighbors(i)` returns the
// right-neighbor list of left vertex i.

template <class Neighbors>
Matching max_matching(std::size_t left_count, int right_count, Neighbors&& neighbors,
                      const Matching* warm_start = nullptr) {
  Matching m(left_count, right_count);
  if (warm_start) {
    if (warm_start->online_count() != left_count || warm_start->right_count() != right_count)
      throw std::invalid_argument("max_matching: warm start has different dimensions");
    for (auto [i, r] : warm_start->pairs()) {
      const auto& nb = neighbors(static_cast<std::size_t>(i));
      if (std::find(nb.begin(), nb.end(), r) == nb.end())
        throw std::invalid_argument("max_matching: warm start pairs a non-edge");
      m.add(i, r);
    }
  }

  std::vector<int> mate_l(left_count, kNone);
  std::vector<int> mate_r(static_cast<std::size_t>(right_count), kNone);
  for (auto [i, r] : m.pairs()) {
    mate_l[static_cast<std::size_t>(i)] = r;
    mate_r[static_cast<std::size_t>(r)] = i;
  }

  // Phased shortest augmenting paths (Hopcroft-Karp): each phase augments a
  // maximal set of vertex-disjoint shortest paths. Faster than single-path
  // rounds but yields the same maximum size.
  std::vector<int> dist(left_count);
  std::vector<std::size_t> cursor(left_count);
  constexpr int kInf = std::numeric_limits<int>::max();

  auto bfs = [&] {
    std::queue<int> q;
    bool found = false;
    for (std::size_t i = 0; i < left_count; ++i) {
      if (mate_l[i] == kNone) {
        dist[i] = 0;
        q.push(static_cast<int>(i));
      } else {
        dist[i] = kInf;
      }
    }
    while (!q.empty()) {
      const int i = q.front();
      q.pop();
      for (int r : neighbors(static_cast<std::size_t>(i))) {
        const int j = mate_r[static_cast<std::size_t>(r)];
        if (j == kNone) {
          found = true;
        } else if (dist[static_cast<std::size_t>(j)] == kInf) {
          dist[static_cast<std::size_t>(j)] = dist[static_cast<std::size_t>(i)] + 1;
          q.push(j);
        }
      }
    }
    return found;
  };

  // Iterative DFS along the layered graph.
  std::vector<int> stack;
  auto dfs = [&](int root) {
    stack.assign(1, root);
    while (!stack.empty()) {
      const int i = stack.back();
      const auto& nb = neighbors(static_cast<std::size_t>(i));
      auto& c = cursor[static_cast<std::size_t>(i)];
      bool pushed = false;
      for (; c < nb.size(); ++c) {
        const int r = nb[c];
        const int j = mate_r[static_cast<std::size_t>(r)];
        if (j == kNone) {
          // Augment along the stack.
          int carry = r;
          for (auto s = stack.size(); s-- > 0;) {
            const int li = stack[s];
            const int prev = mate_l[static_cast<std::size_t>(li)];
            mate_l[static_cast<std::size_t>(li)] = carry;
            mate_r[static_cast<std::size_t>(carry)] = li;
            carry = prev;
          }
          return true;
        }
        if (dist[static_cast<std::size_t>(j)] == dist[static_cast<std::size_t>(i)] + 1) {
          ++c;
          stack.push_back(j);
          pushed = true;
          break;
        }
      }
      if (!pushed) {
        dist[static_cast<std::size_t>(i)] = kInf;
        stack.pop_back();
      }
    }
    return false;
  };

  while (bfs()) {
    std::fill(cursor.begin(), cursor.end(), 0);
    for (std::size_t i = 0; i < left_count; ++i)
      if (mate_l[i] == kNone) dfs(static_cast<int>(i));
  }

  Matching out(left_count, right_count);
  for (std::size_t i = 0; i < left_count; ++i)
    if (mate_l[i] != kNone) out.add(static_cast<int>(i), mate_l[i]);
  return out;
}

inline Matching max_matching(const std::vector<std::vector<int>>& left_adj, int right_count,
                             const Matching* warm_start = nullptr) {
  return max_matching(
      left_adj.size(), right_count,
      [&](std::size_t i) -> const std::vector<int>& { return left_adj[i]; }, warm_start);
}

/// Offline optimum of a realized instance.
inline Matching max_matching(const InstanceStream& inst, const Matching* warm_start = nullptr) {
  return max_matching(
      inst.size(), inst.graph->right_count,
      [&](std::size_t i) -> const std::vector<int>& { return inst.neighbors_of_arrival(i); },
      warm_start);
}

}  // namespace iidmatch
