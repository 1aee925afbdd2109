#pragma once

// Type-graph-oblivious online algorithms and the shared suggestion executor.

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "iidmatch/graph_core.hpp"

namespace iidmatch {

/// Sentinel for a dummy candidate: behaves like an offline node that is
/// already matched, so traversal skips it.
inline constexpr int kDummy = -2;

/// At most three ordered candidates (the longest lists any policy emits).
class SuggestionList {
 public:
  SuggestionList() = default;
  SuggestionList(std::initializer_list<int> items) {
    for (int v : items) push_back(v);
  }

  void push_back(int v) {
    if (size_ == items_.size()) throw std::length_error("SuggestionList holds at most 3 candidates");
    items_[size_++] = v;
  }

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  int operator[](std::size_t i) const noexcept { return items_[i]; }
  const int* begin() const noexcept { return items_.data(); }
  const int* end() const noexcept { return items_.data() + size_; }

  friend bool operator==(const SuggestionList& a, const SuggestionList& b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
  }

 private:
  std::array<int, 3> items_{};
  std::size_t size_ = 0;
};

// ---------------------------------------------------------------------------

inline Matching greedy_with_permutation(const InstanceStream& inst, const Permutation& pi) {
  if (pi.size() != inst.graph->right_count)
    throw std::invalid_argument("greedy_with_permutation: permutation size differs from right_count");
  Matching m(inst.size(), inst.graph->right_count);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    int best = kNone;
    int best_rank = 0;
    for (int r : inst.neighbors_of_arrival(i)) {
      if (m.right_matched(r)) continue;
      if (best == kNone || pi.rank(r) < best_rank) {
        best = r;
        best_rank = pi.rank(r);
      }
    }
    if (best != kNone) m.add(static_cast<int>(i), best);
  }
  return m;
}

/// Greedy with ascending index order. Neighbor lists are sorted, so the
/// first unmatched neighbor is the lowest-ranked one.
inline Matching simple_greedy(const InstanceStream& inst) {
  Matching m(inst.size(), inst.graph->right_count);
  for (std::size_t i = 0; i < inst.size(); ++i)
    for (int r : inst.neighbors_of_arrival(i))
      if (!m.right_matched(r)) {
        m.add(static_cast<int>(i), r);
        break;
      }
  return m;
}

inline Matching ranking(const InstanceStream& inst, Rng& rng) {
  const auto pi = Permutation::uniform(inst.graph->right_count, rng);
  return greedy_with_permutation(inst, pi);
}

/// Stable re-ranking: lower category first, ties by sigma.
inline Permutation categorize(const Permutation& sigma, const std::vector<int>& category) {
  auto order = sigma.order();
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return category[static_cast<std::size_t>(a)] < category[static_cast<std::size_t>(b)];
  });
  return Permutation::from_order(order);
}

inline Matching category_advice(const InstanceStream& inst, const Permutation& sigma) {
  const Matching first = greedy_with_permutation(inst, sigma);
  std::vector<int> c(static_cast<std::size_t>(inst.graph->right_count));
  for (int r = 0; r < inst.graph->right_count; ++r) c[static_cast<std::size_t>(r)] = first.right_matched(r) ? 2 : 1;
  return greedy_with_permutation(inst, categorize(sigma, c));
}

inline Matching three_pass(const InstanceStream& inst, const Permutation& sigma) {
  const int n = inst.graph->right_count;
  const Matching first = greedy_with_permutation(inst, sigma);
  std::vector<int> c(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) c[static_cast<std::size_t>(r)] = first.right_matched(r) ? 2 : 1;
  const Matching second = greedy_with_permutation(inst, categorize(sigma, c));
  for (int r = 0; r < n; ++r) {
    int& cat = c[static_cast<std::size_t>(r)];
    if (first.right_matched(r))
      cat = 3;
    else
      cat = second.right_matched(r) ? 2 : 1;
  }
  return greedy_with_permutation(inst, categorize(sigma, c));
}

// ---------------------------------------------------------------------------

enum class ExecMode { vanilla, greedy };

inline const char* to_string(ExecMode mode) { return mode == ExecMode::greedy ? "greedy" : "vanilla"; }

/// Runs an online policy over the stream. `suggest(type, k, rng)` returns the
/// candidate list for the k-th (1-based) arrival of `type`; it is called once
/// per arrival regardless of matching state, so vanilla and greedy runs fed
/// identically seeded generators see identical suggestions.
template <class Suggest>
Matching execute_policy(const InstanceStream& inst, Suggest&& suggest, ExecMode mode, Rng& rng) {
  const TypeGraph& tg = *inst.graph;
  Matching m(inst.size(), tg.right_count);
  std::vector<int> seen(static_cast<std::size_t>(tg.left_count), 0);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const int type = inst.arrivals[i];
    const int k = ++seen[static_cast<std::size_t>(type)];
    const SuggestionList list = suggest(type, k, rng);
    bool done = false;
    for (int r : list) {
      if (r == kDummy) continue;
      if (r < 0 || r >= tg.right_count || !tg.has_edge(type, r))
        throw std::logic_error("policy suggested non-neighbor " + std::to_string(r) + " for type " +
                               std::to_string(type) + " at arrival " + std::to_string(i));
      if (!m.right_matched(r)) {
        m.add(static_cast<int>(i), r);
        done = true;
        break;
      }
    }
    if (done || mode == ExecMode::vanilla) continue;
    for (int r : tg.adj[static_cast<std::size_t>(type)])
      if (!m.right_matched(r)) {
        m.add(static_cast<int>(i), r);
        break;
      }
  }
  return m;
}

}  // namespace iidmatch
