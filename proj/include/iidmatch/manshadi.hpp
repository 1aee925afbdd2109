#pragma once

// Monte-Carlo fractional optimum and two-candidate correlated sampling.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "iidmatch/edge_map.hpp"
#include "iidmatch/flow.hpp"
#include "iidmatch/online_baselines.hpp"

namespace iidmatch {

inline constexpr int kDefaultOptSamples = 100;

/// Estimates P(edge in the optimum) by solving `samples` sampled instances.
/// Each arrival's neighbor list is shuffled before the solve so that ties
/// between optima do not always favor low offline indices. Monte-Carlo noise
/// can push a type's row above 1; such rows are rescaled.
inline EdgeMap<double> estimate_fractional_optimal(const TypeGraph& tg, int samples, Rng& rng) {
  if (samples < 1) throw std::invalid_argument("estimate_fractional_optimal: samples must be >= 1");
  EdgeMap<std::int64_t> hits(tg, 0);
  std::vector<std::vector<int>> adj;
  for (int s = 0; s < samples; ++s) {
    const auto inst = sample_instance(tg, rng.next());
    adj.resize(inst.size());
    for (std::size_t i = 0; i < inst.size(); ++i) {
      adj[i] = inst.neighbors_of_arrival(i);
      shuffle(adj[i].begin(), adj[i].end(), rng);
    }
    const auto opt = max_matching(adj, tg.right_count);
    for (auto [i, r] : opt.pairs()) {
      const int type = inst.arrivals[static_cast<std::size_t>(i)];
      ++hits.at(type, edge_slot(tg, type, r));
    }
  }
  EdgeMap<double> f(tg, 0.0);
  for (int l = 0; l < tg.left_count; ++l) {
    auto& row = f.row(l);
    double sum = 0.0;
    for (std::size_t k = 0; k < row.size(); ++k) {
      row[k] = static_cast<double>(hits.at(l, k)) / samples;
      sum += row[k];
    }
    if (sum > 1.0)
      for (double& x : row) x /= sum;
  }
  return f;
}

struct Interval {
  int owner;  // offline index or kDummy
  double start;
  double end;
};

struct TypeIntervals {
  std::vector<Interval> I;
  std::vector<Interval> J;
};

using IntervalPartitions = std::vector<TypeIntervals>;

/// Builds the two tilings of [0, 1) for one type. `neighbors[p]` has mass
/// `f[p]`. Neighbors are ordered by descending mass (ties by index) and a
/// dummy takes the remaining mass; J is I's length sequence shifted by one.
inline TypeIntervals build_interval_partitions(const std::vector<int>& neighbors, const std::vector<double>& f) {
  if (neighbors.size() != f.size()) throw std::invalid_argument("build_interval_partitions: size mismatch");
  double total = 0.0;
  for (double x : f) {
    if (x < 0.0) throw std::invalid_argument("build_interval_partitions: negative mass");
    total += x;
  }
  if (total > 1.0 + 1e-9) throw std::invalid_argument("build_interval_partitions: row sum exceeds 1");

  std::vector<std::size_t> idx(f.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (f[a] != f[b]) return f[a] > f[b];
    return neighbors[a] < neighbors[b];
  });
  std::vector<int> owner;
  std::vector<double> mass;
  for (std::size_t p : idx) {
    owner.push_back(neighbors[p]);
    mass.push_back(f[p]);
  }
  const double rest = 1.0 - total;
  owner.push_back(kDummy);
  mass.push_back(rest > 1e-12 ? rest : 0.0);

  auto tile = [](const std::vector<int>& who, const std::vector<double>& len) {
    std::vector<Interval> out;
    double at = 0.0;
    std::size_t last_positive = who.size();
    for (std::size_t p = 0; p < who.size(); ++p) {
      out.push_back({who[p], at, at + len[p]});
      at += len[p];
      if (len[p] > 0.0) last_positive = p;
    }
    // Close rounding gaps: everything from the last non-empty piece ends at 1.
    if (last_positive < who.size())
      for (std::size_t p = last_positive; p < out.size(); ++p) {
        if (p > last_positive) out[p].start = 1.0;
        out[p].end = 1.0;
      }
    return out;
  };

  TypeIntervals parts;
  parts.I = tile(owner, mass);
  std::vector<int> jwho(owner.begin() + 1, owner.end());
  std::vector<double> jlen(mass.begin() + 1, mass.end());
  jwho.push_back(owner.front());
  jlen.push_back(mass.front());
  parts.J = tile(jwho, jlen);
  return parts;
}

inline IntervalPartitions build_interval_partitions(const TypeGraph& tg, const EdgeMap<double>& f) {
  IntervalPartitions out;
  out.reserve(static_cast<std::size_t>(tg.left_count));
  for (int l = 0; l < tg.left_count; ++l) out.push_back(build_interval_partitions(tg.adj[static_cast<std::size_t>(l)], f.row(l)));
  return out;
}

namespace detail {
inline int interval_owner(const std::vector<Interval>& parts, double u) {
  for (const auto& iv : parts)
    if (u < iv.end && iv.end > iv.start) return iv.owner;
  return parts.back().owner;
}
}  // namespace detail

/// Owners of the I- and J-intervals containing u.
inline std::pair<int, int> correlated_sample(const TypeIntervals& parts, double u) {
  return {detail::interval_owner(parts.I, u), detail::interval_owner(parts.J, u)};
}

inline IntervalPartitions manshadi_preprocess(const TypeGraph& tg, Rng& rng, int samples = kDefaultOptSamples) {
  return build_interval_partitions(tg, estimate_fractional_optimal(tg, samples, rng));
}

/// One uniform draw per arrival; independent of k.
inline SuggestionList manshadi_suggest(const IntervalPartitions& state, int type, Rng& rng) {
  const auto [a, b] = correlated_sample(state[static_cast<std::size_t>(type)], rng.uniform());
  return {a, b};
}

}  // namespace iidmatch
