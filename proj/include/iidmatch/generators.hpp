#pragma once

// Synthetic type graphs: parameterized random families, fixed hard
// instances, sparse matching benchmarks, and two ways to turn a general graph
// into a bipartite one.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "iidmatch/graph_core.hpp"
#include "iidmatch/rng.hpp"

namespace iidmatch {

/// Simple undirected graph; edges stored with first < second.
struct GeneralGraph {
  int node_count = 0;
  std::vector<std::pair<int, int>> edges;
};

inline std::optional<std::string> validate_general_graph(const GeneralGraph& g) {
  std::unordered_set<std::uint64_t> seen;
  for (auto [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= g.node_count || v >= g.node_count) return "edge endpoint out of range";
    if (u == v) return "self-loop at " + std::to_string(u);
    if (u > v) return "edge not normalized";
    if (!seen.insert((static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v)).second)
      return "duplicate edge " + std::to_string(u) + "-" + std::to_string(v);
  }
  return std::nullopt;
}

namespace detail {

[[noreturn]] inline void bad_param(std::string_view family, const std::string& what) {
  throw std::invalid_argument(std::string(family) + ": " + what);
}

/// d distinct values from [0, n), sorted (Floyd's algorithm).
inline std::vector<int> sample_subset(int n, int d, Rng& rng) {
  std::unordered_set<int> chosen;
  chosen.reserve(static_cast<std::size_t>(d) * 2);
  for (int j = n - d; j < n; ++j) {
    const int t = rng.index(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<int> out(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

inline TypeGraph from_left_rows(int left_count, int right_count, std::vector<std::vector<int>> rows, std::int64_t m) {
  TypeGraph tg;
  tg.left_count = left_count;
  tg.right_count = right_count;
  tg.m = m;
  for (auto& row : rows) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  tg.adj = std::move(rows);
  return tg;
}

inline std::uint64_t edge_key(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Parameterized families

/// G(n, n, c/n). Edges are visited with geometric skips, so cost tracks the
/// edge count rather than n^2.
inline TypeGraph gen_erdos_renyi(int n, double c, Rng& rng) {
  if (n < 1) detail::bad_param("erdos_renyi", "n must be >= 1");
  if (!(c >= 0.0)) detail::bad_param("erdos_renyi", "c must be >= 0");
  const double p = std::min(1.0, c / n);
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n));
  const std::int64_t total = static_cast<std::int64_t>(n) * n;
  if (p >= 1.0) {
    for (auto& row : rows) {
      row.resize(static_cast<std::size_t>(n));
      std::iota(row.begin(), row.end(), 0);
    }
  } else if (p > 0.0) {
    const double log_q = std::log1p(-p);
    std::int64_t at = -1;
    for (;;) {
      const double u = 1.0 - rng.uniform();  // (0, 1]
      at += 1 + static_cast<std::int64_t>(std::floor(std::log(u) / log_q));
      if (at >= total || at < 0) break;
      rows[static_cast<std::size_t>(at / n)].push_back(static_cast<int>(at % n));
    }
  }
  return detail::from_left_rows(n, n, std::move(rows), n);
}

inline TypeGraph gen_left_regular(int n, int d, Rng& rng) {
  if (n < 1) detail::bad_param("left_regular", "n must be >= 1");
  if (d < 0 || d > n) detail::bad_param("left_regular", "d must satisfy 0 <= d <= n (d=" + std::to_string(d) + ")");
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n));
  for (auto& row : rows) row = detail::sample_subset(n, d, rng);
  return detail::from_left_rows(n, n, std::move(rows), n);
}

inline TypeGraph gen_right_regular(int n, int d, Rng& rng) {
  if (n < 1) detail::bad_param("right_regular", "n must be >= 1");
  if (d < 0 || d > n) detail::bad_param("right_regular", "d must satisfy 0 <= d <= n (d=" + std::to_string(d) + ")");
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r)
    for (int l : detail::sample_subset(n, d, rng)) rows[static_cast<std::size_t>(l)].push_back(r);
  return detail::from_left_rows(n, n, std::move(rows), n);
}

/// P(d) proportional to d^-tau * exp(-d/kappa) on [1, max_degree].
class PowerLawCutoff {
 public:
  PowerLawCutoff(double tau, double kappa, int max_degree) {
    if (!(tau > 0.0)) detail::bad_param("plcutoff", "tau must be > 0");
    if (!(kappa > 0.0)) detail::bad_param("plcutoff", "kappa must be > 0");
    if (max_degree < 1) detail::bad_param("plcutoff", "max degree must be >= 1");
    pmf_.resize(static_cast<std::size_t>(max_degree) + 1, 0.0);
    double sum = 0.0;
    for (int d = 1; d <= max_degree; ++d) {
      pmf_[static_cast<std::size_t>(d)] = std::exp(-tau * std::log(static_cast<double>(d)) - d / kappa);
      sum += pmf_[static_cast<std::size_t>(d)];
    }
    cdf_.resize(pmf_.size());
    double acc = 0.0;
    for (std::size_t d = 0; d < pmf_.size(); ++d) {
      pmf_[d] /= sum;
      acc += pmf_[d];
      cdf_[d] = acc;
    }
  }

  const std::vector<double>& pmf() const noexcept { return pmf_; }

  int sample(Rng& rng) const {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) return static_cast<int>(cdf_.size()) - 1;
    return std::max(1, static_cast<int>(it - cdf_.begin()));
  }

 private:
  std::vector<double> pmf_;
  std::vector<double> cdf_;
};

inline int sample_degree_plcutoff(double tau, double kappa, int max_degree, Rng& rng) {
  return PowerLawCutoff(tau, kappa, max_degree).sample(rng);
}

/// Configuration-model graph on n nodes with degrees from a power law with
/// exponential cutoff.
inline GeneralGraph molloy_reed_graph(int n, double tau, double kappa, Rng& rng) {
  if (n < 2) detail::bad_param("molloy_reed", "n must be >= 2");
  constexpr int kPairAttempts = 100;
  const PowerLawCutoff dist(tau, kappa, n);
  std::vector<int> stubs(static_cast<std::size_t>(n));
  std::int64_t total = 0;
  for (auto& d : stubs) total += (d = dist.sample(rng));
  while (total % 2 != 0) {
    auto& d = stubs[static_cast<std::size_t>(rng.index(n))];
    total -= d;
    d = dist.sample(rng);
    total += d;
  }

  // Vertices that still hold free stubs; swap-removal keeps picks O(1).
  std::vector<int> active;
  std::vector<int> pos(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v)
    if (stubs[static_cast<std::size_t>(v)] > 0) {
      pos[static_cast<std::size_t>(v)] = static_cast<int>(active.size());
      active.push_back(v);
    }
  auto consume = [&](int v) {
    if (--stubs[static_cast<std::size_t>(v)] > 0) return;
    const int p = pos[static_cast<std::size_t>(v)];
    const int last = active.back();
    active[static_cast<std::size_t>(p)] = last;
    pos[static_cast<std::size_t>(last)] = p;
    active.pop_back();
    pos[static_cast<std::size_t>(v)] = -1;
  };

  std::unordered_set<std::uint64_t> present;
  std::vector<std::pair<int, int>> raw;
  while (!active.empty()) {
    int u = 0, v = 0;
    for (int attempt = 0; attempt < kPairAttempts; ++attempt) {
      u = active[static_cast<std::size_t>(rng.index(static_cast<int>(active.size())))];
      v = active[static_cast<std::size_t>(rng.index(static_cast<int>(active.size())))];
      if (u != v && !present.count(detail::edge_key(u, v))) break;
    }
    if (u == v && stubs[static_cast<std::size_t>(u)] < 2) {
      // One stub cannot close a loop; redraw unless nothing else is left
      // (even total degree makes that unreachable).
      if (active.size() == 1) consume(u);
      continue;
    }
    present.insert(detail::edge_key(u, v));
    raw.emplace_back(u, v);
    consume(u);
    consume(v);
  }

  GeneralGraph g;
  g.node_count = n;
  std::unordered_set<std::uint64_t> kept;
  for (auto [u, v] : raw) {
    if (u == v) continue;
    if (!kept.insert(detail::edge_key(u, v)).second) continue;
    g.edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

inline TypeGraph convert_random_partition(const GeneralGraph& g, Rng& rng);

inline TypeGraph gen_molloy_reed(int n, double tau, double kappa, Rng& rng) {
  const GeneralGraph g = molloy_reed_graph(n, tau, kappa, rng);
  return convert_random_partition(g, rng);
}

/// Bipartite preferential attachment. Each new type draws Z ~ Bin(n, c/n)
/// distinct offline neighbors with weights 1 + current degree.
inline TypeGraph gen_pref_attach(int n, double c, Rng& rng) {
  if (n < 1) detail::bad_param("pref_attach", "n must be >= 1");
  if (!(c >= 0.0)) detail::bad_param("pref_attach", "c must be >= 0");
  const double p = std::min(1.0, c / n);
  // Every edge endpoint is listed once, so a uniform pick over
  // [0, n + endpoints.size()) realizes weights 1 + d_j.
  std::vector<int> endpoints;
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n));
  std::vector<char> taken(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    const int z = rng.binomial(n, p);
    auto& row = rows[static_cast<std::size_t>(i)];
    const std::uint64_t weight = static_cast<std::uint64_t>(n) + endpoints.size();
    while (static_cast<int>(row.size()) < z) {
      const std::uint64_t u = rng.below(weight);
      const int r = u < static_cast<std::uint64_t>(n) ? static_cast<int>(u) : endpoints[u - static_cast<std::uint64_t>(n)];
      if (taken[static_cast<std::size_t>(r)]) continue;
      taken[static_cast<std::size_t>(r)] = 1;
      row.push_back(r);
    }
    for (int r : row) {
      taken[static_cast<std::size_t>(r)] = 0;
      endpoints.push_back(r);
    }
  }
  return detail::from_left_rows(n, n, std::move(rows), n);
}

// ---------------------------------------------------------------------------
// Stand-alone graphs

/// Type j is adjacent to offline nodes 0..j.
inline TypeGraph gen_ut(int n) {
  if (n < 1) detail::bad_param("ut", "n must be >= 1");
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    rows[static_cast<std::size_t>(j)].resize(static_cast<std::size_t>(j) + 1);
    std::iota(rows[static_cast<std::size_t>(j)].begin(), rows[static_cast<std::size_t>(j)].end(), 0);
  }
  return detail::from_left_rows(n, n, std::move(rows), n);
}

/// Types 0..n-1 form a perfect matching with R; the next round(n/e) types
/// are complete to R. m equals the type count.
inline TypeGraph gen_mh(int n) {
  if (n < 1) detail::bad_param("mh", "n must be >= 1");
  const int extra = static_cast<int>(std::lround(n / std::exp(1.0)));
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n + extra));
  for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = {i};
  for (int i = n; i < n + extra; ++i) {
    rows[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(n));
    std::iota(rows[static_cast<std::size_t>(i)].begin(), rows[static_cast<std::size_t>(i)].end(), 0);
  }
  return detail::from_left_rows(n + extra, n, std::move(rows), n + extra);
}

/// q = n/4. Offline blocks U, V, W, K and type blocks X, Y, Z, I, in that
/// index order. Block order is observable: flow-based policies break ties by
/// arc order, and this layout is the adversarial one. Each i in [0, q) closes the 6-cycle u x v y w z, and
/// X x K and I x W are complete.
inline TypeGraph gen_fh(int n) {
  if (n < 4 || n % 4 != 0) detail::bad_param("fh", "n must be divisible by 4 (n=" + std::to_string(n) + ")");
  const int q = n / 4;
  const int U = 0, V = q, W = 2 * q, K = 3 * q;
  const int X = 0, Y = q, Z = 2 * q, I = 3 * q;
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n));
  auto row = [&](int l) -> std::vector<int>& { return rows[static_cast<std::size_t>(l)]; };
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      row(I + i).push_back(W + j);
      row(X + i).push_back(K + j);
    }
    row(X + i).push_back(U + i);
    row(X + i).push_back(V + i);
    row(Y + i).push_back(V + i);
    row(Y + i).push_back(W + i);
    row(Z + i).push_back(W + i);
    row(Z + i).push_back(U + i);
  }
  return detail::from_left_rows(n, n, std::move(rows), n);
}

/// Grouped random graph: types are shuffled into k groups; each type gets
/// Y ~ Bin(10, 1/2) distinct neighbors from offline groups i-1..i+1 (cyclic).
inline TypeGraph gen_grouped(std::string_view family, int n, int k, Rng& rng) {
  if (k < 1) detail::bad_param(family, "k must be >= 1");
  if (n < k || n % k != 0)
    detail::bad_param(family, "n must be divisible by k=" + std::to_string(k) + " (n=" + std::to_string(n) + ")");
  const int g = n / k;
  std::vector<int> left(static_cast<std::size_t>(n));
  std::iota(left.begin(), left.end(), 0);
  shuffle(left.begin(), left.end(), rng);
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n));
  for (int grp = 0; grp < k; ++grp) {
    std::vector<int> pool;
    for (int off = -1; off <= 1; ++off) {
      const int h = ((grp + off) % k + k) % k;
      for (int r = h * g; r < (h + 1) * g; ++r) pool.push_back(r);
    }
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    for (int s = grp * g; s < (grp + 1) * g; ++s) {
      const int y = std::min(rng.binomial(10, 0.5), static_cast<int>(pool.size()));
      auto& row = rows[static_cast<std::size_t>(left[static_cast<std::size_t>(s)])];
      for (int idx : detail::sample_subset(static_cast<int>(pool.size()), y, rng)) row.push_back(pool[static_cast<std::size_t>(idx)]);
    }
  }
  return detail::from_left_rows(n, n, std::move(rows), n);
}

inline constexpr int kFewGroups = 32;
inline constexpr int kManyGroups = 256;
inline constexpr int kRopeBlock = 6;
inline constexpr int kZipfDegree = 6;

inline TypeGraph gen_fewg(int n, Rng& rng) { return gen_grouped("fewg", n, kFewGroups, rng); }
inline TypeGraph gen_manyg(int n, Rng& rng) { return gen_grouped("manyg", n, kManyGroups, rng); }

/// Blocks of size d: L_i and R_i for i < t = n/d. Link i joins L_i to
/// R_{i+1} for i < t-1, and link t-1 joins L_{t-1} to R_{t-1}, so R_0 stays
/// isolated. Even links get a random perfect matching; odd ones keep each of
/// the d^2 edges with probability (d-1)/d.
inline TypeGraph gen_rope(int n, Rng& rng, int d = kRopeBlock) {
  if (d < 1) detail::bad_param("rope", "d must be >= 1");
  if (n < d || n % d != 0)
    detail::bad_param("rope", "n must be divisible by d=" + std::to_string(d) + " (n=" + std::to_string(n) + ")");
  const int t = n / d;
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n));
  auto connect = [&](int lblock, int rblock, int position) {
    if (position % 2 == 0) {
      std::vector<int> perm(static_cast<std::size_t>(d));
      std::iota(perm.begin(), perm.end(), 0);
      shuffle(perm.begin(), perm.end(), rng);
      for (int a = 0; a < d; ++a) rows[static_cast<std::size_t>(lblock * d + a)].push_back(rblock * d + perm[static_cast<std::size_t>(a)]);
    } else {
      const double p = static_cast<double>(d - 1) / d;
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          if (rng.bernoulli(p)) rows[static_cast<std::size_t>(lblock * d + a)].push_back(rblock * d + b);
    }
  };
  for (int i = 0; i + 1 < t; ++i) connect(i, i + 1, i);
  connect(t - 1, t - 1, t - 1);
  return detail::from_left_rows(n, n, std::move(rows), n);
}

/// n = s^2; for every (left block, right block) pair a random 6-cycle on
/// three distinct nodes per side. Repeated edges merge.
inline TypeGraph gen_hexa(int n, Rng& rng) {
  const int s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(std::max(n, 0)))));
  if (n < 1 || s * s != n) detail::bad_param("hexa", "n must be a perfect square (n=" + std::to_string(n) + ")");
  if (s < 3) detail::bad_param("hexa", "n must be at least 9 (blocks need 3 nodes)");
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n));
  std::array<int, 3> perm_l{0, 1, 2}, perm_r{0, 1, 2};
  for (int bi = 0; bi < s; ++bi)
    for (int bj = 0; bj < s; ++bj) {
      const auto ls = detail::sample_subset(s, 3, rng);
      const auto rs = detail::sample_subset(s, 3, rng);
      perm_l = {0, 1, 2};
      perm_r = {0, 1, 2};
      shuffle(perm_l.begin(), perm_l.end(), rng);
      shuffle(perm_r.begin(), perm_r.end(), rng);
      auto L = [&](int a) { return bi * s + ls[static_cast<std::size_t>(perm_l[static_cast<std::size_t>(a % 3)])]; };
      auto R = [&](int a) { return bj * s + rs[static_cast<std::size_t>(perm_r[static_cast<std::size_t>(a % 3)])]; };
      for (int a = 0; a < 3; ++a) {
        rows[static_cast<std::size_t>(L(a))].push_back(R(a));
        rows[static_cast<std::size_t>(L(a + 1))].push_back(R(a));
      }
    }
  return detail::from_left_rows(n, n, std::move(rows), n);
}

/// P(l_i ~ r_j) = min(n d / ln^2 n / (i j), 1) with 1-based i, j.
inline TypeGraph gen_zipf(int n, Rng& rng, int d = kZipfDegree) {
  if (n < 2) detail::bad_param("zipf", "n must be >= 2");
  const double ln = std::log(static_cast<double>(n));
  const double scale = static_cast<double>(n) * d / (ln * ln);
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const double p = scale / (static_cast<double>(i) * j);
      if (p >= 1.0 || rng.bernoulli(p)) rows[static_cast<std::size_t>(i - 1)].push_back(j - 1);
    }
  return detail::from_left_rows(n, n, std::move(rows), n);
}

// ---------------------------------------------------------------------------
// General graph -> bipartite

inline TypeGraph convert_duplicating(const GeneralGraph& g) {
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(g.node_count));
  for (auto [u, v] : g.edges) {
    rows[static_cast<std::size_t>(u)].push_back(v);
    rows[static_cast<std::size_t>(v)].push_back(u);
  }
  return detail::from_left_rows(g.node_count, g.node_count, std::move(rows), g.node_count);
}

/// Uniform split with |L| = floor(V/2); L and R are indexed by position in
/// the shuffled order. Only crossing edges survive.
inline TypeGraph convert_random_partition(const GeneralGraph& g, Rng& rng) {
  if (g.node_count < 2) detail::bad_param("convert_random_partition", "need at least 2 nodes");
  std::vector<int> order(static_cast<std::size_t>(g.node_count));
  std::iota(order.begin(), order.end(), 0);
  shuffle(order.begin(), order.end(), rng);
  const int lc = g.node_count / 2;
  const int rc = g.node_count - lc;
  std::vector<int> slot(static_cast<std::size_t>(g.node_count));
  for (int p = 0; p < g.node_count; ++p) slot[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])] = p;
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(lc));
  for (auto [u, v] : g.edges) {
    const int a = slot[static_cast<std::size_t>(u)], b = slot[static_cast<std::size_t>(v)];
    if ((a < lc) == (b < lc)) continue;
    if (a < lc)
      rows[static_cast<std::size_t>(a)].push_back(b - lc);
    else
      rows[static_cast<std::size_t>(b)].push_back(a - lc);
  }
  return detail::from_left_rows(lc, rc, std::move(rows), lc);
}

// ---------------------------------------------------------------------------
// Family dispatch

enum class Family { erdos_renyi, left_regular, right_regular, molloy_reed, pref_attach, ut, mh, fh, fewg, manyg, rope, hexa, zipf };

inline constexpr std::array<Family, 13> kAllFamilies{
    Family::erdos_renyi, Family::left_regular, Family::right_regular, Family::molloy_reed, Family::pref_attach,
    Family::ut,          Family::mh,           Family::fh,            Family::fewg,        Family::manyg,
    Family::rope,        Family::hexa,         Family::zipf};

inline const char* to_string(Family f) {
  switch (f) {
    case Family::erdos_renyi: return "erdos_renyi";
    case Family::left_regular: return "left_regular";
    case Family::right_regular: return "right_regular";
    case Family::molloy_reed: return "molloy_reed";
    case Family::pref_attach: return "pref_attach";
    case Family::ut: return "ut";
    case Family::mh: return "mh";
    case Family::fh: return "fh";
    case Family::fewg: return "fewg";
    case Family::manyg: return "manyg";
    case Family::rope: return "rope";
    case Family::hexa: return "hexa";
    case Family::zipf: return "zipf";
  }
  return "?";
}

inline std::optional<Family> parse_family(std::string_view s) {
  for (Family f : kAllFamilies)
    if (s == to_string(f)) return f;
  return std::nullopt;
}

/// Deterministic constructions need no randomness and are built once.
inline bool is_random_family(Family f) { return f != Family::ut && f != Family::mh && f != Family::fh; }

/// Family tag plus every parameter any family reads; unused ones are ignored.
struct FamilySpec {
  Family family = Family::erdos_renyi;
  int n = 1000;
  double c = 1.0;
  int d = 5;
  double tau = 2.0;
  double kappa = 10.0;
};

/// The parameters a family actually uses, in `key=value;key=value` form.
inline std::string family_params(const FamilySpec& spec) {
  auto num = [](double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return std::string(buf);
  };
  std::string s = "n=" + std::to_string(spec.n);
  switch (spec.family) {
    case Family::erdos_renyi:
    case Family::pref_attach: s += ";c=" + num(spec.c); break;
    case Family::left_regular:
    case Family::right_regular: s += ";d=" + std::to_string(spec.d); break;
    case Family::molloy_reed: s += ";tau=" + num(spec.tau) + ";kappa=" + num(spec.kappa); break;
    default: break;
  }
  return s;
}

inline TypeGraph generate(const FamilySpec& spec, Rng& rng) {
  switch (spec.family) {
    case Family::erdos_renyi: return gen_erdos_renyi(spec.n, spec.c, rng);
    case Family::left_regular: return gen_left_regular(spec.n, spec.d, rng);
    case Family::right_regular: return gen_right_regular(spec.n, spec.d, rng);
    case Family::molloy_reed: return gen_molloy_reed(spec.n, spec.tau, spec.kappa, rng);
    case Family::pref_attach: return gen_pref_attach(spec.n, spec.c, rng);
    case Family::ut: return gen_ut(spec.n);
    case Family::mh: return gen_mh(spec.n);
    case Family::fh: return gen_fh(spec.n);
    case Family::fewg: return gen_fewg(spec.n, rng);
    case Family::manyg: return gen_manyg(spec.n, rng);
    case Family::rope: return gen_rope(spec.n, rng);
    case Family::hexa: return gen_hexa(spec.n, rng);
    case Family::zipf: return gen_zipf(spec.n, rng);
  }
  throw std::invalid_argument("generate: unknown family");
}

inline TypeGraph generate(const FamilySpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  return generate(spec, rng);
}

}  // namespace iidmatch
