#pragma once

// The five-step list policy: pairwise-constrained fractional matching,
// dependent rounding of three times that solution, 4-cycle breaking, the
// tabulated reweighting of saturated types, and the list distributions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "iidmatch/edge_map.hpp"
#include "iidmatch/flow.hpp"
#include "iidmatch/lp.hpp"
#include "iidmatch/rla.hpp"

namespace iidmatch {

inline const double kEdgeCap = 1.0 - std::exp(-1.0);  // 1 - 1/e
inline const double kPairCap = 1.0 - std::exp(-2.0);  // 1 - 1/e^2

inline constexpr std::int64_t kDefaultLpRowLimit = 2'000'000;

/// Thrown when the LP would exceed the configured row budget.
class LpGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Constraint rows of the explicit LP: one per type, one per offline node,
/// one per pair of types sharing an offline node.
inline std::int64_t brubach_lp_rows(const TypeGraph& tg) {
  std::vector<std::int64_t> deg(static_cast<std::size_t>(tg.right_count), 0);
  for (const auto& row : tg.adj)
    for (int r : row) ++deg[static_cast<std::size_t>(r)];
  std::int64_t rows = tg.left_count + tg.right_count;
  for (auto d : deg) rows += d * (d - 1) / 2;
  return rows;
}

inline void check_lp_guard(const TypeGraph& tg, std::int64_t row_limit) {
  const auto rows = brubach_lp_rows(tg);
  if (rows > row_limit)
    throw LpGuardError("LP has " + std::to_string(rows) + " constraint rows, above the limit of " +
                       std::to_string(row_limit));
}

/// Explicit LP, solved with the dense simplex. Only for small graphs; used
/// to cross-check brubach_lp.
inline EdgeMap<double> brubach_lp_simplex(const TypeGraph& tg) {
  EdgeMap<int> var(tg, 0);
  int n = 0;
  for (int l = 0; l < tg.left_count; ++l)
    for (auto& v : var.row(l)) v = n++;
  LinearProgram lp(n);
  for (int j = 0; j < n; ++j) {
    lp.objective[static_cast<std::size_t>(j)] = 1.0;
    lp.bounds[static_cast<std::size_t>(j)] = {0.0, kEdgeCap};
  }
  for (int l = 0; l < tg.left_count; ++l) {
    std::vector<std::pair<int, double>> row;
    for (int v : var.row(l)) row.emplace_back(v, 1.0);
    if (!row.empty()) lp.add_row(std::move(row), 1.0);
  }
  const auto inc = right_incidence(tg);
  for (const auto& edges : inc) {
    std::vector<std::pair<int, double>> row;
    for (auto [l, k] : edges) row.emplace_back(var.at(l, k), 1.0);
    if (!row.empty()) lp.add_row(std::move(row), 1.0);
    for (std::size_t a = 0; a < edges.size(); ++a)
      for (std::size_t b = a + 1; b < edges.size(); ++b)
        lp.add_row({{var.at(edges[a].first, edges[a].second), 1.0}, {var.at(edges[b].first, edges[b].second), 1.0}},
                   kPairCap);
  }
  const auto sol = solve_lp_max(lp);
  if (sol.status != LpStatus::optimal) throw std::runtime_error("brubach_lp_simplex: LP not solved to optimality");
  EdgeMap<double> f(tg, 0.0);
  for (int l = 0; l < tg.left_count; ++l)
    for (std::size_t k = 0; k < f.row(l).size(); ++k) f.at(l, k) = sol.values[static_cast<std::size_t>(var.at(l, k))];
  return f;
}

/// Same LP solved as a max flow. Per offline node the feasible region
/// {each x <= 1-1/e, each pair <= 1-1/e^2, sum <= 1} is the polymatroid of
/// g(s) = c1 min(s,1) + c2 min(s,2) + c3 min(s,3) with
/// c1 = (1-1/e)^2, c2 = 1/e - 2/e^2, c3 = 1/e^2. That region is exactly the
/// set of flows through gadget nodes N1, N2, N3 where each edge may send c_j
/// into N_j and N_j may pass j*c_j on to the sink. Capacities are scaled to
/// integers and rounded down, so the result is feasible for the LP and
/// optimal within about 1e-11 per edge.
inline EdgeMap<double> brubach_lp(const TypeGraph& tg, std::int64_t row_limit = kDefaultLpRowLimit) {
  check_lp_guard(tg, row_limit);
  const double e1 = std::exp(-1.0), e2 = std::exp(-2.0);
  const double c[3] = {(1.0 - e1) * (1.0 - e1), e1 - 2.0 * e2, e2};
  constexpr double kScale = 1099511627776.0;  // 2^40
  const auto S = static_cast<std::int64_t>(kScale);
  std::int64_t cap_edge[3], cap_node[3];
  for (int j = 0; j < 3; ++j) {
    cap_edge[j] = static_cast<std::int64_t>(std::floor(c[j] * kScale));
    cap_node[j] = static_cast<std::int64_t>(std::floor((j + 1) * c[j] * kScale));
  }

  const int E = static_cast<int>(tg.edge_count());
  const int loff = 2, eoff = 2 + tg.left_count, noff = eoff + E;
  BasicFlowNetwork<std::int64_t> net(noff + 3 * tg.right_count, 0, 1);
  for (int l = 0; l < tg.left_count; ++l) net.add_arc(0, loff + l, S);
  EdgeMap<int> through(tg, -1);
  int e = 0;
  for (int l = 0; l < tg.left_count; ++l) {
    const auto& row = tg.adj[static_cast<std::size_t>(l)];
    for (std::size_t k = 0; k < row.size(); ++k, ++e) {
      through.at(l, k) = net.add_arc(loff + l, eoff + e, S);
      for (int j = 0; j < 3; ++j) net.add_arc(eoff + e, noff + 3 * row[k] + j, cap_edge[j]);
    }
  }
  for (int r = 0; r < tg.right_count; ++r)
    for (int j = 0; j < 3; ++j) net.add_arc(noff + 3 * r + j, 1, cap_node[j]);

  const auto f = dinic(net);
  EdgeMap<double> out(tg, 0.0);
  for (int l = 0; l < tg.left_count; ++l)
    for (std::size_t k = 0; k < out.row(l).size(); ++k)
      out.at(l, k) = static_cast<double>(f.on(through.at(l, k))) / kScale;
  return out;
}

/// Largest constraint violation of f against the LP (0 when feasible).
inline double brubach_lp_violation(const TypeGraph& tg, const EdgeMap<double>& f) {
  double worst = 0.0;
  for (int l = 0; l < tg.left_count; ++l) {
    double s = 0.0;
    for (double x : f.row(l)) {
      worst = std::max({worst, -x, x - kEdgeCap});
      s += x;
    }
    worst = std::max(worst, s - 1.0);
  }
  for (const auto& edges : right_incidence(tg)) {
    double s = 0.0;
    std::vector<double> xs;
    for (auto [l, k] : edges) {
      xs.push_back(f.at(l, k));
      s += xs.back();
    }
    worst = std::max(worst, s - 1.0);
    std::sort(xs.rbegin(), xs.rend());
    if (xs.size() >= 2) worst = std::max(worst, xs[0] + xs[1] - kPairCap);
  }
  return worst;
}

// ---------------------------------------------------------------------------

/// Dependent rounding of a nonnegative edge vector. Repeatedly takes a cycle
/// or maximal path of fractional edges, splits it into alternating halves M1
/// and M2 and shifts by +alpha/-alpha or -beta/+beta with probabilities
/// beta/(alpha+beta) and alpha/(alpha+beta). Each edge ends at the floor or
/// ceiling of its input and keeps its expectation; node sums stay within
/// floor/ceiling of their input.
inline EdgeMap<int> gandhi_round(const TypeGraph& tg, const EdgeMap<double>& y, Rng& rng) {
  constexpr double kSnap = 1e-9;
  const int L = tg.left_count;
  const int V = L + tg.right_count;
  std::vector<double> val;
  std::vector<int> eu, ev;  // endpoints: type id and L + offline id
  for (int l = 0; l < L; ++l) {
    const auto& row = tg.adj[static_cast<std::size_t>(l)];
    for (std::size_t k = 0; k < row.size(); ++k) {
      const double x = y.at(l, k);
      if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument("gandhi_round: entries must be finite and >= 0");
      val.push_back(x);
      eu.push_back(l);
      ev.push_back(L + row[k]);
    }
  }
  const auto is_frac = [&](std::size_t e) { return std::fabs(val[e] - std::round(val[e])) > kSnap; };

  std::vector<std::vector<int>> inc(static_cast<std::size_t>(V));
  std::vector<int> deg(static_cast<std::size_t>(V), 0);
  std::vector<bool> frac(val.size(), false);
  std::size_t remaining = 0;
  for (std::size_t e = 0; e < val.size(); ++e) {
    if (!is_frac(e)) {
      val[e] = std::round(val[e]);
      continue;
    }
    frac[e] = true;
    ++remaining;
    for (int v : {eu[e], ev[e]}) {
      inc[static_cast<std::size_t>(v)].push_back(static_cast<int>(e));
      ++deg[static_cast<std::size_t>(v)];
    }
  }

  std::vector<int> leaves;
  for (int v = 0; v < V; ++v)
    if (deg[static_cast<std::size_t>(v)] == 1) leaves.push_back(v);
  int sweep = 0;
  std::vector<int> pos(static_cast<std::size_t>(V), -1);
  std::vector<int> nodes, edges;

  while (remaining > 0) {
    int start = -1;
    while (!leaves.empty()) {
      const int v = leaves.back();
      leaves.pop_back();
      if (deg[static_cast<std::size_t>(v)] == 1) {
        start = v;
        break;
      }
    }
    if (start < 0) {
      while (deg[static_cast<std::size_t>(sweep)] < 2) ++sweep;
      start = sweep;
    }

    nodes.assign(1, start);
    edges.clear();
    pos[static_cast<std::size_t>(start)] = 0;
    std::size_t first = 0;  // first edge of the structure within `edges`
    int cur = start, prev_e = -1;
    for (;;) {
      auto& list = inc[static_cast<std::size_t>(cur)];
      int next_e = -1;
      for (std::size_t i = 0; i < list.size();) {
        const int e = list[i];
        if (!frac[static_cast<std::size_t>(e)]) {
          list[i] = list.back();
          list.pop_back();
          continue;
        }
        if (e != prev_e) {
          next_e = e;
          break;
        }
        ++i;
      }
      if (next_e < 0) break;
      const int nxt = eu[static_cast<std::size_t>(next_e)] == cur ? ev[static_cast<std::size_t>(next_e)]
                                                                   : eu[static_cast<std::size_t>(next_e)];
      edges.push_back(next_e);
      if (pos[static_cast<std::size_t>(nxt)] >= 0) {
        first = static_cast<std::size_t>(pos[static_cast<std::size_t>(nxt)]);
        break;
      }
      pos[static_cast<std::size_t>(nxt)] = static_cast<int>(nodes.size());
      nodes.push_back(nxt);
      cur = nxt;
      prev_e = next_e;
    }
    for (int v : nodes) pos[static_cast<std::size_t>(v)] = -1;

    double alpha = HUGE_VAL, beta = HUGE_VAL;
    for (std::size_t i = first; i < edges.size(); ++i) {
      const double x = val[static_cast<std::size_t>(edges[i])];
      const double up = std::ceil(x) - x, down = x - std::floor(x);
      if ((i - first) % 2 == 0) {
        alpha = std::min(alpha, up);
        beta = std::min(beta, down);
      } else {
        alpha = std::min(alpha, down);
        beta = std::min(beta, up);
      }
    }
    const bool plus = rng.uniform() * (alpha + beta) < beta;
    for (std::size_t i = first; i < edges.size(); ++i) {
      const auto e = static_cast<std::size_t>(edges[i]);
      const bool in_m1 = (i - first) % 2 == 0;
      val[e] += plus ? (in_m1 ? alpha : -alpha) : (in_m1 ? -beta : beta);
      if (!is_frac(e)) {
        val[e] = std::round(val[e]);
        frac[e] = false;
        --remaining;
        for (int v : {eu[e], ev[e]})
          if (--deg[static_cast<std::size_t>(v)] == 1) leaves.push_back(v);
      }
    }
    // A walk from a leaf may close a cycle elsewhere and leave the leaf untouched.
    if (deg[static_cast<std::size_t>(start)] == 1) leaves.push_back(start);
  }

  EdgeMap<int> out(tg, 0);
  std::size_t e = 0;
  for (int l = 0; l < L; ++l)
    for (auto& x : out.row(l)) x = static_cast<int>(val[e++]);
  return out;
}

// ---------------------------------------------------------------------------
// 4-cycle breaking on integer thirds (1 = thin, 2 = thick).

namespace detail {

struct Cycle4 {
  int l1, l2, r1, r2;
  std::size_t k11, k12, k21, k22;  // slots of (l1,r1), (l1,r2), (l2,r1), (l2,r2)
};

// Scans 4-cycles of positive edges with l1 < l2 and r1 < r2, in index order,
// and returns the first whose thick-edge count equals `thick`.
inline bool find_cycle(const TypeGraph& tg, const EdgeMap<int>& h, int thick, Cycle4& out) {
  std::vector<std::vector<std::pair<int, std::size_t>>> rpos(static_cast<std::size_t>(tg.right_count));
  for (int l = 0; l < tg.left_count; ++l) {
    const auto& row = tg.adj[static_cast<std::size_t>(l)];
    for (std::size_t k = 0; k < row.size(); ++k)
      if (h.at(l, k) > 0) rpos[static_cast<std::size_t>(row[k])].emplace_back(l, k);
  }
  for (int l1 = 0; l1 < tg.left_count; ++l1) {
    const auto& row = tg.adj[static_cast<std::size_t>(l1)];
    for (std::size_t a = 0; a < row.size(); ++a) {
      if (h.at(l1, a) <= 0) continue;
      for (std::size_t b = a + 1; b < row.size(); ++b) {
        if (h.at(l1, b) <= 0) continue;
        for (auto [l2, k21] : rpos[static_cast<std::size_t>(row[a])]) {
          if (l2 <= l1) continue;
          const auto& row2 = tg.adj[static_cast<std::size_t>(l2)];
          auto it = std::lower_bound(row2.begin(), row2.end(), row[b]);
          if (it == row2.end() || *it != row[b]) continue;
          const auto k22 = static_cast<std::size_t>(it - row2.begin());
          if (h.at(l2, k22) <= 0) continue;
          const int t = (h.at(l1, a) == 2) + (h.at(l1, b) == 2) + (h.at(l2, k21) == 2) + (h.at(l2, k22) == 2);
          if (t != thick) continue;
          out = {l1, l2, row[a], row[b], a, b, k21, k22};
          return true;
        }
      }
    }
  }
  return false;
}

}  // namespace detail

/// Removes every 4-cycle with one thick and three thin edges, and every
/// all-thin 4-cycle, always preferring the former. Cycles with two thick
/// edges are left alone. Node totals are preserved by each step. Returns the
/// number of transformations applied.
inline int break_cycles(const TypeGraph& tg, EdgeMap<int>& h) {
  for (int l = 0; l < tg.left_count; ++l)
    for (int x : h.row(l))
      if (x < 0 || x > 2) throw std::invalid_argument("break_cycles: values must be 0, 1 or 2 thirds");
  int applied = 0;
  detail::Cycle4 c{};
  for (;;) {
    if (detail::find_cycle(tg, h, 1, c)) {
      // Relabel so that the thick edge is (L1, R1).
      int& v11 = h.at(c.l1, c.k11);
      int& v12 = h.at(c.l1, c.k12);
      int& v21 = h.at(c.l2, c.k21);
      int& v22 = h.at(c.l2, c.k22);
      int *thick, *same_l, *same_r, *opposite;
      if (v11 == 2) {
        thick = &v11, same_l = &v12, same_r = &v21, opposite = &v22;
      } else if (v12 == 2) {
        thick = &v12, same_l = &v11, same_r = &v22, opposite = &v21;
      } else if (v21 == 2) {
        thick = &v21, same_l = &v22, same_r = &v11, opposite = &v12;
      } else {
        thick = &v22, same_l = &v21, same_r = &v12, opposite = &v11;
      }
      *thick = 1;
      *same_l = 2;
      *same_r = 2;
      *opposite = 0;
      ++applied;
      continue;
    }
    if (detail::find_cycle(tg, h, 0, c)) {
      h.at(c.l1, c.k11) = 2;
      h.at(c.l2, c.k22) = 2;
      h.at(c.l1, c.k12) = 0;
      h.at(c.l2, c.k21) = 0;
      ++applied;
      continue;
    }
    return applied;
  }
}

// ---------------------------------------------------------------------------

inline constexpr double kMagicX1 = 0.2744;
inline constexpr double kMagicX2 = 0.15877;

/// Reweights types whose thirds sum to exactly 1 according to the pattern of
/// (edge weight, offline-node total) pairs. Unlisted patterns keep h.
inline EdgeMap<double> second_modification(const TypeGraph& tg, const EdgeMap<int>& h) {
  std::vector<int> total(static_cast<std::size_t>(tg.right_count), 0);
  for (int l = 0; l < tg.left_count; ++l) {
    const auto& row = tg.adj[static_cast<std::size_t>(l)];
    for (std::size_t k = 0; k < row.size(); ++k) total[static_cast<std::size_t>(row[k])] += h.at(l, k);
  }
  std::vector<int> thick_at(static_cast<std::size_t>(tg.right_count), 0);
  for (int l = 0; l < tg.left_count; ++l) {
    const auto& row = tg.adj[static_cast<std::size_t>(l)];
    for (std::size_t k = 0; k < row.size(); ++k)
      if (h.at(l, k) == 2) ++thick_at[static_cast<std::size_t>(row[k])];
  }

  EdgeMap<double> out(tg, 0.0);
  for (int l = 0; l < tg.left_count; ++l) {
    const auto& row = tg.adj[static_cast<std::size_t>(l)];
    int sum = 0;
    std::vector<std::size_t> pos;
    for (std::size_t k = 0; k < row.size(); ++k) {
      out.at(l, k) = h.at(l, k) / 3.0;
      sum += h.at(l, k);
      if (h.at(l, k) > 0) pos.push_back(k);
    }
    if (sum != 3) continue;
    auto T = [&](std::size_t k) { return total[static_cast<std::size_t>(row[k])]; };

    if (pos.size() == 2) {
      std::size_t thin = pos[0], thick = pos[1];
      if (h.at(l, thin) == 2) std::swap(thin, thick);
      double v_thin = -1.0;
      const int tt = T(thin), tk = T(thick);
      if (tt == 1 && tk == 3) v_thin = 0.1;
      else if (tt == 2 && tk == 3) v_thin = 0.15;
      else if (tt == 3 && tk == 2) v_thin = 0.4;
      else if (tt == 1 && tk == 2) v_thin = 0.25;
      else if (tt == 2 && tk == 2) v_thin = 0.3;
      else if (tt == 3 && tk == 3) v_thin = thick_at[static_cast<std::size_t>(row[thin])] > 0 ? kMagicX1 : kMagicX2;
      if (v_thin >= 0.0) {
        out.at(l, thin) = v_thin;
        out.at(l, thick) = 1.0 - v_thin;
      }
    } else if (pos.size() == 3) {
      std::sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) { return T(a) < T(b); });
      const int a = T(pos[0]), b = T(pos[1]), c = T(pos[2]);
      double w[3] = {-1.0, -1.0, -1.0};
      if (a == 1 && b == 3 && c == 3) w[0] = 0.1, w[1] = 0.45, w[2] = 0.45;
      else if (a == 2 && b == 3 && c == 3) w[0] = 0.2, w[1] = 0.4, w[2] = 0.4;
      else if (a == 1 && b == 2 && c == 3) w[0] = 0.15, w[1] = 0.2, w[2] = 0.65;
      else if (a == 1 && b == 1 && c == 3) w[0] = 0.1, w[1] = 0.1, w[2] = 0.8;
      else if (a == 2 && b == 2 && c == 3) w[0] = 0.25, w[1] = 0.25, w[2] = 0.5;
      if (w[0] >= 0.0)
        for (int i = 0; i < 3; ++i) out.at(l, pos[static_cast<std::size_t>(i)]) = w[i];
    }
  }
  return out;
}

/// Lists over the positive-h' neighborhood (no dummy). Two neighbors: order
/// (a, b) with probability h'_a / (h'_a + h'_b). Three: order (i, j, k) with
/// weight h'_i h'_j / (h'_j + h'_k), normalized.
inline ListDistribution brubach_distributions(const TypeGraph& tg, const EdgeMap<double>& hp) {
  ListDistribution d(static_cast<std::size_t>(tg.left_count));
  for (int l = 0; l < tg.left_count; ++l) {
    const auto& row = tg.adj[static_cast<std::size_t>(l)];
    std::vector<int> who;
    std::vector<double> w;
    for (std::size_t k = 0; k < row.size(); ++k)
      if (hp.at(l, k) > 1e-12) {
        who.push_back(row[k]);
        w.push_back(hp.at(l, k));
      }
    auto& out = d[static_cast<std::size_t>(l)];
    switch (who.size()) {
      case 0:
        break;
      case 1:
        out.push_back({{who[0]}, 1.0});
        break;
      case 2:
        out.push_back({{who[0], who[1]}, w[0] / (w[0] + w[1])});
        out.push_back({{who[1], who[0]}, w[1] / (w[0] + w[1])});
        break;
      case 3: {
        double norm = 0.0;
        for (const auto& p : detail::kPermutations3) {
          const double x = w[static_cast<std::size_t>(p[0])] * w[static_cast<std::size_t>(p[1])] /
                           (w[static_cast<std::size_t>(p[1])] + w[static_cast<std::size_t>(p[2])]);
          out.push_back({{who[static_cast<std::size_t>(p[0])], who[static_cast<std::size_t>(p[1])],
                          who[static_cast<std::size_t>(p[2])]},
                         x});
          norm += x;
        }
        for (auto& entry : out) entry.prob /= norm;
        break;
      }
      default:
        throw std::invalid_argument("brubach_distributions: type " + std::to_string(l) + " has more than 3 neighbors");
    }
  }
  return d;
}

/// Full preprocessing pipeline.
inline ListDistribution brubach_preprocess(const TypeGraph& tg, Rng& rng,
                                           std::int64_t row_limit = kDefaultLpRowLimit) {
  const auto f = brubach_lp(tg, row_limit);
  EdgeMap<double> y(tg, 0.0);
  for (int l = 0; l < tg.left_count; ++l)
    for (std::size_t k = 0; k < y.row(l).size(); ++k) y.at(l, k) = 3.0 * f.at(l, k);
  auto h = gandhi_round(tg, y, rng);
  break_cycles(tg, h);
  return brubach_distributions(tg, second_modification(tg, h));
}

}  // namespace iidmatch
