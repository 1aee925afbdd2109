#pragma once

// Core types shared by every module: the known type graph, a realized i.i.d.
// arrival sequence, partial matchings and offline permutations.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "iidmatch/rng.hpp"

namespace iidmatch {

inline constexpr int kNone = -1;

/// Known i.i.d. side information: types (left) with their offline neighbors
/// (right), and the number of i.i.d. uniform draws m.
struct TypeGraph {
  int left_count = 0;
  int right_count = 0;
  std::vector<std::vector<int>> adj;  // per type, strictly increasing
  std::int64_t m = 0;

  std::size_t edge_count() const noexcept {
    std::size_t e = 0;
    for (const auto& row : adj) e += row.size();
    return e;
  }

  bool has_edge(int type, int r) const noexcept {
    const auto& row = adj[static_cast<std::size_t>(type)];
    return std::binary_search(row.begin(), row.end(), r);
  }

  /// Offline-side incidence: for each r, the types adjacent to it (ascending).
  std::vector<std::vector<int>> right_adjacency() const {
    std::vector<std::vector<int>> radj(static_cast<std::size_t>(right_count));
    for (int l = 0; l < left_count; ++l)
      for (int r : adj[static_cast<std::size_t>(l)]) radj[static_cast<std::size_t>(r)].push_back(l);
    return radj;
  }

  /// Builds a graph from an arbitrary edge list (duplicates merged).
  static TypeGraph from_edges(int left_count, int right_count,
                              const std::vector<std::pair<int, int>>& edges, std::int64_t m) {
    TypeGraph tg;
    tg.left_count = left_count;
    tg.right_count = right_count;
    tg.m = m;
    tg.adj.assign(static_cast<std::size_t>(left_count), {});
    for (auto [l, r] : edges) {
      if (l < 0 || l >= left_count || r < 0 || r >= right_count)
        throw std::out_of_range("edge (" + std::to_string(l) + ", " + std::to_string(r) +
                                ") outside the declared sides");
      tg.adj[static_cast<std::size_t>(l)].push_back(r);
    }
    for (auto& row : tg.adj) {
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return tg;
  }
};

/// Returns the first invariant violation, or nullopt when tg is valid.
inline std::optional<std::string> validate_type_graph(const TypeGraph& tg) {
  if (tg.left_count < 0 || tg.right_count < 0) return "negative side size";
  if (tg.m < 0) return "negative arrival count m=" + std::to_string(tg.m);
  if (tg.adj.size() != static_cast<std::size_t>(tg.left_count))
    return "adjacency has " + std::to_string(tg.adj.size()) + " rows, expected " +
           std::to_string(tg.left_count);
  for (int l = 0; l < tg.left_count; ++l) {
    const auto& row = tg.adj[static_cast<std::size_t>(l)];
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (row[k] < 0 || row[k] >= tg.right_count)
        return "type " + std::to_string(l) + ": neighbor " + std::to_string(row[k]) +
               " out of range [0, " + std::to_string(tg.right_count) + ")";
      if (k > 0 && row[k] == row[k - 1])
        return "type " + std::to_string(l) + ": duplicate neighbor " + std::to_string(row[k]);
      if (k > 0 && row[k] < row[k - 1])
        return "type " + std::to_string(l) + ": neighbors not sorted";
    }
  }
  if (tg.left_count == 0 && tg.m > 0) return "m > 0 with no types";
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Portable text format:
//   m <m> L <left_count> R <right_count>
//   <type>: <neighbor> <neighbor> ...

inline void write_type_graph(std::ostream& out, const TypeGraph& tg) {
  out << "m " << tg.m << " L " << tg.left_count << " R " << tg.right_count << '\n';
  for (int l = 0; l < tg.left_count; ++l) {
    out << l << ':';
    for (int r : tg.adj[static_cast<std::size_t>(l)]) out << ' ' << r;
    out << '\n';
  }
}

inline TypeGraph read_type_graph(std::istream& in) {
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& what) {
    throw std::runtime_error("type graph line " + std::to_string(lineno) + ": " + what);
  };
  TypeGraph tg;
  bool have_header = false;
  std::vector<bool> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!have_header) {
      std::istringstream hs(line);
      std::string km, kl, kr;
      if (!(hs >> km >> tg.m >> kl >> tg.left_count >> kr >> tg.right_count) || km != "m" ||
          kl != "L" || kr != "R")
        fail("expected header 'm <m> L <left> R <right>'");
      if (tg.left_count < 0 || tg.right_count < 0 || tg.m < 0) fail("negative size in header");
      tg.adj.assign(static_cast<std::size_t>(tg.left_count), {});
      seen.assign(static_cast<std::size_t>(tg.left_count), false);
      have_header = true;
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos) fail("missing ':'");
    int type = -1;
    {
      const char* b = line.data();
      const char* e = line.data() + colon;
      while (b < e && (*b == ' ' || *b == '\t')) ++b;
      auto [p, ec] = std::from_chars(b, e, type);
      if (ec != std::errc{} || p != e) fail("bad type index");
    }
    if (type < 0 || type >= tg.left_count) fail("type index out of range");
    if (seen[static_cast<std::size_t>(type)]) fail("type listed twice");
    seen[static_cast<std::size_t>(type)] = true;
    std::istringstream ns(line.substr(colon + 1));
    std::string tok;
    auto& row = tg.adj[static_cast<std::size_t>(type)];
    while (ns >> tok) {
      int r = 0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), r);
      if (ec != std::errc{} || p != tok.data() + tok.size()) fail("bad neighbor '" + tok + "'");
      row.push_back(r);
    }
  }
  if (!have_header) throw std::runtime_error("type graph: empty input");
  if (auto err = validate_type_graph(tg)) throw std::runtime_error("type graph: " + *err);
  return tg;
}

// ---------------------------------------------------------------------------

/// One realized arrival sequence. The graph must outlive the stream.
struct InstanceStream {
  const TypeGraph* graph = nullptr;
  std::vector<int> arrivals;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return arrivals.size(); }
  const std::vector<int>& neighbors_of_arrival(std::size_t i) const {
    return graph->adj[static_cast<std::size_t>(arrivals[i])];
  }
};

/// m i.i.d. uniform draws over the types of tg.
inline InstanceStream sample_instance(const TypeGraph& tg, std::uint64_t seed) {
  InstanceStream inst;
  inst.graph = &tg;
  inst.seed = seed;
  if (tg.m == 0) return inst;
  if (tg.left_count == 0) throw std::invalid_argument("sample_instance: m > 0 with no types");
  Rng rng(seed);
  inst.arrivals.resize(static_cast<std::size_t>(tg.m));
  for (auto& a : inst.arrivals) a = rng.index(tg.left_count);
  return inst;
}

/// Occurrence count of every type in the stream.
inline std::vector<int> type_counts(const InstanceStream& inst) {
  std::vector<int> z(static_cast<std::size_t>(inst.graph->left_count), 0);
  for (int a : inst.arrivals) ++z[static_cast<std::size_t>(a)];
  return z;
}

// ---------------------------------------------------------------------------

/// Partial matching between online arrivals and offline nodes with O(1)
/// status lookup on both sides.
class Matching {
 public:
  Matching() = default;
  Matching(std::size_t online_count, int right_count)
      : of_online_(online_count, kNone), of_right_(static_cast<std::size_t>(right_count), kNone) {}

  void add(int online, int right) {
    if (online < 0 || static_cast<std::size_t>(online) >= of_online_.size() || right < 0 ||
        static_cast<std::size_t>(right) >= of_right_.size())
      throw std::out_of_range("Matching::add: index out of range");
    if (of_online_[static_cast<std::size_t>(online)] != kNone)
      throw std::logic_error("Matching::add: arrival " + std::to_string(online) + " already matched");
    if (of_right_[static_cast<std::size_t>(right)] != kNone)
      throw std::logic_error("Matching::add: offline node " + std::to_string(right) +
                             " already matched");
    of_online_[static_cast<std::size_t>(online)] = right;
    of_right_[static_cast<std::size_t>(right)] = online;
    ++size_;
  }

  int right_of(int online) const { return of_online_[static_cast<std::size_t>(online)]; }
  int online_of(int right) const { return of_right_[static_cast<std::size_t>(right)]; }
  bool right_matched(int right) const { return of_right_[static_cast<std::size_t>(right)] != kNone; }
  bool online_matched(int online) const {
    return of_online_[static_cast<std::size_t>(online)] != kNone;
  }

  std::size_t size() const noexcept { return size_; }
  std::size_t online_count() const noexcept { return of_online_.size(); }
  int right_count() const noexcept { return static_cast<int>(of_right_.size()); }

  /// (online, right) pairs in online order.
  std::vector<std::pair<int, int>> pairs() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(size_);
    for (std::size_t i = 0; i < of_online_.size(); ++i)
      if (of_online_[i] != kNone) out.emplace_back(static_cast<int>(i), of_online_[i]);
    return out;
  }

  const std::vector<int>& match_of_online() const noexcept { return of_online_; }
  const std::vector<int>& match_of_right() const noexcept { return of_right_; }

 private:
  std::vector<int> of_online_;
  std::vector<int> of_right_;
  std::size_t size_ = 0;
};

inline std::size_t matching_size(const Matching& m) { return m.size(); }

/// Full-scan consistency check of a matching against its instance: both maps
/// agree, no index is used twice, and every pair is an edge.
inline std::optional<std::string> audit_matching(const Matching& mt, const InstanceStream& inst) {
  if (mt.online_count() != inst.size()) return "online count differs from instance length";
  if (mt.right_count() != inst.graph->right_count) return "right count differs from graph";
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < mt.online_count(); ++i) {
    const int r = mt.right_of(static_cast<int>(i));
    if (r == kNone) continue;
    ++pairs;
    if (mt.online_of(r) != static_cast<int>(i))
      return "maps disagree at arrival " + std::to_string(i);
    if (!inst.graph->has_edge(inst.arrivals[i], r))
      return "arrival " + std::to_string(i) + " matched to non-neighbor " + std::to_string(r);
  }
  std::size_t rights = 0;
  for (int r = 0; r < mt.right_count(); ++r) {
    const int i = mt.online_of(r);
    if (i == kNone) continue;
    ++rights;
    if (mt.right_of(i) != r) return "maps disagree at offline node " + std::to_string(r);
  }
  if (pairs != rights || pairs != mt.size()) return "size bookkeeping mismatch";
  return std::nullopt;
}

// ---------------------------------------------------------------------------

/// Bijection offline node -> rank. Lower rank is preferred.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(int n) {
    Permutation p;
    p.rank_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p.rank_[static_cast<std::size_t>(i)] = i;
    return p;
  }

  static Permutation uniform(int n, Rng& rng) {
    Permutation p = identity(n);
    shuffle(p.rank_.begin(), p.rank_.end(), rng);
    return p;
  }

  static Permutation from_ranks(std::vector<int> rank) {
    std::vector<bool> hit(rank.size(), false);
    for (int r : rank) {
      if (r < 0 || static_cast<std::size_t>(r) >= rank.size() || hit[static_cast<std::size_t>(r)])
        throw std::invalid_argument("Permutation: ranks are not a bijection");
      hit[static_cast<std::size_t>(r)] = true;
    }
    Permutation p;
    p.rank_ = std::move(rank);
    return p;
  }

  /// Nodes listed by increasing rank.
  static Permutation from_order(const std::vector<int>& order) {
    std::vector<int> rank(order.size(), kNone);
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      const int v = order[pos];
      if (v < 0 || static_cast<std::size_t>(v) >= order.size() || rank[static_cast<std::size_t>(v)] != kNone)
        throw std::invalid_argument("Permutation: order is not a bijection");
      rank[static_cast<std::size_t>(v)] = static_cast<int>(pos);
    }
    Permutation p;
    p.rank_ = std::move(rank);
    return p;
  }

  int rank(int node) const { return rank_[static_cast<std::size_t>(node)]; }
  int size() const noexcept { return static_cast<int>(rank_.size()); }
  const std::vector<int>& ranks() const noexcept { return rank_; }

  std::vector<int> order() const {
    std::vector<int> out(rank_.size());
    for (std::size_t v = 0; v < rank_.size(); ++v) out[static_cast<std::size_t>(rank_[v])] = static_cast<int>(v);
    return out;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> rank_;
};

}  // namespace iidmatch
