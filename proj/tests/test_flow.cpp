#include <gtest/gtest.h>

#include "iidmatch/blue_red.hpp"
#include "iidmatch/flow.hpp"
#include "oracles.hpp"

using namespace iidmatch;

namespace {

struct RandomNet {
  FlowNetwork net;
  std::vector<oracle::Arc> arcs;
};

RandomNet random_network(Rng& rng) {
  const int nodes = 2 + rng.index(7);  // 2..8
  RandomNet out{FlowNetwork(nodes, 0, nodes - 1), {}};
  const int arcs = rng.index(3 * nodes + 1);
  for (int k = 0; k < arcs; ++k) {
    const int u = rng.index(nodes), v = rng.index(nodes);
    if (u == v) continue;
    const int cap = rng.index(4);
    out.net.add_arc(u, v, cap);
    out.arcs.push_back({u, v, cap});
  }
  return out;
}

}  // namespace

TEST(EdmondsKarp, MatchesCutEnumerationOnSmallNetworks) {
  Rng rng(11);
  for (int it = 0; it < 200; ++it) {
    const auto rn = random_network(rng);
    const auto f = edmonds_karp(rn.net);
    ASSERT_FALSE(validate_flow(rn.net, f)) << *validate_flow(rn.net, f);
    ASSERT_EQ(f.value, oracle::min_cut_value(rn.net.node_count(), 0, rn.net.node_count() - 1, rn.arcs)) << "network " << it;
  }
}

TEST(Dinic, AgreesWithEdmondsKarp) {
  Rng rng(12);
  for (int it = 0; it < 200; ++it) {
    const auto rn = random_network(rng);
    const auto f = dinic(rn.net);
    ASSERT_FALSE(validate_flow(rn.net, f));
    ASSERT_EQ(f.value, edmonds_karp(rn.net).value);
  }
}

TEST(EdmondsKarp, ZeroWhenNoPath) {
  FlowNetwork net(4, 0, 3);
  net.add_arc(0, 1, 5);
  net.add_arc(2, 3, 5);
  EXPECT_EQ(edmonds_karp(net).value, 0);
}

TEST(EdmondsKarp, RejectsBadArcs) {
  FlowNetwork net(3, 0, 2);
  EXPECT_THROW(net.add_arc(0, 5, 1), std::out_of_range);
  EXPECT_THROW(net.add_arc(0, 1, -1), std::invalid_argument);
  EXPECT_THROW(FlowNetwork(2, 0, 0), std::invalid_argument);
}

TEST(MinCut, BottleneckSplitsAtTheNarrowArc) {
  FlowNetwork net(4, 0, 3);
  net.add_arc(0, 1, 5);
  net.add_arc(1, 2, 1);
  net.add_arc(2, 3, 5);
  const auto f = edmonds_karp(net);
  EXPECT_EQ(f.value, 1);
  const auto side = min_cut_source_side(net, f);
  EXPECT_EQ(side, (std::vector<bool>{true, true, false, false}));
}

TEST(MinCut, ResidualSideIsTheSmallestMinimumCut) {
  Rng rng(13);
  for (int it = 0; it < 200; ++it) {
    const auto rn = random_network(rng);
    const int n = rn.net.node_count();
    const auto f = edmonds_karp(rn.net);
    const auto side = min_cut_source_side(rn.net, f);
    EXPECT_EQ(cut_capacity(rn.net, side), f.value);
    for (const auto& other : oracle::min_cut_sides(n, 0, n - 1, rn.arcs))
      for (int v = 0; v < n; ++v)
        if (side[static_cast<std::size_t>(v)]) {
          ASSERT_TRUE(other[static_cast<std::size_t>(v)]);
        }
  }
}

TEST(MinCut, FeldmanNetworkOfPerfectMatching) {
  for (int n = 1; n <= 4; ++n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, i);
    const auto tg = TypeGraph::from_edges(n, n, e, n);
    const auto fn = build_feldman_network(tg);
    const auto f = edmonds_karp(fn.net);
    EXPECT_EQ(f.value, n);
    std::vector<oracle::Arc> arcs;
    for (int k = 0; k < fn.net.arc_count(); ++k) arcs.push_back({fn.net.from(k), fn.net.to(k), fn.net.capacity(k)});
    const auto sides = oracle::min_cut_sides(fn.net.node_count(), fn.net.source(), fn.net.sink(), arcs);
    const auto side = min_cut_source_side(fn.net, f);
    EXPECT_NE(std::find(sides.begin(), sides.end(), side), sides.end());
  }
}

TEST(MaxMatching, MatchesBruteForce) {
  Rng rng(21);
  for (int it = 0; it < 500; ++it) {
    const int L = 1 + rng.index(6), R = 1 + rng.index(6);
    const auto tg = oracle::random_type_graph(L, R, rng.uniform(), rng);
    ASSERT_EQ(static_cast<int>(max_matching(tg.adj, R).size()), oracle::brute_matching(tg.adj, R));
  }
}

TEST(MaxMatching, WarmStartKeepsSizeOptimal) {
  Rng rng(22);
  for (int it = 0; it < 200; ++it) {
    const auto tg = oracle::random_type_graph(8, 8, 0.3, rng, 10);
    const auto inst = sample_instance(tg, rng.next());
    const auto warm = simple_greedy(inst);
    const auto m = max_matching(inst, &warm);
    ASSERT_FALSE(audit_matching(m, inst));
    std::vector<std::vector<int>> adj;
    for (std::size_t i = 0; i < inst.size(); ++i) adj.push_back(inst.neighbors_of_arrival(i));
    ASSERT_EQ(static_cast<int>(m.size()), oracle::brute_matching(adj, tg.right_count));
  }
}

TEST(MaxMatching, PerfectMatchingGraph) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < 5; ++i) e.emplace_back(i, (i + 2) % 5);
  const auto tg = TypeGraph::from_edges(5, 5, e, 5);
  EXPECT_EQ(max_matching(tg.adj, 5).size(), 5u);
}

TEST(MaxMatching, RejectsWarmStartOnNonEdge) {
  const auto tg = TypeGraph::from_edges(2, 2, {{0, 0}, {1, 1}}, 2);
  InstanceStream inst{&tg, {0, 1}, 0};
  Matching bad(2, 2);
  bad.add(0, 1);
  EXPECT_THROW(max_matching(inst, &bad), std::invalid_argument);
}
