#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "tempo/classic_metrics.hpp"
#include "tempo/temporal_network.hpp"

using namespace tempo;

namespace {

TemporalNetwork e1() { return make_temporal_network(3, {{0, 1, 1}, {1, 2, 2}}); }

StaticGraph path3() {
  const auto net = make_temporal_network(3, {{0, 1, 1}, {1, 2, 1}});
  return make_static(aggregate(net, 1, 1));
}

StaticGraph k3() {
  const auto net = make_temporal_network(3, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}});
  return make_static(aggregate(net, 1, 1));
}

StaticGraph k4() {
  std::vector<Contact> contacts;
  for (int32_t u = 0; u < 4; ++u)
    for (int32_t v = u + 1; v < 4; ++v) contacts.push_back({u, v, 1});
  const auto net = make_temporal_network(4, contacts);
  return make_static(aggregate(net, 1, 1));
}

StaticGraph star4() {  // center 0, leaves 1..3
  const auto net = make_temporal_network(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}});
  return make_static(aggregate(net, 1, 1));
}

}  // namespace

TEST_CASE("betweenness counts ordered intermediate pairs") {
  const auto b = betweenness(path3());
  CHECK(b == std::vector<double>{0.0, 2.0, 0.0});

  const auto bk4 = betweenness(k4());
  for (double v : bk4) CHECK(v == 0.0);

  const auto bstar = betweenness(star4());
  CHECK(bstar[0] == 6.0);  // 6 ordered leaf pairs
  CHECK(bstar[1] == 0.0);
}

TEST_CASE("betweenness splits over equal-length paths") {
  // 4-cycle: two shortest paths between opposite corners, half credit each.
  const auto net = make_temporal_network(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1}});
  const auto b = betweenness(make_static(aggregate(net, 1, 1)));
  for (double v : b) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("betweenness of degree-one nodes is zero") {
  for (uint64_t i = 0; i < 20; ++i) {
    const auto net = tempo::testing::corpus_network(i);
    const auto g = make_static(aggregate(net, 1, net.horizon));
    const auto b = betweenness(g);
    for (int32_t v = 0; v < g.n_nodes; ++v) {
      if (g.adj[static_cast<size_t>(v)].size() == 1) CHECK(b[static_cast<size_t>(v)] == 0.0);
    }
  }
}

TEST_CASE("closeness sums reciprocal hop distances") {
  const auto c = closeness(path3());
  CHECK(c[0] == doctest::Approx(1.5));
  CHECK(c[1] == doctest::Approx(2.0));
  CHECK(c[2] == doctest::Approx(1.5));

  for (double v : closeness(k3())) CHECK(v == doctest::Approx(2.0));

  // isolated node contributes and receives nothing
  const auto net = make_temporal_network(3, {{0, 1, 1}});
  const auto c2 = closeness(make_static(aggregate(net, 1, 1)));
  CHECK(c2[2] == 0.0);
  CHECK(c2[0] == doctest::Approx(1.0));
}

TEST_CASE("closeness on complete graphs equals N-1") {
  for (double v : closeness(k4())) CHECK(v == doctest::Approx(3.0));
}

TEST_CASE("eigenvector centrality matches closed forms") {
  const auto ek3 = eigenvector_centrality(k3());
  for (double v : ek3) CHECK(v == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-9));

  const auto estar = eigenvector_centrality(star4());
  CHECK(estar[0] / estar[1] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
  CHECK(estar[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
  CHECK(estar[1] == doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-9));

  double norm = 0.0;
  for (double v : estar) norm += v * v;
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("eigenvector centrality restricts to the largest component") {
  // K3 on {0,1,2} plus an edge {3,4}: the smaller component scores zero.
  const auto net = make_temporal_network(
      5, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}, {3, 4, 1}});
  const auto e = eigenvector_centrality(make_static(aggregate(net, 1, 1)));
  CHECK(e[0] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-9));
  CHECK(e[3] == 0.0);
  CHECK(e[4] == 0.0);
}

TEST_CASE("eigenvector centrality rejects edgeless graphs") {
  const auto net = make_temporal_network(2, {{0, 1, 1}});
  auto g = make_static(aggregate(net, 2, 1));  // empty window
  CHECK_THROWS_AS(eigenvector_centrality(g), std::invalid_argument);
}

TEST_CASE("pagerank matches symmetry fixed points") {
  for (double v : pagerank(k3())) CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-9));

  const auto two = make_temporal_network(2, {{0, 1, 1}});
  for (double v : pagerank(make_static(aggregate(two, 1, 1)))) {
    CHECK(v == doctest::Approx(0.5).epsilon(1e-9));
  }
}

TEST_CASE("pagerank on the path matches the hand-solved linear system") {
  // p1 = (1-g)/3 + g(p0 + p2), p0 = p2 = (1-g)/3 + g*p1/2, sum = 1
  // => p1 = (1 + 2g) / (3 (1 + g)).
  const double gamma = 0.85;
  const auto p = pagerank(path3(), gamma);
  const double center = (1.0 + 2.0 * gamma) / (3.0 * (1.0 + gamma));
  CHECK(p[1] == doctest::Approx(center).epsilon(1e-10));
  CHECK(p[0] == doctest::Approx((1.0 - center) / 2.0).epsilon(1e-10));
  CHECK(p[2] == doctest::Approx(p[0]).epsilon(1e-12));

  const auto oracle = tempo::testing::pagerank_dense_oracle(path3(), gamma);
  for (size_t i = 0; i < p.size(); ++i) CHECK(p[i] == doctest::Approx(oracle[i]).epsilon(1e-10));
}

TEST_CASE("pagerank agrees with the dense solver on the corpus") {
  for (uint64_t i = 0; i < 30; ++i) {
    const auto net = tempo::testing::corpus_network(i);
    const auto g = make_static(aggregate(net, 1, net.horizon));
    const auto fast = pagerank(g);
    const auto slow = tempo::testing::pagerank_dense_oracle(g, 0.85);
    double sum = 0.0;
    for (size_t v = 0; v < fast.size(); ++v) {
      CHECK(fast[v] == doctest::Approx(slow[v]).epsilon(1e-8));
      sum += fast[v];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("pagerank treats isolated nodes uniformly") {
  // Edge {0,1} plus isolated node 2.
  const auto net = make_temporal_network(3, {{0, 1, 1}});
  const auto g = make_static(aggregate(net, 1, 1));
  const auto p = pagerank(g);
  const auto oracle = tempo::testing::pagerank_dense_oracle(g, 0.85);
  for (size_t i = 0; i < p.size(); ++i) CHECK(p[i] == doctest::Approx(oracle[i]).epsilon(1e-10));
  CHECK(p[0] == doctest::Approx(p[1]).epsilon(1e-12));
  CHECK(p[2] < p[0]);
  CHECK(p[0] + p[1] + p[2] == doctest::Approx(1.0).epsilon(1e-10));

  // all-isolated graph: uniform by construction
  const auto lonely = make_static(aggregate(net, 2, 1));
  for (double v : pagerank(lonely)) CHECK(v == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("temporal closeness uses hop-minimal time-respecting paths") {
  const auto net = e1();
  CHECK(temporal_closeness(net, 0, 0, 2) == doctest::Approx(1.5));
  CHECK(temporal_closeness(net, 2, 0, 2) == doctest::Approx(1.0));
  CHECK(temporal_closeness(net, 0, 2, 0) == 0.0);  // empty window

  // A later direct contact beats an earlier two-hop chain on hop count.
  const auto shortcut = make_temporal_network(3, {{0, 1, 1}, {1, 2, 2}, {0, 2, 3}});
  CHECK(temporal_closeness(shortcut, 0, 0, 3) == doctest::Approx(2.0));
}

TEST_CASE("temporal closeness is lossless through a full ego view") {
  for (uint64_t i = 0; i < 25; ++i) {
    const auto net = tempo::testing::corpus_network(i);
    for (int32_t root = 0; root < net.n_nodes; ++root) {
      const auto pnet = extract_partial(net, root, 0, net.horizon, net.n_nodes);
      CHECK(temporal_closeness(pnet) ==
            doctest::Approx(temporal_closeness(net, root, 0, net.horizon)).epsilon(1e-12));
    }
  }
}

TEST_CASE("temporal hopcounts cap the number of layers") {
  // Ring passed in time order: reaching the far side needs N-1 hops at most.
  const auto net = make_temporal_network(4, {{0, 1, 1}, {1, 2, 2}, {2, 3, 3}});
  const auto th = temporal_hopcounts(net.window(1, 3), 4, 0, 0, 3);
  CHECK(th[1] == 1);
  CHECK(th[2] == 2);
  CHECK(th[3] == 3);
  const auto capped = temporal_hopcounts(net.window(1, 3), 4, 0, 0, 2);
  CHECK(capped[3] == kUnreachableHops);
}

TEST_CASE("snapshot averages evaluate each step separately") {
  const auto net = e1();
  const auto c = snapshot_average(SnapshotMetric::kCloseness, net, 1, 2);
  CHECK(c[0] == doctest::Approx(0.5));
  CHECK(c[1] == doctest::Approx(1.0));
  CHECK(c[2] == doctest::Approx(0.5));

  // single-step window equals the static metric of that snapshot
  const auto single = snapshot_average(SnapshotMetric::kCloseness, net, 1, 1);
  const auto direct = closeness(snapshot_graph(net, 1));
  for (size_t i = 0; i < single.size(); ++i) CHECK(single[i] == doctest::Approx(direct[i]));
}

TEST_CASE("snapshot pagerank averages the per-step fixed points") {
  const auto net = e1();
  const auto avg = snapshot_average(SnapshotMetric::kPagerank, net, 1, 2);
  const auto s1 = tempo::testing::pagerank_dense_oracle(snapshot_graph(net, 1), 0.85);
  const auto s2 = tempo::testing::pagerank_dense_oracle(snapshot_graph(net, 2), 0.85);
  for (size_t i = 0; i < avg.size(); ++i) {
    CHECK(avg[i] == doctest::Approx(0.5 * (s1[i] + s2[i])).epsilon(1e-9));
  }
}

TEST_CASE("snapshot eigenvector treats edgeless steps as zero vectors") {
  const auto net = make_temporal_network(2, {{0, 1, 1}, {0, 1, 3}});
  // step 2 has no contacts: average = (x + 0 + x) / 3 with x = 1/sqrt(2)
  const auto avg = snapshot_average(SnapshotMetric::kEigenvector, net, 1, 3);
  CHECK(avg[0] == doctest::Approx(2.0 / (3.0 * std::sqrt(2.0))).epsilon(1e-9));
  CHECK(avg[1] == doctest::Approx(avg[0]).epsilon(1e-12));
}

TEST_CASE("snapshot averages over an ego view use member-local graphs") {
  const auto net = e1();
  const auto pnet = extract_partial(net, 0, 0, 2, 2);
  REQUIRE(pnet.members.size() == 3);
  const auto avg = snapshot_average(SnapshotMetric::kCloseness, pnet);
  CHECK(avg[0] == doctest::Approx(0.5));
  CHECK(avg[1] == doctest::Approx(1.0));
  CHECK(avg[2] == doctest::Approx(0.5));
}

TEST_CASE("derivation mode tokens round-trip") {
  for (DerivationMode mode : {DerivationMode::kFullAggregated, DerivationMode::kFullTemporal,
                              DerivationMode::kPartialAggregated, DerivationMode::kPartialTemporal}) {
    CHECK(mode_from_string(to_string(mode)) == mode);
  }
  CHECK(to_string(DerivationMode::kFullAggregated) == "full-aggregated");
  CHECK(to_string(DerivationMode::kPartialTemporal) == "partial-temporal");
  CHECK_THROWS_AS(mode_from_string("sideways"), std::invalid_argument);
}
