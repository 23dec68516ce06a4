#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <set>
#include <vector>

#include "oracles.hpp"
#include "tempo/rng.hpp"
#include "tempo/si.hpp"
#include "tempo/temporal_network.hpp"
#include "tempo/walk_metrics.hpp"

using namespace tempo;

namespace {

TemporalNetwork e1() { return make_temporal_network(3, {{0, 1, 1}, {1, 2, 2}}); }

TemporalNetwork e2() { return make_temporal_network(3, {{0, 1, 1}, {0, 1, 2}, {1, 2, 3}}); }

int component_size_minus_one(const TemporalNetwork& net, int32_t seed, int64_t t0, int64_t tau) {
  const auto agg = aggregate(net, t0 + 1, t0 + tau);
  std::set<int32_t> comp{seed};
  std::vector<int32_t> queue{seed};
  while (!queue.empty()) {
    const int32_t u = queue.back();
    queue.pop_back();
    for (const auto& [v, w] : agg.adj[static_cast<size_t>(u)]) {
      if (comp.insert(v).second) queue.push_back(v);
    }
  }
  return static_cast<int>(comp.size()) - 1;
}

}  // namespace

TEST_CASE("deterministic spreading follows time-respecting chains") {
  Rng rng(7);
  CHECK(simulate_si(e1(), 0, 1.0, 0, 2, rng) == 2);  // 1 at t=1, 2 at t=2
  CHECK(simulate_si(e1(), 2, 1.0, 0, 2, rng) == 1);  // 1 at t=2; 0 unreachable afterwards
  CHECK(simulate_si(e1(), 1, 1.0, 0, 2, rng) == 2);
}

TEST_CASE("a node infected in a step transmits only from the next step") {
  // Chain 0-1 and 1-2 at the same timestep: node 2 must stay susceptible.
  const auto net = make_temporal_network(3, {{0, 1, 1}, {1, 2, 1}});
  Rng rng(3);
  CHECK(simulate_si(net, 0, 1.0, 0, 1, rng) == 1);
}

TEST_CASE("seeding time cuts off earlier contacts") {
  Rng rng(1);
  // Window (1, 2]: only the t=2 contact remains.
  CHECK(simulate_si(e1(), 0, 1.0, 1, 1, rng) == 0);
  CHECK(simulate_si(e1(), 1, 1.0, 1, 1, rng) == 1);
}

TEST_CASE("simulation validates its arguments") {
  Rng rng(1);
  CHECK_THROWS_AS(simulate_si(e1(), 5, 1.0, 0, 2, rng), std::invalid_argument);
  CHECK_THROWS_AS(simulate_si(e1(), 0, 0.0, 0, 2, rng), std::invalid_argument);
  CHECK_THROWS_AS(simulate_si(e1(), 0, 1.5, 0, 2, rng), std::invalid_argument);
  CHECK_THROWS_AS(simulate_si(e1(), 0, 1.0, 1, 2, rng), std::invalid_argument);
  SiConfig cfg;
  cfg.beta = 0.5;
  cfg.t0 = 0;
  cfg.tau = 2;
  cfg.runs = 0;
  CHECK_THROWS_AS(influence_all(e1(), cfg), std::invalid_argument);
}

TEST_CASE("exhaustive enumeration matches the closed form on the worked example") {
  // Seed 0 infects node 1 iff either of its two contacts fires; node 2 then
  // needs the final contact: mean = (1 - (1-b)^2) * (1 + b).
  for (double beta : {0.1, 0.25, 0.5, 0.9}) {
    const double closed = (1.0 - (1.0 - beta) * (1.0 - beta)) * (1.0 + beta);
    CHECK(tempo::testing::si_exact_mean(e2(), 0, beta, 0, 3) ==
          doctest::Approx(closed).epsilon(1e-12));
  }
  CHECK(tempo::testing::si_exact_mean(e2(), 0, 0.5, 0, 3) == doctest::Approx(1.125));
}

TEST_CASE("Monte-Carlo means converge to the enumerated value") {
  SiConfig cfg;
  cfg.beta = 0.5;
  cfg.t0 = 0;
  cfg.tau = 3;
  cfg.runs = 20000;
  cfg.master_seed = 77;
  const auto iv = influence_all(e2(), cfg);
  const double exact = tempo::testing::si_exact_mean(e2(), 0, 0.5, 0, 3);
  const double se = iv.stddev[0] / std::sqrt(static_cast<double>(cfg.runs));
  CHECK(std::abs(iv.mean[0] - exact) <= 3.0 * se);
}

TEST_CASE("beta one runs once and reproduces the deterministic outbreaks") {
  SiConfig cfg;
  cfg.beta = 1.0;
  cfg.t0 = 0;
  cfg.tau = 2;
  cfg.runs = 500;
  const auto iv = influence_all(e1(), cfg);
  CHECK(iv.runs == 1);
  CHECK(iv.mean == std::vector<double>{2.0, 2.0, 1.0});
  CHECK(iv.stddev == std::vector<double>{0.0, 0.0, 0.0});
}

TEST_CASE("deterministic spreading equals temporal reachability") {
  for (uint64_t i = 0; i < 40; ++i) {
    const auto net = tempo::testing::corpus_network(i);
    Rng rng(i);
    for (int32_t seed = 0; seed < net.n_nodes; ++seed) {
      const int outbreak = simulate_si(net, seed, 1.0, 0, net.horizon, rng);
      const auto pnet = extract_partial(net, seed, 0, net.horizon, net.n_nodes);
      CHECK(outbreak == temporal_reachability(earliest_arrival(pnet)));
    }
  }
}

TEST_CASE("outbreaks stay inside the seed's window component") {
  for (uint64_t i = 0; i < 25; ++i) {
    const auto net = tempo::testing::corpus_network(i);
    const int64_t tau = net.horizon;
    for (int32_t seed = 0; seed < net.n_nodes; ++seed) {
      Rng rng = Rng::stream(3, stream_role::kSi, i, static_cast<uint64_t>(seed));
      const int outbreak = simulate_si(net, seed, 0.7, 0, tau, rng);
      CHECK(outbreak <= component_size_minus_one(net, seed, 0, tau));
    }
  }
}

TEST_CASE("shared draw tables make outbreaks monotone in beta") {
  for (uint64_t i = 0; i < 25; ++i) {
    const auto net = tempo::testing::corpus_network(i);
    const auto window = net.window(1, net.horizon);
    Rng rng = Rng::stream(11, stream_role::kSi, i);
    std::vector<double> draws(window.size());
    for (double& d : draws) d = rng.next_double();
    for (int32_t seed = 0; seed < net.n_nodes; ++seed) {
      int prev = 0;
      for (double beta : {0.05, 0.2, 0.5, 0.8, 1.0}) {
        const int size = simulate_si_with_draws(net, seed, beta, 0, net.horizon, draws);
        CHECK(size >= prev);
        prev = size;
      }
    }
  }
}

TEST_CASE("with-draws variant rejects short tables") {
  const auto net = e2();
  std::vector<double> draws(2);
  CHECK_THROWS_AS(simulate_si_with_draws(net, 0, 0.5, 0, 3, draws), std::invalid_argument);
}

TEST_CASE("influence vectors are reproducible and stream-keyed") {
  const auto net = tempo::testing::corpus_network(5);
  SiConfig cfg;
  cfg.beta = 0.3;
  cfg.t0 = 0;
  cfg.tau = net.horizon;
  cfg.runs = 50;
  cfg.master_seed = 42;
  const auto a = influence_all(net, cfg);
  const auto b = influence_all(net, cfg);
  CHECK(a.mean == b.mean);
  CHECK(a.stddev == b.stddev);
  cfg.master_seed = 43;
  const auto c = influence_all(net, cfg);
  CHECK(a.mean != c.mean);
}

TEST_CASE("influence CSV round-trips exactly") {
  const auto net = tempo::testing::corpus_network(8);
  SiConfig cfg;
  cfg.beta = 0.25;
  cfg.t0 = 1;
  cfg.tau = net.horizon - 1;
  cfg.runs = 30;
  const auto iv = influence_all(net, cfg);
  const auto path =
      (std::filesystem::temp_directory_path() / "tempo_influence_roundtrip.csv").string();
  write_influence_csv(path, iv);
  const auto back = read_influence_csv(path);
  CHECK(back.mean == iv.mean);
  CHECK(back.stddev == iv.stddev);
  CHECK(back.runs == iv.runs);
  CHECK(back.beta == iv.beta);
  CHECK(back.t0 == iv.t0);
  CHECK(back.tau == iv.tau);
  std::filesystem::remove(path);
}

TEST_CASE("small-beta influence approaches beta times the seed contact count") {
  SiConfig cfg;
  cfg.beta = 0.001;
  cfg.t0 = 0;
  cfg.tau = 3;
  cfg.runs = 20000;
  cfg.master_seed = 5;
  const auto iv = influence_all(e2(), cfg);
  const double contacts_of_seed[3] = {2.0, 3.0, 1.0};
  for (int32_t seed = 0; seed < 3; ++seed) {
    const double first_order = cfg.beta * contacts_of_seed[seed];
    const double se = iv.stddev[static_cast<size_t>(seed)] / std::sqrt(20000.0);
    CHECK(std::abs(iv.mean[static_cast<size_t>(seed)] - first_order) <= 3.0 * se + 1e-12);
  }
}
