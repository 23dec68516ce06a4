// End-to-end checks of the release gate: each numbered requirement prints one
// pass/fail line together with its tolerance and measured margin, and the
// process exits nonzero if any of them fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tempo/classic_metrics.hpp"
#include "tempo/evaluation.hpp"
#include "tempo/rng.hpp"
#include "tempo/si.hpp"
#include "tempo/sweep.hpp"
#include "tempo/synthetic.hpp"
#include "tempo/temporal_network.hpp"
#include "tempo/walk_metrics.hpp"

using namespace tempo;

namespace {

constexpr int kCorpusSize = 500;

struct Outcome {
  bool ok = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* pattern, ...) {
  va_list args;
  va_start(args, pattern);
  char buf[512];
  std::vsnprintf(buf, sizeof(buf), pattern, args);
  va_end(args);
  return std::string(buf);
}

TemporalNetwork worked_example() {
  return make_temporal_network(3, {{0, 1, 1}, {0, 1, 2}, {1, 2, 3}});
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// 1. The walk census must reproduce exhaustive walk enumeration on 500 random
//    networks (<= 8 nodes, <= 25 contacts, hop limits 1..3), exactly, in
//    under a minute.
Outcome check_census_oracle() {
  const auto start = std::chrono::steady_clock::now();
  long censuses = 0;
  for (int i = 0; i < kCorpusSize; ++i) {
    const TemporalNetwork net = tempo::testing::corpus_network(static_cast<uint64_t>(i));
    for (int32_t m = 1; m <= 3; ++m) {
      for (int32_t root = 0; root < net.n_nodes; ++root) {
        const auto pnet = extract_partial(net, root, 0, net.horizon, m);
        const WalkCensus fast = walk_census(pnet);
        const WalkCensus slow = brute_force_walk_oracle(pnet);
        ++censuses;
        if (fast.counts != slow.counts) {
          return {false, fmt("census mismatch on network %d (root %d, m %d)", i, root, m)};
        }
      }
    }
  }
  const double secs = seconds_since(start);
  return {secs < 60.0,
          fmt("%ld censuses on %d networks identical; %.1f s (limit 60 s)", censuses,
              kCorpusSize, secs)};
}

// 2. Reachability never exceeds the walk count, which never exceeds the
//    aggregated walk count, for the plain and the time-discounted variants
//    (alpha in {0.5, 0.9, 1}); zero violations allowed (1e-9 slack on the
//    floating-point comparisons).
Outcome check_ordering_chains() {
  const double alphas[] = {0.5, 0.9, 1.0};
  long checks = 0;
  for (int i = 0; i < kCorpusSize; ++i) {
    const TemporalNetwork net = tempo::testing::corpus_network(static_cast<uint64_t>(i));
    const AggregatedNetwork agg = aggregate(net, 1, net.horizon);
    for (int32_t m = 1; m <= 3; ++m) {
      for (int32_t root = 0; root < net.n_nodes; ++root) {
        const auto pnet = extract_partial(net, root, 0, net.horizon, m);
        const WalkCensus census = walk_census(pnet);
        const EarliestArrival ea = earliest_arrival(pnet);
        const double d = weighted_degree_mass(agg, root, m);
        const double delta = temporal_degree_mass(census);
        const double z = static_cast<double>(temporal_reachability(ea));
        ++checks;
        if (!(z <= delta && delta <= d)) {
          return {false, fmt("count chain broken on network %d (root %d, m %d)", i, root, m)};
        }
        for (const double alpha : alphas) {
          const double zs = time_scaled_reachability(ea, alpha);
          const double ds = time_scaled_degree_mass(census, alpha);
          if (zs > ds + 1e-9 || ds > d + 1e-9) {
            return {false,
                    fmt("discounted chain broken on network %d (root %d, m %d, alpha %.2f)", i,
                        root, m, alpha)};
          }
        }
      }
    }
  }
  return {true, fmt("%ld root/hop combinations, zero violations (slack 1e-9)", checks)};
}

// 3. With certain transmission the outbreak equals the number of temporally
//    reachable nodes for every seed (exact), so the unbounded-hop reachability
//    score ranks seeds perfectly: Qk = 1 within 1e-12 wherever defined.
Outcome check_deterministic_equivalence() {
  int defined = 0;
  Rng rng(0);  // beta = 1 never consumes randomness
  for (int i = 0; i < kCorpusSize; ++i) {
    const TemporalNetwork net = tempo::testing::corpus_network(static_cast<uint64_t>(i));
    std::vector<double> predicted, actual;
    for (int32_t seed = 0; seed < net.n_nodes; ++seed) {
      const int outbreak = simulate_si(net, seed, 1.0, 0, net.horizon, rng);
      const auto pnet = extract_partial(net, seed, 0, net.horizon, net.n_nodes);
      const EarliestArrival ea = earliest_arrival(pnet);
      if (outbreak != temporal_reachability(ea)) {
        return {false, fmt("outbreak != reachability on network %d seed %d", i, seed)};
      }
      predicted.push_back(time_scaled_reachability(ea, 1.0));
      actual.push_back(static_cast<double>(outbreak));
    }
    try {
      const double tau = kendall_tau_b(predicted, actual).tau;
      ++defined;
      if (std::abs(tau - 1.0) > 1e-12) {
        return {false, fmt("Qk = %.17g != 1 on network %d", tau, i)};
      }
    } catch (const std::domain_error&) {
      // every seed reaches the same count; the correlation is undefined
    }
  }
  return {true, fmt("outbreaks exact on %d networks; Qk = 1 within 1e-12 on the %d networks "
                    "with a non-constant ranking",
                    kCorpusSize, defined)};
}

// 4. For weak transmission the mean outbreak approaches beta times the seed's
//    contact count; Monte-Carlo at beta = 0.001 with 1e5 runs must sit within
//    3 standard errors of that first-order value for every seed.
Outcome check_small_beta_law() {
  SiConfig cfg;
  cfg.beta = 0.001;
  cfg.t0 = 0;
  cfg.tau = 3;
  cfg.runs = 100000;
  cfg.master_seed = 2024;
  const InfluenceVector iv = influence_all(worked_example(), cfg);
  const double contacts[3] = {2.0, 3.0, 1.0};
  double worst = 0.0;
  for (int seed = 0; seed < 3; ++seed) {
    const double expected = cfg.beta * contacts[seed];
    const double se = iv.stddev[static_cast<size_t>(seed)] / std::sqrt(100000.0);
    if (se == 0.0) return {false, fmt("degenerate spread for seed %d", seed)};
    const double dev = std::abs(iv.mean[static_cast<size_t>(seed)] - expected) / se;
    worst = std::max(worst, dev);
    if (dev > 3.0) {
      return {false, fmt("seed %d off by %.2f standard errors (limit 3)", seed, dev)};
    }
  }
  return {true, fmt("all seeds within 3 standard errors (worst %.2f)", worst)};
}

// 5. At beta = 0.5 the Monte-Carlo mean must agree with exhaustive enumeration
//    over all contact outcomes within 3 standard errors (1e5 runs); the
//    enumerated value for the first seed is 1.125.
Outcome check_exact_enumeration() {
  const TemporalNetwork net = worked_example();
  SiConfig cfg;
  cfg.beta = 0.5;
  cfg.t0 = 0;
  cfg.tau = 3;
  cfg.runs = 100000;
  cfg.master_seed = 2025;
  const InfluenceVector iv = influence_all(net, cfg);
  if (std::abs(tempo::testing::si_exact_mean(net, 0, 0.5, 0, 3) - 1.125) > 1e-12) {
    return {false, "enumeration does not yield 1.125 for the first seed"};
  }
  double worst = 0.0;
  for (int32_t seed = 0; seed < 3; ++seed) {
    const double exact = tempo::testing::si_exact_mean(net, seed, 0.5, 0, 3);
    const double se = iv.stddev[static_cast<size_t>(seed)] / std::sqrt(100000.0);
    const double dev = std::abs(iv.mean[static_cast<size_t>(seed)] - exact) / se;
    worst = std::max(worst, dev);
    if (dev > 3.0) {
      return {false, fmt("seed %d off by %.2f standard errors (limit 3)", seed, dev)};
    }
  }
  return {true, fmt("all seeds within 3 standard errors of the enumerated means (worst %.2f)",
                    worst)};
}

// 6. The merge-sort rank correlation must match direct enumeration over all
//    pairs on 1000 random vectors (length <= 200, heavy ties) to 1e-12.
Outcome check_kendall_oracle() {
  Rng rng(4242);
  int undefined = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const size_t n = 2 + rng.next_below(199);
    const uint64_t levels = 2 + rng.next_below(12);
    std::vector<double> pred(n), act(n);
    for (size_t i = 0; i < n; ++i) {
      pred[i] = static_cast<double>(rng.next_below(levels));
      act[i] = static_cast<double>(rng.next_below(levels));
    }
    KendallResult fast, slow;
    bool fast_threw = false, slow_threw = false;
    try {
      fast = kendall_tau_b(pred, act);
    } catch (const std::domain_error&) {
      fast_threw = true;
    }
    try {
      slow = tempo::testing::kendall_pair_oracle(pred, act);
    } catch (const std::domain_error&) {
      slow_threw = true;
    }
    if (fast_threw != slow_threw) {
      return {false, fmt("undefined-correlation disagreement on vector pair %d", rep)};
    }
    if (fast_threw) {
      ++undefined;
      continue;
    }
    if (fast.concordant != slow.concordant || fast.discordant != slow.discordant ||
        fast.ties_actual_only != slow.ties_actual_only ||
        fast.ties_predicted_only != slow.ties_predicted_only) {
      return {false, fmt("pair-count disagreement on vector pair %d", rep)};
    }
    if (std::abs(fast.tau - slow.tau) > 1e-12) {
      return {false, fmt("tau differs by %.3g on vector pair %d (limit 1e-12)",
                         std::abs(fast.tau - slow.tau), rep)};
    }
  }
  return {true, fmt("1000 vector pairs agree to 1e-12 (%d with undefined correlation on both "
                    "routes)",
                    undefined)};
}

// 7. 100 timestamp shuffles of a 1000-contact network must preserve the
//    per-pair contact counts and the timestamp multiset exactly.
Outcome check_shuffle_invariants() {
  Rng gen = Rng::stream(31, stream_role::kSynthetic, 999);
  const TemporalNetwork net = random_temporal_network(60, 1000, 250, gen);
  if (net.contacts.size() != 1000) {
    return {false, fmt("generator produced %zu contacts instead of 1000", net.contacts.size())};
  }
  std::map<std::pair<int32_t, int32_t>, int> pair_counts;
  std::map<int64_t, int> time_counts;
  for (const Contact& c : net.contacts) {
    ++pair_counts[{c.u, c.v}];
    ++time_counts[c.t];
  }
  for (int r = 0; r < 100; ++r) {
    Rng rng = Rng::stream(7, stream_role::kShuffle, static_cast<uint64_t>(r));
    const TemporalNetwork shuffled = shuffle_timestamps(net, rng);
    std::map<std::pair<int32_t, int32_t>, int> pairs;
    std::map<int64_t, int> times;
    for (const Contact& c : shuffled.contacts) {
      ++pairs[{c.u, c.v}];
      ++times[c.t];
    }
    if (pairs != pair_counts || times != time_counts || shuffled.contacts.size() != 1000) {
      return {false, fmt("shuffle %d altered an invariant", r)};
    }
  }
  return {true, "100 shuffles preserved both multisets exactly"};
}

// 8 + 9. On a 150-node, 5000-contact planted-community network the sweep must
// place contact volume ahead of reachability for weak transmission and the
// reverse for certain transmission (start-averaged best Qk, margin >= 0.02,
// runs = 200, under 10 minutes), and two executions must write byte-identical
// result files.
struct SweepPairOutcome {
  Outcome ordering;
  Outcome determinism;
};

SweepPairOutcome check_sweep_pair() {
  CommunityNetParams params;  // 150 nodes, 5000 contacts
  const TemporalNetwork net = planted_community_network(params, 4);

  SweepConfig cfg;
  cfg.metrics = {metric_name::kDegreeMass, metric_name::kTemporalReachability};
  cfg.betas = {0.01, 1.0};
  cfg.runs = 200;
  cfg.master_seed = 1;
  cfg.cache_dir = "none";

  const auto dir = std::filesystem::temp_directory_path();
  const std::string out1 = (dir / "tempo_acceptance_sweep_1.csv").string();
  const std::string out2 = (dir / "tempo_acceptance_sweep_2.csv").string();
  std::filesystem::remove(out1);
  std::filesystem::remove(out2);

  const auto start = std::chrono::steady_clock::now();
  const SweepResult first = run_sweep(net, cfg, out1, /*resume=*/false);
  const double secs = seconds_since(start);
  run_sweep(net, cfg, out2, /*resume=*/false);

  SweepPairOutcome result;
  const std::string bytes1 = slurp(out1);
  const bool identical = !bytes1.empty() && bytes1 == slurp(out2);
  result.determinism = {identical, identical ? fmt("two sweeps wrote identical files (%zu bytes)",
                                                   bytes1.size())
                                             : "result files differ between executions"};
  std::filesystem::remove(out1);
  std::filesystem::remove(out2);

  const auto best = best_quality(first.rows);
  auto best_qk = [&best](const char* metric, double beta, double phi) {
    for (const BestRow& row : best) {
      if (row.metric == metric && row.beta == beta && row.phi == phi) return row.qk;
    }
    return std::numeric_limits<double>::quiet_NaN();
  };

  double worst_margin = std::numeric_limits<double>::infinity();
  std::string margins;
  for (const double phi : cfg.phis) {
    const double weak = best_qk(metric_name::kDegreeMass, 0.01, phi) -
                        best_qk(metric_name::kTemporalReachability, 0.01, phi);
    const double certain = best_qk(metric_name::kTemporalReachability, 1.0, phi) -
                           best_qk(metric_name::kDegreeMass, 1.0, phi);
    worst_margin = std::min({worst_margin, weak, certain});
    margins += fmt(" phi=%.2f: +%.3f @ beta=0.01, +%.3f @ beta=1;", phi, weak, certain);
  }
  const bool ordered = std::isfinite(worst_margin) && worst_margin >= 0.02;
  const bool in_time = secs < 600.0;
  result.ordering = {ordered && in_time,
                     fmt("margins (required >= 0.02):%s %.0f s (limit 600 s)", margins.c_str(),
                         secs)};
  return result;
}

// 10. Static spot values against closed forms, to 1e-9: path-graph
//     betweenness and closeness, triangle and star PageRank / eigenvector.
Outcome check_classic_spot_values() {
  const double gamma = 0.85;
  double worst = 0.0;
  auto track = [&worst](std::span<const double> got, std::span<const double> want) {
    for (size_t i = 0; i < got.size(); ++i) {
      worst = std::max(worst, std::abs(got[i] - want[i]));
    }
  };

  const StaticGraph path3 =
      make_static(aggregate(make_temporal_network(3, {{0, 1, 1}, {1, 2, 1}}), 1, 1));
  track(betweenness(path3), std::vector<double>{0.0, 2.0, 0.0});
  track(closeness(path3), std::vector<double>{1.5, 2.0, 1.5});

  const StaticGraph k3 =
      make_static(aggregate(make_temporal_network(3, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}}), 1, 1));
  track(pagerank(k3, gamma), std::vector<double>(3, 1.0 / 3.0));
  track(eigenvector_centrality(k3), std::vector<double>(3, 1.0 / std::sqrt(3.0)));

  const StaticGraph star4 = make_static(
      aggregate(make_temporal_network(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}}), 1, 1));
  const double center = (1.0 + 3.0 * gamma) / (4.0 * (1.0 + gamma));
  const double leaf = (1.0 - center) / 3.0;
  track(pagerank(star4, gamma), std::vector<double>{center, leaf, leaf, leaf});
  const double eig_leaf = 1.0 / std::sqrt(6.0);
  track(eigenvector_centrality(star4),
        std::vector<double>{1.0 / std::sqrt(2.0), eig_leaf, eig_leaf, eig_leaf});

  return {worst <= 1e-9, fmt("largest deviation %.2e (limit 1e-9)", worst)};
}

int run_all() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };

  SweepPairOutcome sweep_pair;
  bool sweep_pair_ran = false;
  auto ensure_sweep_pair = [&]() {
    if (!sweep_pair_ran) {
      sweep_pair = check_sweep_pair();
      sweep_pair_ran = true;
    }
  };

  const std::vector<Criterion> criteria = {
      {1, "walk census equals exhaustive enumeration on 500 random networks",
       check_census_oracle},
      {2, "reachability <= walk count <= aggregated walk count on the corpus",
       check_ordering_chains},
      {3, "certain-transmission outbreaks equal temporal reachability (Qk = 1)",
       check_deterministic_equivalence},
      {4, "weak-transmission influence matches beta x seed contact count",
       check_small_beta_law},
      {5, "Monte-Carlo influence matches exhaustive outcome enumeration",
       check_exact_enumeration},
      {6, "rank correlation equals pairwise enumeration on 1000 vectors",
       check_kendall_oracle},
      {7, "timestamp shuffles preserve pair counts and the time multiset",
       check_shuffle_invariants},
      {8, "volume predicts weak spreading, reachability predicts certain spreading",
       [&]() {
         ensure_sweep_pair();
         return sweep_pair.ordering;
       }},
      {9, "repeated sweep executions write byte-identical result files",
       [&]() {
         ensure_sweep_pair();
         return sweep_pair.determinism;
       }},
      {10, "static centrality spot values match their closed forms",
       check_classic_spot_values},
  };

  bool all_ok = true;
  for (const Criterion& criterion : criteria) {
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {false, fmt("unexpected exception: %s", e.what())};
    }
    std::printf("[%s] %2d %s — %s\n", outcome.ok ? "PASS" : "FAIL", criterion.id,
                criterion.name, outcome.detail.c_str());
    std::fflush(stdout);
    all_ok = all_ok && outcome.ok;
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main() { return run_all(); }
