#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tempo/rng.hpp"
#include "tempo/temporal_network.hpp"

namespace tempo {

/// Discrete-time susceptible-infected process. The seed is infected at t0;
/// during each step t in (t0, t0 + tau] every contact with exactly one
/// endpoint infected strictly before t transmits independently with
/// probability beta, and a node infected at t starts transmitting at t + 1.
struct SiConfig {
  double beta = 0.1;
  int64_t t0 = 0;
  int64_t tau = 0;
  int runs = 500;
  uint64_t master_seed = 1;
};

/// Outbreak size (infected nodes at t0 + tau, seed excluded) of one
/// realization driven by the given stream.
int simulate_si(const TemporalNetwork& net, int32_t seed_node, double beta, int64_t t0,
                int64_t tau, Rng& rng);

/// Deterministic replay: draws[i] belongs to the i-th contact of the window
/// regardless of whether it becomes eligible, so trajectories with different
/// beta share randomness (a draw below beta transmits).
int simulate_si_with_draws(const TemporalNetwork& net, int32_t seed_node, double beta,
                           int64_t t0, int64_t tau, std::span<const double> draws);

/// Monte-Carlo spreading influence per seed node: mean and sample standard
/// deviation of the outbreak size. Realization r of seed i uses the stream
/// derived from (master_seed, i, r); beta = 1 is deterministic, so a single
/// run is performed regardless of the configured count.
struct InfluenceVector {
  std::vector<double> mean;
  std::vector<double> stddev;
  int runs = 0;
  double beta = 0.0;
  int64_t t0 = 0;
  int64_t tau = 0;
};

InfluenceVector influence_all(const TemporalNetwork& net, const SiConfig& cfg);

void write_influence_csv(const std::string& path, const InfluenceVector& iv);
InfluenceVector read_influence_csv(const std::string& path);

}  // namespace tempo
