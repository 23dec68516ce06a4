#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tempo/temporal_network.hpp"

namespace tempo {

/// Descriptive numbers for a contact dataset. Shares are averaged over all
/// snapshots (degree-one share) respectively over every feasible observation
/// window of the start-time grid (hop-distance share).
struct DatasetStats {
  int32_t n_nodes = 0;
  int64_t n_contacts = 0;
  int64_t horizon = 0;
  double link_density = 0.0;            // aggregated edges / possible pairs
  double degree1_snapshot_share = 0.0;  // among nodes active in a snapshot
  double th_one_or_inf_share = 0.0;     // ordered pairs at temporal hop distance 1 or unreachable
  std::vector<std::pair<double, double>> mean_influence_per_beta;  // (beta, mean outbreak)
};

/// Start times floor(fraction * horizon), de-duplicated in grid order.
std::vector<int64_t> start_time_grid(const TemporalNetwork& net,
                                     std::span<const double> fractions);

DatasetStats dataset_report(const TemporalNetwork& net, std::span<const double> t0_fractions,
                            double tau_fraction);

/// Optional spreading summary: mean outbreak size over all seeds and feasible
/// start times, per beta. Monte-Carlo heavy; runs scale the cost directly.
void add_mean_influence(DatasetStats& stats, const TemporalNetwork& net,
                        std::span<const double> betas, std::span<const double> t0_fractions,
                        double tau_fraction, int runs, uint64_t master_seed);

void write_stats_csv(const std::string& path, const DatasetStats& stats);

}  // namespace tempo
