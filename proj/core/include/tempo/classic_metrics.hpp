#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tempo/temporal_network.hpp"

namespace tempo {

/// Simple undirected graph on dense ids; isolated nodes are allowed.
struct StaticGraph {
  int32_t n_nodes = 0;
  std::vector<std::vector<int32_t>> adj;  // sorted neighbor lists
  int64_t edge_count = 0;
};

/// Unweighted view of an aggregated window.
StaticGraph make_static(const AggregatedNetwork& agg);

/// Single-step snapshot of a network (all nodes present, contacts at t only).
StaticGraph snapshot_graph(const TemporalNetwork& net, int64_t t);

/// Snapshot of an ego observation at a relative step, over member-local ids.
StaticGraph snapshot_graph(const PartialTemporalNetwork& pnet, int64_t rel_t);

/// How a score vector was derived from the data.
enum class DerivationMode {
  kFullAggregated,    // static metric on the aggregated full window
  kFullTemporal,      // snapshot average / temporal metric on the full window
  kPartialAggregated, // static metric on each node's own ego aggregate
  kPartialTemporal,   // snapshot average / temporal metric on each ego network
};

std::string to_string(DerivationMode mode);
DerivationMode mode_from_string(const std::string& token);

/// Score vector labeled with the metric it came from.
struct CentralityVector {
  std::string metric;
  DerivationMode mode = DerivationMode::kFullAggregated;
  std::vector<double> values;
};

/// Shortest-path betweenness over ordered node pairs (each unordered pair of
/// endpoints contributes twice). Nodes without edges score 0.
std::vector<double> betweenness(const StaticGraph& g);

/// Harmonic closeness: sum of inverse shortest-path distances; unreachable
/// pairs contribute 0.
std::vector<double> closeness(const StaticGraph& g);

/// Principal eigenvector of the adjacency matrix restricted to the largest
/// connected component (power iteration; the identity shift keeps bipartite
/// components from oscillating). Entries are nonnegative, L2-normalized;
/// nodes outside the component score 0. Requires at least one edge.
std::vector<double> eigenvector_centrality(const StaticGraph& g, double tol = 1e-10,
                                           int max_iter = 100000);

/// PageRank with uniform teleport; nodes without edges both receive and shed
/// rank through the uniform dangling redistribution. The result sums to 1.
std::vector<double> pagerank(const StaticGraph& g, double gamma = 0.85, double tol = 1e-12,
                             int max_iter = 100000);

/// Minimum hop count of a time-respecting path from root to every node, using
/// only contacts with start_exclusive < t (caller restricts the span to the
/// window). Layers are capped at hop_cap; unreached nodes get kUnreachableHops.
inline constexpr int64_t kUnreachableHops = INT64_MAX;
std::vector<int64_t> temporal_hopcounts(std::span<const Contact> contacts, int32_t n_nodes,
                                        int32_t root, int64_t start_exclusive, int32_t hop_cap);

/// Sum over other nodes of 1 / (temporal hop distance) within the window
/// (t0, t0 + len]; unreachable nodes contribute 0.
double temporal_closeness(const TemporalNetwork& net, int32_t root, int64_t t0, int64_t len);

/// Same, on an ego observation (relative window, root's own clock).
double temporal_closeness(const PartialTemporalNetwork& pnet);

enum class SnapshotMetric { kBetweenness, kCloseness, kEigenvector, kPagerank };

std::vector<double> evaluate_snapshot_metric(SnapshotMetric metric, const StaticGraph& g);

/// Arithmetic mean of a static metric over every snapshot in [t_begin,
/// t_end]; eigenvector centrality of an edgeless snapshot counts as all-zero.
std::vector<double> snapshot_average(SnapshotMetric metric, const TemporalNetwork& net,
                                     int64_t t_begin, int64_t t_end);

/// Snapshot average over an ego observation's relative window, member-local;
/// a zero-length observation window yields all-zero scores.
std::vector<double> snapshot_average(SnapshotMetric metric, const PartialTemporalNetwork& pnet);

}  // namespace tempo
