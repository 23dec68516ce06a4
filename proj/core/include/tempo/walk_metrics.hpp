#pragma once

#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "tempo/temporal_network.hpp"

namespace tempo {

/// Largest integer magnitude a double carries exactly; walk counts beyond
/// this raise an overflow error instead of silently losing precision.
inline constexpr double kMaxExactCount = 9007199254740992.0;  // 2^53

/// Root-anchored census of time-respecting walks: counts[(node, hops, end
/// time)] is the number of walks from the root that use exactly `hops`
/// contacts with strictly increasing times and end at `node` at `end time`
/// (relative clock). Walks may revisit nodes, including the root.
struct WalkCensus {
  int32_t root = 0;
  int32_t hop_limit = 0;
  std::map<std::tuple<int32_t, int32_t, int64_t>, double> counts;

  double count_of(int32_t node, int32_t hops, int64_t end_time) const;
  double total() const;
  /// Walk counts summed per end time; the basis for time-discounted scores.
  std::map<int64_t, double> totals_by_end_time() const;
};

/// Sum over walk lengths 1..m of the number of weighted walks of that length
/// leaving `root` in the aggregated graph (row sums of successive powers of
/// the weight matrix). Exact while every intermediate stays below 2^53.
double weighted_degree_mass(const AggregatedNetwork& agg, int32_t root, int32_t m);

/// Dynamic program over contacts in time order; exact counterpart of
/// brute_force_walk_oracle for any input size.
WalkCensus walk_census(const PartialTemporalNetwork& pnet);

/// Total number of time-respecting walks of length <= hop limit.
double temporal_degree_mass(const WalkCensus& census);

/// Same walks, each discounted by alpha^(end time); alpha in (0, 1].
double time_scaled_degree_mass(const WalkCensus& census, double alpha);

/// Earliest relative time at which each member can be reached from the root
/// by a time-respecting walk of at most hop_limit contacts.
struct EarliestArrival {
  static constexpr int64_t kUnreachable = INT64_MAX;

  int32_t root = 0;
  int32_t hop_limit = 0;
  std::vector<int32_t> members;  // parent ids, sorted (matches the source pnet)
  std::vector<int64_t> arrival;  // parallel to members; root slot holds 0

  int64_t arrival_of(int32_t parent_id) const;
};

EarliestArrival earliest_arrival(const PartialTemporalNetwork& pnet);

/// Number of nodes (root excluded) reachable within the hop limit.
int64_t temporal_reachability(const EarliestArrival& ea);

/// Reachable nodes discounted by alpha^(arrival time); alpha in (0, 1].
double time_scaled_reachability(const EarliestArrival& ea, double alpha);

/// Exhaustive enumeration of every time-respecting walk (depth-first over
/// contact sequences with strictly increasing times). Reference oracle for
/// walk_census; refuses inputs with more than 30 contacts or hop limits
/// above 4.
WalkCensus brute_force_walk_oracle(const PartialTemporalNetwork& pnet);

}  // namespace tempo
