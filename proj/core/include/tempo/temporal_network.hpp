#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tempo/contact.hpp"
#include "tempo/rng.hpp"

namespace tempo {

/// Discrete-time contact sequence over a dense node set 0..n_nodes-1.
/// Contacts are undirected (stored with u < v), unique per (u, v, t) and
/// sorted by time. Instances are treated as immutable once built.
struct TemporalNetwork {
  int32_t n_nodes = 0;
  int64_t horizon = 0;             // largest contact time T
  std::vector<Contact> contacts;   // sorted by (t, u, v)
  std::vector<int64_t> labels;     // dense id -> external label; empty means identity

  int64_t label_of(int32_t node) const {
    return labels.empty() ? node : labels[static_cast<size_t>(node)];
  }

  /// Contacts with t in [t_begin, t_end].
  std::span<const Contact> window(int64_t t_begin, int64_t t_end) const;
};

/// Canonicalizes endpoints (u < v), drops duplicate (u, v, t) triples, sorts
/// by time and validates ids and times (t >= 1). horizon is the largest time.
TemporalNetwork make_temporal_network(int32_t n_nodes, std::vector<Contact> contacts,
                                      std::vector<int64_t> labels = {});

struct ParseFormat {
  int u_column = 0;  // zero-based indices into each data row
  int v_column = 1;
  int t_column = 2;
};

struct ParseReport {
  int64_t lines_total = 0;
  int64_t rows_parsed = 0;        // valid contact rows before deduplication
  int64_t duplicates_dropped = 0;
  int64_t self_loops_dropped = 0;
  int64_t time_offset = 0;        // added to raw times so the minimum becomes 1
};

/// Reads integer edge rows (whitespace or comma separated, '#' starts a
/// comment line, extra columns ignored) and builds a network whose node
/// labels are remapped to dense ids in ascending label order. Self-loop rows
/// are skipped with a report entry; malformed rows raise an error that names
/// the offending line.
TemporalNetwork parse_contact_list(const std::string& path, const ParseFormat& format = {},
                                   ParseReport* report = nullptr);

/// Relabels time steps to consecutive 1..T' preserving order, so that every
/// step of the result carries at least one contact. Idempotent.
TemporalNetwork compact_timesteps(const TemporalNetwork& net);

/// Keeps only the largest connected component of the full-window aggregated
/// graph (ties broken by the smallest contained label), re-densifies node ids
/// in ascending old order and re-compacts time steps.
TemporalNetwork largest_connected_component(const TemporalNetwork& net);

/// Weighted time-aggregation of a contact window: w(u, v) counts the contacts
/// between u and v inside the window.
struct AggregatedNetwork {
  int32_t n_nodes = 0;
  std::vector<std::vector<std::pair<int32_t, int64_t>>> adj;  // sorted neighbor lists

  int64_t weight(int32_t u, int32_t v) const;
  int64_t total_weight() const;  // sum of w(u, v) over unordered pairs
  int64_t edge_count() const;    // unordered pairs with positive weight
};

/// Aggregates contacts with t in [t_begin, t_end]; an empty window yields
/// all-zero weights. Requires 1 <= t_begin <= t_end + 1 and t_end <= horizon.
AggregatedNetwork aggregate(const TemporalNetwork& net, int64_t t_begin, int64_t t_end);
AggregatedNetwork aggregate(int32_t n_nodes, std::span<const Contact> contacts);

/// Ego observation of a temporal network: the contacts inside
/// (window_start, window_start + window_len] among nodes at most hop_limit
/// hops from root in the aggregated graph of that window. Contact times are
/// stored relative to window_start, so the first usable step is 1 and the
/// root's own clock starts at 0.
struct PartialTemporalNetwork {
  int32_t root = 0;          // parent id
  int64_t window_start = 0;  // t0 of the observation window
  int64_t window_len = 0;
  int32_t hop_limit = 0;
  std::vector<int32_t> members;   // sorted parent ids, always contains root
  std::vector<Contact> contacts;  // parent ids, relative times, sorted

  /// Position of a parent id inside members, or -1 when not observed.
  int32_t local_index(int32_t parent_id) const;
};

PartialTemporalNetwork extract_partial(const TemporalNetwork& net, int32_t root,
                                       int64_t window_start, int64_t window_len,
                                       int32_t hop_limit);

/// Permutes contact timestamps uniformly at random while keeping both the
/// multiset of (u, v) pairs and the multiset of times fixed. Assignments that
/// would duplicate an existing (u, v, t) triple are re-drawn; gives up with an
/// error after one million redraws.
TemporalNetwork shuffle_timestamps(const TemporalNetwork& net, Rng& rng);

/// Order-independent digest of (n_nodes, horizon, contacts); used to key
/// caches and to fingerprint experiment outputs.
uint64_t content_hash(const TemporalNetwork& net);

}  // namespace tempo
