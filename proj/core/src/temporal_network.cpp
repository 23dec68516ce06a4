#include "tempo/temporal_network.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

namespace tempo {

namespace {

constexpr uint64_t kFnvOffset = 1469598103934665603ull;
constexpr uint64_t kFnvPrime = 1099511628211ull;

uint64_t fnv1a(uint64_t h, uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    h ^= (value >> (8 * i)) & 0xffull;
    h *= kFnvPrime;
  }
  return h;
}

}  // namespace

std::span<const Contact> TemporalNetwork::window(int64_t t_begin, int64_t t_end) const {
  auto lo = std::lower_bound(contacts.begin(), contacts.end(), t_begin,
                             [](const Contact& c, int64_t t) { return c.t < t; });
  auto hi = std::upper_bound(contacts.begin(), contacts.end(), t_end,
                             [](int64_t t, const Contact& c) { return t < c.t; });
  if (lo >= hi) return {};
  return {&*lo, static_cast<size_t>(hi - lo)};
}

TemporalNetwork make_temporal_network(int32_t n_nodes, std::vector<Contact> contacts,
                                      std::vector<int64_t> labels) {
  if (n_nodes < 0) throw std::invalid_argument("node count cannot be negative");
  if (!labels.empty() && static_cast<int32_t>(labels.size()) != n_nodes)
    throw std::invalid_argument("label table size must match node count");
  for (auto& c : contacts) {
    if (c.u == c.v) throw std::invalid_argument("self-loop contact is not allowed");
    if (c.u > c.v) std::swap(c.u, c.v);
    if (c.u < 0 || c.v >= n_nodes) throw std::invalid_argument("contact endpoint out of range");
    if (c.t < 1) throw std::invalid_argument("contact time must be >= 1");
  }
  std::sort(contacts.begin(), contacts.end(), ContactTimeOrder{});
  contacts.erase(std::unique(contacts.begin(), contacts.end()), contacts.end());

  TemporalNetwork net;
  net.n_nodes = n_nodes;
  net.horizon = contacts.empty() ? 0 : contacts.back().t;
  net.contacts = std::move(contacts);
  net.labels = std::move(labels);
  return net;
}

namespace {

bool parse_i64(std::string_view tok, int64_t& out) {
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return res.ec == std::errc{} && res.ptr == tok.data() + tok.size();
}

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> toks;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == ',')) ++i;
    size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != ',') ++i;
    if (i > start) toks.push_back(line.substr(start, i - start));
  }
  return toks;
}

}  // namespace

TemporalNetwork parse_contact_list(const std::string& path, const ParseFormat& format,
                                   ParseReport* report) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  if (format.u_column < 0 || format.v_column < 0 || format.t_column < 0)
    throw std::invalid_argument("column indices must be non-negative");

  const int max_col = std::max({format.u_column, format.v_column, format.t_column});
  ParseReport rep;
  struct RawRow {
    int64_t u, v, t;
  };
  std::vector<RawRow> rows;
  std::string line;
  int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    ++rep.lines_total;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;

    const auto toks = tokenize(line);
    if (static_cast<int>(toks.size()) <= max_col)
      throw std::runtime_error("parse error at line " + std::to_string(lineno) + " of " + path +
                               ": expected at least " + std::to_string(max_col + 1) + " columns");
    int64_t u, v, t;
    if (!parse_i64(toks[static_cast<size_t>(format.u_column)], u) ||
        !parse_i64(toks[static_cast<size_t>(format.v_column)], v) ||
        !parse_i64(toks[static_cast<size_t>(format.t_column)], t))
      throw std::runtime_error("parse error at line " + std::to_string(lineno) + " of " + path +
                               ": non-integer field");
    if (u == v) {
      ++rep.self_loops_dropped;
      continue;
    }
    rows.push_back({u, v, t});
    ++rep.rows_parsed;
  }
  if (rows.empty()) throw std::runtime_error("no contacts found in " + path);

  int64_t t_min = std::numeric_limits<int64_t>::max();
  for (const auto& r : rows) t_min = std::min(t_min, r.t);
  rep.time_offset = t_min < 1 ? 1 - t_min : 0;

  std::vector<int64_t> labels;
  labels.reserve(rows.size() * 2);
  for (const auto& r : rows) {
    labels.push_back(r.u);
    labels.push_back(r.v);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  std::unordered_map<int64_t, int32_t> dense;
  dense.reserve(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) dense[labels[i]] = static_cast<int32_t>(i);

  std::vector<Contact> contacts;
  contacts.reserve(rows.size());
  for (const auto& r : rows)
    contacts.push_back({dense[r.u], dense[r.v], r.t + rep.time_offset});

  const auto n_nodes = static_cast<int32_t>(labels.size());
  TemporalNetwork net = make_temporal_network(n_nodes, std::move(contacts), std::move(labels));
  rep.duplicates_dropped = rep.rows_parsed - static_cast<int64_t>(net.contacts.size());
  if (report) *report = rep;
  return net;
}

TemporalNetwork compact_timesteps(const TemporalNetwork& net) {
  if (net.contacts.empty())
    throw std::invalid_argument("cannot compact a network without contacts");
  std::vector<Contact> contacts = net.contacts;
  int64_t rank = 0;
  int64_t last = std::numeric_limits<int64_t>::min();
  for (auto& c : contacts) {  // contacts are time-sorted
    if (c.t != last) {
      ++rank;
      last = c.t;
    }
    c.t = rank;
  }
  TemporalNetwork out;
  out.n_nodes = net.n_nodes;
  out.horizon = rank;
  out.contacts = std::move(contacts);
  out.labels = net.labels;
  return out;
}

TemporalNetwork largest_connected_component(const TemporalNetwork& net) {
  if (net.contacts.empty())
    throw std::invalid_argument("cannot take a component of a network without contacts");
  const AggregatedNetwork agg = aggregate(net, 1, net.horizon);

  std::vector<int32_t> comp(static_cast<size_t>(net.n_nodes), -1);
  int32_t n_comps = 0;
  std::queue<int32_t> queue;
  for (int32_t s = 0; s < net.n_nodes; ++s) {
    if (comp[static_cast<size_t>(s)] >= 0) continue;
    comp[static_cast<size_t>(s)] = n_comps;
    queue.push(s);
    while (!queue.empty()) {
      const int32_t u = queue.front();
      queue.pop();
      for (const auto& [v, w] : agg.adj[static_cast<size_t>(u)]) {
        if (comp[static_cast<size_t>(v)] < 0) {
          comp[static_cast<size_t>(v)] = n_comps;
          queue.push(v);
        }
      }
    }
    ++n_comps;
  }

  std::vector<int64_t> size(static_cast<size_t>(n_comps), 0);
  std::vector<int64_t> min_label(static_cast<size_t>(n_comps),
                                 std::numeric_limits<int64_t>::max());
  for (int32_t v = 0; v < net.n_nodes; ++v) {
    const auto c = static_cast<size_t>(comp[static_cast<size_t>(v)]);
    ++size[c];
    min_label[c] = std::min(min_label[c], net.label_of(v));
  }
  int32_t best = 0;
  for (int32_t c = 1; c < n_comps; ++c) {
    const auto cc = static_cast<size_t>(c);
    const auto bb = static_cast<size_t>(best);
    if (size[cc] > size[bb] || (size[cc] == size[bb] && min_label[cc] < min_label[bb])) best = c;
  }

  std::vector<int32_t> remap(static_cast<size_t>(net.n_nodes), -1);
  std::vector<int64_t> labels;
  int32_t next_id = 0;
  for (int32_t v = 0; v < net.n_nodes; ++v) {
    if (comp[static_cast<size_t>(v)] == best) {
      remap[static_cast<size_t>(v)] = next_id++;
      labels.push_back(net.label_of(v));
    }
  }
  std::vector<Contact> contacts;
  for (const Contact& c : net.contacts) {
    const int32_t u = remap[static_cast<size_t>(c.u)];
    const int32_t v = remap[static_cast<size_t>(c.v)];
    if (u >= 0 && v >= 0) contacts.push_back({u, v, c.t});
  }
  TemporalNetwork filtered =
      make_temporal_network(next_id, std::move(contacts), std::move(labels));
  if (filtered.contacts.empty())
    throw std::runtime_error("largest component carries no contacts");
  return compact_timesteps(filtered);
}

int64_t AggregatedNetwork::weight(int32_t u, int32_t v) const {
  const auto& row = adj[static_cast<size_t>(u)];
  auto it = std::lower_bound(row.begin(), row.end(), v,
                             [](const auto& e, int32_t id) { return e.first < id; });
  if (it != row.end() && it->first == v) return it->second;
  return 0;
}

int64_t AggregatedNetwork::total_weight() const {
  int64_t sum = 0;
  for (const auto& row : adj)
    for (const auto& [v, w] : row) sum += w;
  return sum / 2;
}

int64_t AggregatedNetwork::edge_count() const {
  int64_t cnt = 0;
  for (const auto& row : adj) cnt += static_cast<int64_t>(row.size());
  return cnt / 2;
}

AggregatedNetwork aggregate(int32_t n_nodes, std::span<const Contact> contacts) {
  std::unordered_map<uint64_t, int64_t> weights;
  weights.reserve(contacts.size());
  for (const Contact& c : contacts) {
    const uint64_t key =
        (static_cast<uint64_t>(static_cast<uint32_t>(c.u)) << 32) | static_cast<uint32_t>(c.v);
    ++weights[key];
  }
  AggregatedNetwork agg;
  agg.n_nodes = n_nodes;
  agg.adj.assign(static_cast<size_t>(n_nodes), {});
  for (const auto& [key, w] : weights) {
    const auto u = static_cast<int32_t>(key >> 32);
    const auto v = static_cast<int32_t>(key & 0xffffffffull);
    agg.adj[static_cast<size_t>(u)].emplace_back(v, w);
    agg.adj[static_cast<size_t>(v)].emplace_back(u, w);
  }
  for (auto& row : agg.adj) std::sort(row.begin(), row.end());
  return agg;
}

AggregatedNetwork aggregate(const TemporalNetwork& net, int64_t t_begin, int64_t t_end) {
  if (t_begin < 1 || t_end > net.horizon || t_begin > t_end + 1)
    throw std::invalid_argument("aggregation window out of range");
  return aggregate(net.n_nodes, net.window(t_begin, t_end));
}

int32_t PartialTemporalNetwork::local_index(int32_t parent_id) const {
  auto it = std::lower_bound(members.begin(), members.end(), parent_id);
  if (it != members.end() && *it == parent_id)
    return static_cast<int32_t>(it - members.begin());
  return -1;
}

PartialTemporalNetwork extract_partial(const TemporalNetwork& net, int32_t root,
                                       int64_t window_start, int64_t window_len,
                                       int32_t hop_limit) {
  if (root < 0 || root >= net.n_nodes) throw std::invalid_argument("root out of range");
  if (hop_limit < 1) throw std::invalid_argument("hop limit must be >= 1");
  if (window_start < 0 || window_len < 0 || window_start + window_len > net.horizon)
    throw std::invalid_argument("observation window out of range");

  const auto contacts = net.window(window_start + 1, window_start + window_len);
  const AggregatedNetwork agg = aggregate(net.n_nodes, contacts);

  std::vector<int32_t> depth(static_cast<size_t>(net.n_nodes), -1);
  std::queue<int32_t> queue;
  depth[static_cast<size_t>(root)] = 0;
  queue.push(root);
  std::vector<int32_t> members{root};
  while (!queue.empty()) {
    const int32_t u = queue.front();
    queue.pop();
    if (depth[static_cast<size_t>(u)] == hop_limit) continue;
    for (const auto& [v, w] : agg.adj[static_cast<size_t>(u)]) {
      if (depth[static_cast<size_t>(v)] < 0) {
        depth[static_cast<size_t>(v)] = depth[static_cast<size_t>(u)] + 1;
        members.push_back(v);
        queue.push(v);
      }
    }
  }
  std::sort(members.begin(), members.end());

  PartialTemporalNetwork p;
  p.root = root;
  p.window_start = window_start;
  p.window_len = window_len;
  p.hop_limit = hop_limit;
  p.members = std::move(members);
  for (const Contact& c : contacts) {
    if (depth[static_cast<size_t>(c.u)] >= 0 && depth[static_cast<size_t>(c.v)] >= 0)
      p.contacts.push_back({c.u, c.v, c.t - window_start});
  }
  return p;
}

TemporalNetwork shuffle_timestamps(const TemporalNetwork& net, Rng& rng) {
  const size_t n = net.contacts.size();
  if (n <= 1) return net;

  std::vector<int64_t> times(n);
  for (size_t i = 0; i < n; ++i) times[i] = net.contacts[i].t;
  for (size_t i = n - 1; i > 0; --i) {
    const size_t j = static_cast<size_t>(rng.next_below(i + 1));
    std::swap(times[i], times[j]);
  }

  // Collision detection hashes the (u, v, t) triple; a hash clash can only
  // flag a non-duplicate as colliding, which costs one extra redraw.
  int64_t attempts = 0;
  for (;;) {
    std::unordered_set<uint64_t> seen;
    seen.reserve(n * 2);
    std::vector<size_t> colliding;
    for (size_t i = 0; i < n; ++i) {
      const Contact& c = net.contacts[i];
      const uint64_t pair_key =
          (static_cast<uint64_t>(static_cast<uint32_t>(c.u)) << 32) | static_cast<uint32_t>(c.v);
      const uint64_t key = splitmix64(pair_key) ^ splitmix64(static_cast<uint64_t>(times[i]));
      if (!seen.insert(key).second) colliding.push_back(i);
    }
    if (colliding.empty()) break;
    for (const size_t i : colliding) {
      if (++attempts > 1000000)
        throw std::runtime_error("timestamp shuffle could not resolve collisions");
      const size_t j = static_cast<size_t>(rng.next_below(n));
      std::swap(times[i], times[j]);
    }
  }

  std::vector<Contact> shuffled(n);
  for (size_t i = 0; i < n; ++i)
    shuffled[i] = {net.contacts[i].u, net.contacts[i].v, times[i]};
  return make_temporal_network(net.n_nodes, std::move(shuffled), net.labels);
}

uint64_t content_hash(const TemporalNetwork& net) {
  uint64_t h = kFnvOffset;
  h = fnv1a(h, static_cast<uint64_t>(net.n_nodes));
  h = fnv1a(h, static_cast<uint64_t>(net.horizon));
  for (const Contact& c : net.contacts) {
    h = fnv1a(h, static_cast<uint64_t>(c.u));
    h = fnv1a(h, static_cast<uint64_t>(c.v));
    h = fnv1a(h, static_cast<uint64_t>(c.t));
  }
  return h;
}

}  // namespace tempo
