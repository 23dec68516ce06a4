#include "tempo/classic_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <stdexcept>

namespace tempo {

StaticGraph make_static(const AggregatedNetwork& agg) {
  StaticGraph g;
  g.n_nodes = agg.n_nodes;
  g.adj.resize(static_cast<size_t>(agg.n_nodes));
  for (size_t u = 0; u < g.adj.size(); ++u) {
    g.adj[u].reserve(agg.adj[u].size());
    for (const auto& [v, w] : agg.adj[u]) g.adj[u].push_back(v);
  }
  g.edge_count = agg.edge_count();
  return g;
}

namespace {

StaticGraph graph_from_contacts(int32_t n_nodes, std::span<const Contact> contacts,
                                const PartialTemporalNetwork* local_of = nullptr) {
  StaticGraph g;
  g.n_nodes = n_nodes;
  g.adj.resize(static_cast<size_t>(n_nodes));
  for (const Contact& c : contacts) {
    int32_t u = c.u, v = c.v;
    if (local_of) {
      u = local_of->local_index(u);
      v = local_of->local_index(v);
    }
    g.adj[static_cast<size_t>(u)].push_back(v);
    g.adj[static_cast<size_t>(v)].push_back(u);
    ++g.edge_count;
  }
  for (auto& row : g.adj) std::sort(row.begin(), row.end());
  return g;
}

}  // namespace

StaticGraph snapshot_graph(const TemporalNetwork& net, int64_t t) {
  return graph_from_contacts(net.n_nodes, net.window(t, t));
}

StaticGraph snapshot_graph(const PartialTemporalNetwork& pnet, int64_t rel_t) {
  auto lo = std::lower_bound(pnet.contacts.begin(), pnet.contacts.end(), rel_t,
                             [](const Contact& c, int64_t t) { return c.t < t; });
  auto hi = std::upper_bound(pnet.contacts.begin(), pnet.contacts.end(), rel_t,
                             [](int64_t t, const Contact& c) { return t < c.t; });
  std::span<const Contact> span;
  if (lo < hi) span = {&*lo, static_cast<size_t>(hi - lo)};
  return graph_from_contacts(static_cast<int32_t>(pnet.members.size()), span, &pnet);
}

std::string to_string(DerivationMode mode) {
  switch (mode) {
    case DerivationMode::kFullAggregated: return "full-aggregated";
    case DerivationMode::kFullTemporal: return "full-temporal";
    case DerivationMode::kPartialAggregated: return "partial-aggregated";
    case DerivationMode::kPartialTemporal: return "partial-temporal";
  }
  throw std::logic_error("unknown derivation mode");
}

DerivationMode mode_from_string(const std::string& token) {
  if (token == "full-aggregated") return DerivationMode::kFullAggregated;
  if (token == "full-temporal") return DerivationMode::kFullTemporal;
  if (token == "partial-aggregated") return DerivationMode::kPartialAggregated;
  if (token == "partial-temporal") return DerivationMode::kPartialTemporal;
  throw std::invalid_argument("unknown derivation mode: " + token);
}

std::vector<double> betweenness(const StaticGraph& g) {
  const auto n = static_cast<size_t>(g.n_nodes);
  std::vector<double> bc(n, 0.0);
  std::vector<int32_t> dist(n, -1);
  std::vector<double> sigma(n, 0.0), delta(n, 0.0);
  std::vector<std::vector<int32_t>> preds(n);
  std::vector<int32_t> order;
  order.reserve(n);
  std::queue<int32_t> queue;

  for (int32_t s = 0; s < g.n_nodes; ++s) {
    if (g.adj[static_cast<size_t>(s)].empty()) continue;
    order.clear();
    dist[static_cast<size_t>(s)] = 0;
    sigma[static_cast<size_t>(s)] = 1.0;
    queue.push(s);
    while (!queue.empty()) {
      const int32_t u = queue.front();
      queue.pop();
      order.push_back(u);
      for (const int32_t v : g.adj[static_cast<size_t>(u)]) {
        auto& dv = dist[static_cast<size_t>(v)];
        if (dv < 0) {
          dv = dist[static_cast<size_t>(u)] + 1;
          queue.push(v);
        }
        if (dv == dist[static_cast<size_t>(u)] + 1) {
          sigma[static_cast<size_t>(v)] += sigma[static_cast<size_t>(u)];
          preds[static_cast<size_t>(v)].push_back(u);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const auto w = static_cast<size_t>(*it);
      for (const int32_t p : preds[w])
        delta[static_cast<size_t>(p)] += sigma[static_cast<size_t>(p)] / sigma[w] * (1.0 + delta[w]);
      if (*it != s) bc[w] += delta[w];
    }
    for (const int32_t u : order) {
      const auto uu = static_cast<size_t>(u);
      dist[uu] = -1;
      sigma[uu] = 0.0;
      delta[uu] = 0.0;
      preds[uu].clear();
    }
  }
  return bc;
}

std::vector<double> closeness(const StaticGraph& g) {
  const auto n = static_cast<size_t>(g.n_nodes);
  std::vector<double> cc(n, 0.0);
  std::vector<int32_t> dist(n, -1);
  std::vector<int32_t> visited;
  std::queue<int32_t> queue;

  for (int32_t s = 0; s < g.n_nodes; ++s) {
    if (g.adj[static_cast<size_t>(s)].empty()) continue;
    visited.clear();
    dist[static_cast<size_t>(s)] = 0;
    visited.push_back(s);
    queue.push(s);
    double sum = 0.0;
    while (!queue.empty()) {
      const int32_t u = queue.front();
      queue.pop();
      for (const int32_t v : g.adj[static_cast<size_t>(u)]) {
        if (dist[static_cast<size_t>(v)] < 0) {
          dist[static_cast<size_t>(v)] = dist[static_cast<size_t>(u)] + 1;
          sum += 1.0 / dist[static_cast<size_t>(v)];
          visited.push_back(v);
          queue.push(v);
        }
      }
    }
    cc[static_cast<size_t>(s)] = sum;
    for (const int32_t u : visited) dist[static_cast<size_t>(u)] = -1;
  }
  return cc;
}

namespace {

/// Connected components by BFS; returns (component id per node, count).
std::pair<std::vector<int32_t>, int32_t> components(const StaticGraph& g) {
  std::vector<int32_t> comp(static_cast<size_t>(g.n_nodes), -1);
  int32_t count = 0;
  std::queue<int32_t> queue;
  for (int32_t s = 0; s < g.n_nodes; ++s) {
    if (comp[static_cast<size_t>(s)] >= 0) continue;
    comp[static_cast<size_t>(s)] = count;
    queue.push(s);
    while (!queue.empty()) {
      const int32_t u = queue.front();
      queue.pop();
      for (const int32_t v : g.adj[static_cast<size_t>(u)])
        if (comp[static_cast<size_t>(v)] < 0) {
          comp[static_cast<size_t>(v)] = count;
          queue.push(v);
        }
    }
    ++count;
  }
  return {std::move(comp), count};
}

}  // namespace

std::vector<double> eigenvector_centrality(const StaticGraph& g, double tol, int max_iter) {
  if (g.edge_count == 0)
    throw std::invalid_argument("eigenvector centrality requires at least one edge");

  const auto [comp, n_comps] = components(g);
  std::vector<int64_t> sizes(static_cast<size_t>(n_comps), 0);
  for (const int32_t c : comp) ++sizes[static_cast<size_t>(c)];
  int32_t largest = 0;
  for (int32_t c = 1; c < n_comps; ++c)
    if (sizes[static_cast<size_t>(c)] > sizes[static_cast<size_t>(largest)]) largest = c;

  std::vector<int32_t> nodes;
  for (int32_t v = 0; v < g.n_nodes; ++v)
    if (comp[static_cast<size_t>(v)] == largest) nodes.push_back(v);
  std::vector<int32_t> local(static_cast<size_t>(g.n_nodes), -1);
  for (size_t i = 0; i < nodes.size(); ++i) local[static_cast<size_t>(nodes[i])] = static_cast<int32_t>(i);

  const size_t k = nodes.size();
  std::vector<double> x(k, 1.0 / std::sqrt(static_cast<double>(k))), y(k, 0.0);
  double residual = 0.0;
  for (int iter = 0; iter < max_iter; ++iter) {
    // (A + I) x: the shift leaves eigenvectors untouched but makes the
    // dominant eigenvalue unique on bipartite components.
    for (size_t i = 0; i < k; ++i) {
      double sum = x[i];
      for (const int32_t nb : g.adj[static_cast<size_t>(nodes[i])])
        sum += x[static_cast<size_t>(local[static_cast<size_t>(nb)])];
      y[i] = sum;
    }
    double norm = 0.0;
    for (const double v : y) norm += v * v;
    norm = std::sqrt(norm);
    residual = 0.0;
    for (size_t i = 0; i < k; ++i) {
      y[i] /= norm;
      residual = std::max(residual, std::abs(y[i] - x[i]));
    }
    x.swap(y);
    if (residual < tol) {
      std::vector<double> out(static_cast<size_t>(g.n_nodes), 0.0);
      for (size_t i = 0; i < k; ++i) out[static_cast<size_t>(nodes[i])] = x[i];
      return out;
    }
  }
  throw std::runtime_error("eigenvector centrality did not converge; last residual " +
                           std::to_string(residual));
}

std::vector<double> pagerank(const StaticGraph& g, double gamma, double tol, int max_iter) {
  if (g.n_nodes == 0) throw std::invalid_argument("pagerank needs at least one node");
  if (!(gamma > 0.0) || gamma >= 1.0) throw std::invalid_argument("gamma must lie in (0, 1)");

  const auto n = static_cast<size_t>(g.n_nodes);
  std::vector<int32_t> active;
  for (int32_t v = 0; v < g.n_nodes; ++v)
    if (!g.adj[static_cast<size_t>(v)].empty()) active.push_back(v);
  const auto k = static_cast<double>(active.size());
  const auto N = static_cast<double>(g.n_nodes);

  // Degree-zero nodes share one fixed value pi0: their equation
  // pi0 = (1-gamma)/N + gamma * (N-k) * pi0 / N has a closed-form solution,
  // which also enters every active node's equation as the constant term.
  const double pi0 = (1.0 - gamma) / (N * (1.0 - gamma) + gamma * k);
  std::vector<double> out(n, pi0);
  if (active.empty()) return out;  // edgeless graph: uniform 1/N

  std::vector<double> p(active.size(), (1.0 - (N - k) * pi0) / k);
  std::vector<double> pn(active.size(), 0.0);
  std::vector<int32_t> local(n, -1);
  for (size_t i = 0; i < active.size(); ++i) local[static_cast<size_t>(active[i])] = static_cast<int32_t>(i);

  for (int iter = 0; iter < max_iter; ++iter) {
    double diff = 0.0;
    for (size_t i = 0; i < active.size(); ++i) {
      double sum = 0.0;
      for (const int32_t nb : g.adj[static_cast<size_t>(active[i])]) {
        const auto j = static_cast<size_t>(local[static_cast<size_t>(nb)]);
        sum += p[j] / static_cast<double>(g.adj[static_cast<size_t>(nb)].size());
      }
      pn[i] = pi0 + gamma * sum;
      diff += std::abs(pn[i] - p[i]);
    }
    p.swap(pn);
    if (diff < tol) {
      for (size_t i = 0; i < active.size(); ++i) out[static_cast<size_t>(active[i])] = p[i];
      return out;
    }
  }
  throw std::runtime_error("pagerank did not converge within the iteration limit");
}

std::vector<int64_t> temporal_hopcounts(std::span<const Contact> contacts, int32_t n_nodes,
                                        int32_t root, int64_t start_exclusive, int32_t hop_cap) {
  if (root < 0 || root >= n_nodes) throw std::invalid_argument("root out of range");
  const auto n = static_cast<size_t>(n_nodes);
  constexpr int64_t kInf = INT64_MAX;

  std::vector<int64_t> prev(n, kInf), next(n, kInf);
  std::vector<int64_t> hops(n, kUnreachableHops);
  prev[static_cast<size_t>(root)] = start_exclusive;
  hops[static_cast<size_t>(root)] = 0;
  for (int32_t layer = 1; layer <= hop_cap; ++layer) {
    next = prev;
    bool changed = false;
    for (const Contact& c : contacts) {
      const auto a = static_cast<size_t>(c.u);
      const auto b = static_cast<size_t>(c.v);
      if (prev[a] < c.t && c.t < next[b]) {
        next[b] = c.t;
        changed = true;
      }
      if (prev[b] < c.t && c.t < next[a]) {
        next[a] = c.t;
        changed = true;
      }
    }
    if (!changed) break;
    for (size_t v = 0; v < n; ++v)
      if (hops[v] == kUnreachableHops && next[v] != kInf) hops[v] = layer;
    prev.swap(next);
  }
  return hops;
}

double temporal_closeness(const TemporalNetwork& net, int32_t root, int64_t t0, int64_t len) {
  if (t0 < 0 || len < 0 || t0 + len > net.horizon)
    throw std::invalid_argument("observation window out of range");
  const auto hops = temporal_hopcounts(net.window(t0 + 1, t0 + len), net.n_nodes, root, t0,
                                       net.n_nodes - 1);
  double sum = 0.0;
  for (int32_t v = 0; v < net.n_nodes; ++v) {
    if (v == root) continue;
    const int64_t h = hops[static_cast<size_t>(v)];
    if (h != kUnreachableHops) sum += 1.0 / static_cast<double>(h);
  }
  return sum;
}

double temporal_closeness(const PartialTemporalNetwork& pnet) {
  const auto n = static_cast<int32_t>(pnet.members.size());
  std::vector<Contact> local;
  local.reserve(pnet.contacts.size());
  for (const Contact& c : pnet.contacts)
    local.push_back({pnet.local_index(c.u), pnet.local_index(c.v), c.t});
  const int32_t root_local = pnet.local_index(pnet.root);
  const auto hops = temporal_hopcounts(local, n, root_local, 0, std::max(n - 1, 1));
  double sum = 0.0;
  for (int32_t v = 0; v < n; ++v) {
    if (v == root_local) continue;
    const int64_t h = hops[static_cast<size_t>(v)];
    if (h != kUnreachableHops) sum += 1.0 / static_cast<double>(h);
  }
  return sum;
}

std::vector<double> evaluate_snapshot_metric(SnapshotMetric metric, const StaticGraph& g) {
  switch (metric) {
    case SnapshotMetric::kBetweenness: return betweenness(g);
    case SnapshotMetric::kCloseness: return closeness(g);
    case SnapshotMetric::kEigenvector:
      if (g.edge_count == 0) return std::vector<double>(static_cast<size_t>(g.n_nodes), 0.0);
      return eigenvector_centrality(g);
    case SnapshotMetric::kPagerank: return pagerank(g);
  }
  throw std::logic_error("unknown snapshot metric");
}

namespace {

std::vector<double> snapshot_average_impl(SnapshotMetric metric, int64_t t_begin, int64_t t_end,
                                          int32_t n_nodes,
                                          const std::function<StaticGraph(int64_t)>& at) {
  if (t_end < t_begin) throw std::invalid_argument("snapshot window is empty");
  std::vector<double> acc(static_cast<size_t>(n_nodes), 0.0);
  for (int64_t t = t_begin; t <= t_end; ++t) {
    const StaticGraph g = at(t);
    const std::vector<double> v = evaluate_snapshot_metric(metric, g);
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
  }
  const auto steps = static_cast<double>(t_end - t_begin + 1);
  for (double& v : acc) v /= steps;
  return acc;
}

}  // namespace

std::vector<double> snapshot_average(SnapshotMetric metric, const TemporalNetwork& net,
                                     int64_t t_begin, int64_t t_end) {
  if (t_begin < 1 || t_end > net.horizon)
    throw std::invalid_argument("snapshot window out of range");
  return snapshot_average_impl(metric, t_begin, t_end, net.n_nodes,
                               [&](int64_t t) { return snapshot_graph(net, t); });
}

std::vector<double> snapshot_average(SnapshotMetric metric, const PartialTemporalNetwork& pnet) {
  // A zero-length observation (short window times small observed fraction)
  // sees no snapshots at all; every member scores zero.
  if (pnet.window_len < 1) return std::vector<double>(pnet.members.size(), 0.0);
  return snapshot_average_impl(metric, 1, pnet.window_len,
                               static_cast<int32_t>(pnet.members.size()),
                               [&](int64_t t) { return snapshot_graph(pnet, t); });
}

}  // namespace tempo
