#include "tempo/walk_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tempo {

namespace {

void check_exact(double value) {
  if (value > kMaxExactCount)
    throw std::overflow_error("walk count exceeds the exact integer range of double");
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("alpha must lie in (0, 1]");
}

/// Contacts of a pnet rewritten to member-local indices (times unchanged).
std::vector<Contact> local_contacts(const PartialTemporalNetwork& p) {
  std::vector<Contact> out;
  out.reserve(p.contacts.size());
  for (const Contact& c : p.contacts)
    out.push_back({p.local_index(c.u), p.local_index(c.v), c.t});
  return out;
}

}  // namespace

double WalkCensus::count_of(int32_t node, int32_t hops, int64_t end_time) const {
  auto it = counts.find({node, hops, end_time});
  return it == counts.end() ? 0.0 : it->second;
}

double WalkCensus::total() const {
  double sum = 0.0;
  for (const auto& [key, count] : counts) {
    sum += count;
    check_exact(sum);
  }
  return sum;
}

std::map<int64_t, double> WalkCensus::totals_by_end_time() const {
  std::map<int64_t, double> totals;
  for (const auto& [key, count] : counts) totals[std::get<2>(key)] += count;
  return totals;
}

double weighted_degree_mass(const AggregatedNetwork& agg, int32_t root, int32_t m) {
  if (root < 0 || root >= agg.n_nodes) throw std::invalid_argument("root out of range");
  if (m < 1) throw std::invalid_argument("hop limit must be >= 1");

  const auto n = static_cast<size_t>(agg.n_nodes);
  std::vector<double> x(n, 1.0), y(n, 0.0);
  double mass = 0.0;
  for (int32_t k = 0; k < m; ++k) {
    for (size_t u = 0; u < n; ++u) {
      double sum = 0.0;
      for (const auto& [v, w] : agg.adj[u]) sum += static_cast<double>(w) * x[static_cast<size_t>(v)];
      check_exact(sum);
      y[u] = sum;
    }
    mass += y[static_cast<size_t>(root)];
    check_exact(mass);
    x.swap(y);
  }
  return mass;
}

WalkCensus walk_census(const PartialTemporalNetwork& pnet) {
  const auto n = pnet.members.size();
  const int32_t m = pnet.hop_limit;
  const int32_t root_local = pnet.local_index(pnet.root);
  const auto contacts = local_contacts(pnet);

  WalkCensus census;
  census.root = pnet.root;
  census.hop_limit = m;

  // cum[k][v]: walks of exactly k hops ending at v strictly before the step
  // being processed; cur[k][v] collects the counts for the current step.
  std::vector<std::vector<double>> cum(static_cast<size_t>(m) + 1, std::vector<double>(n, 0.0));
  std::vector<std::vector<double>> cur(static_cast<size_t>(m) + 1, std::vector<double>(n, 0.0));
  std::vector<std::vector<int32_t>> touched(static_cast<size_t>(m) + 1);

  auto bump = [&](int32_t k, int32_t v, double add) {
    auto& slot = cur[static_cast<size_t>(k)][static_cast<size_t>(v)];
    if (slot == 0.0) touched[static_cast<size_t>(k)].push_back(v);
    slot += add;
  };

  size_t i = 0;
  while (i < contacts.size()) {
    const int64_t t = contacts[i].t;
    size_t j = i;
    while (j < contacts.size() && contacts[j].t == t) ++j;

    for (size_t c = i; c < j; ++c) {
      const int32_t a = contacts[c].u;
      const int32_t b = contacts[c].v;
      if (a == root_local) bump(1, b, 1.0);
      if (b == root_local) bump(1, a, 1.0);
      for (int32_t k = 2; k <= m; ++k) {
        const double from_a = cum[static_cast<size_t>(k - 1)][static_cast<size_t>(a)];
        const double from_b = cum[static_cast<size_t>(k - 1)][static_cast<size_t>(b)];
        if (from_a > 0.0) bump(k, b, from_a);
        if (from_b > 0.0) bump(k, a, from_b);
      }
    }
    for (int32_t k = 1; k <= m; ++k) {
      auto& list = touched[static_cast<size_t>(k)];
      std::sort(list.begin(), list.end());
      for (const int32_t v : list) {
        double& slot = cur[static_cast<size_t>(k)][static_cast<size_t>(v)];
        check_exact(slot);
        census.counts[{pnet.members[static_cast<size_t>(v)], k, t}] = slot;
        double& acc = cum[static_cast<size_t>(k)][static_cast<size_t>(v)];
        acc += slot;
        check_exact(acc);
        slot = 0.0;
      }
      list.clear();
    }
    i = j;
  }
  return census;
}

double temporal_degree_mass(const WalkCensus& census) { return census.total(); }

double time_scaled_degree_mass(const WalkCensus& census, double alpha) {
  check_alpha(alpha);
  double sum = 0.0;
  for (const auto& [key, count] : census.counts)
    sum += count * std::pow(alpha, static_cast<double>(std::get<2>(key)));
  return sum;
}

int64_t EarliestArrival::arrival_of(int32_t parent_id) const {
  auto it = std::lower_bound(members.begin(), members.end(), parent_id);
  if (it == members.end() || *it != parent_id)
    throw std::invalid_argument("node is not a member of the observed network");
  return arrival[static_cast<size_t>(it - members.begin())];
}

EarliestArrival earliest_arrival(const PartialTemporalNetwork& pnet) {
  const auto n = pnet.members.size();
  const int32_t root_local = pnet.local_index(pnet.root);
  const auto contacts = local_contacts(pnet);
  constexpr int64_t kInf = EarliestArrival::kUnreachable;

  // Layer k holds the earliest arrival over walks of at most k hops; each
  // pass may only extend walks by one contact beyond the previous layer.
  std::vector<int64_t> prev(n, kInf), next(n, kInf);
  prev[static_cast<size_t>(root_local)] = 0;
  for (int32_t layer = 0; layer < pnet.hop_limit; ++layer) {
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
    prev.swap(next);
    if (!changed) break;
  }

  EarliestArrival ea;
  ea.root = pnet.root;
  ea.hop_limit = pnet.hop_limit;
  ea.members = pnet.members;
  ea.arrival = std::move(prev);
  return ea;
}

int64_t temporal_reachability(const EarliestArrival& ea) {
  int64_t reached = 0;
  for (size_t i = 0; i < ea.members.size(); ++i) {
    if (ea.members[i] == ea.root) continue;
    if (ea.arrival[i] != EarliestArrival::kUnreachable) ++reached;
  }
  return reached;
}

double time_scaled_reachability(const EarliestArrival& ea, double alpha) {
  check_alpha(alpha);
  double sum = 0.0;
  for (size_t i = 0; i < ea.members.size(); ++i) {
    if (ea.members[i] == ea.root) continue;
    if (ea.arrival[i] != EarliestArrival::kUnreachable)
      sum += std::pow(alpha, static_cast<double>(ea.arrival[i]));
  }
  return sum;
}

WalkCensus brute_force_walk_oracle(const PartialTemporalNetwork& pnet) {
  if (pnet.contacts.size() > 30)
    throw std::invalid_argument("oracle limited to 30 contacts");
  if (pnet.hop_limit > 4) throw std::invalid_argument("oracle limited to hop limits <= 4");

  WalkCensus census;
  census.root = pnet.root;
  census.hop_limit = pnet.hop_limit;

  // Every prefix of an enumerated contact sequence is itself a walk, so each
  // extension records one census entry.
  auto extend = [&](auto&& self, int32_t at, int64_t t_last, int32_t hops) -> void {
    if (hops == pnet.hop_limit) return;
    for (const Contact& c : pnet.contacts) {
      if (c.t <= t_last) continue;
      int32_t other;
      if (c.u == at)
        other = c.v;
      else if (c.v == at)
        other = c.u;
      else
        continue;
      census.counts[{other, hops + 1, c.t}] += 1.0;
      self(self, other, c.t, hops + 1);
    }
  };
  extend(extend, pnet.root, 0, 0);
  return census;
}

}  // namespace tempo
