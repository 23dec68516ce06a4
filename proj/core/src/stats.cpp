#include "tempo/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "tempo/classic_metrics.hpp"
#include "tempo/csv.hpp"
#include "tempo/parallel.hpp"
#include "tempo/si.hpp"

namespace tempo {

std::vector<int64_t> start_time_grid(const TemporalNetwork& net,
                                     std::span<const double> fractions) {
  std::vector<int64_t> grid;
  for (const double f : fractions) {
    if (f < 0.0 || f >= 1.0) throw std::invalid_argument("start fractions must lie in [0, 1)");
    const auto t0 = static_cast<int64_t>(std::floor(f * static_cast<double>(net.horizon)));
    if (std::find(grid.begin(), grid.end(), t0) == grid.end()) grid.push_back(t0);
  }
  return grid;
}

DatasetStats dataset_report(const TemporalNetwork& net, std::span<const double> t0_fractions,
                            double tau_fraction) {
  if (net.n_nodes < 2 || net.contacts.empty())
    throw std::invalid_argument("dataset must carry nodes and contacts");
  if (!(tau_fraction > 0.0) || tau_fraction > 1.0)
    throw std::invalid_argument("tau fraction must lie in (0, 1]");

  DatasetStats s;
  s.n_nodes = net.n_nodes;
  s.n_contacts = static_cast<int64_t>(net.contacts.size());
  s.horizon = net.horizon;

  const AggregatedNetwork agg = aggregate(net, 1, net.horizon);
  s.link_density = 2.0 * static_cast<double>(agg.edge_count()) /
                   (static_cast<double>(net.n_nodes) * static_cast<double>(net.n_nodes - 1));

  // Share of degree-one nodes among active nodes, per snapshot.
  {
    double share_sum = 0.0;
    int64_t snapshots = 0;
    std::vector<int32_t> degree(static_cast<size_t>(net.n_nodes), 0);
    std::vector<int32_t> active;
    size_t i = 0;
    while (i < net.contacts.size()) {
      const int64_t t = net.contacts[i].t;
      size_t j = i;
      active.clear();
      while (j < net.contacts.size() && net.contacts[j].t == t) {
        const Contact& c = net.contacts[j];
        if (degree[static_cast<size_t>(c.u)]++ == 0) active.push_back(c.u);
        if (degree[static_cast<size_t>(c.v)]++ == 0) active.push_back(c.v);
        ++j;
      }
      int32_t ones = 0;
      for (const int32_t v : active)
        if (degree[static_cast<size_t>(v)] == 1) ++ones;
      share_sum += static_cast<double>(ones) / static_cast<double>(active.size());
      ++snapshots;
      for (const int32_t v : active) degree[static_cast<size_t>(v)] = 0;
      i = j;
    }
    // Steps without contacts (possible on non-compacted input) have no active
    // nodes and are skipped.
    s.degree1_snapshot_share = share_sum / static_cast<double>(snapshots);
  }

  // Share of ordered pairs whose shortest time-respecting path inside the
  // observation window has one hop or does not exist.
  {
    const auto tau = static_cast<int64_t>(std::floor(tau_fraction * static_cast<double>(net.horizon)));
    if (tau < 1) throw std::invalid_argument("window too short for the horizon");
    const auto grid = start_time_grid(net, t0_fractions);
    double window_sum = 0.0;
    int windows = 0;
    for (const int64_t t0 : grid) {
      if (t0 + tau > net.horizon) continue;
      const auto contacts = net.window(t0 + 1, t0 + tau);
      std::vector<int64_t> counts(static_cast<size_t>(net.n_nodes), 0);
      parallel_for(net.n_nodes, [&](int64_t root) {
        const auto hops = temporal_hopcounts(contacts, net.n_nodes, static_cast<int32_t>(root),
                                             t0, net.n_nodes - 1);
        int64_t hit = 0;
        for (int32_t v = 0; v < net.n_nodes; ++v) {
          if (v == root) continue;
          if (hops[static_cast<size_t>(v)] == 1 || hops[static_cast<size_t>(v)] == kUnreachableHops)
            ++hit;
        }
        counts[static_cast<size_t>(root)] = hit;
      });
      int64_t total = 0;
      for (const int64_t c : counts) total += c;
      window_sum += static_cast<double>(total) /
                    (static_cast<double>(net.n_nodes) * static_cast<double>(net.n_nodes - 1));
      ++windows;
    }
    if (windows == 0) throw std::invalid_argument("no feasible observation window");
    s.th_one_or_inf_share = window_sum / windows;
  }
  return s;
}

void add_mean_influence(DatasetStats& stats, const TemporalNetwork& net,
                        std::span<const double> betas, std::span<const double> t0_fractions,
                        double tau_fraction, int runs, uint64_t master_seed) {
  const auto tau = static_cast<int64_t>(std::floor(tau_fraction * static_cast<double>(net.horizon)));
  const auto grid = start_time_grid(net, t0_fractions);
  stats.mean_influence_per_beta.clear();
  for (const double beta : betas) {
    double sum = 0.0;
    int windows = 0;
    for (const int64_t t0 : grid) {
      if (t0 + tau > net.horizon) continue;
      const InfluenceVector iv = influence_all(net, {beta, t0, tau, runs, master_seed});
      double node_sum = 0.0;
      for (const double m : iv.mean) node_sum += m;
      sum += node_sum / static_cast<double>(net.n_nodes);
      ++windows;
    }
    if (windows == 0) throw std::invalid_argument("no feasible observation window");
    stats.mean_influence_per_beta.emplace_back(beta, sum / windows);
  }
}

void write_stats_csv(const std::string& path, const DatasetStats& stats) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "stat,value\n";
  out << "n_nodes," << stats.n_nodes << '\n';
  out << "n_contacts," << stats.n_contacts << '\n';
  out << "horizon," << stats.horizon << '\n';
  out << "link_density," << csv::format_double(stats.link_density) << '\n';
  out << "degree1_snapshot_share," << csv::format_double(stats.degree1_snapshot_share) << '\n';
  out << "th_one_or_inf_share," << csv::format_double(stats.th_one_or_inf_share) << '\n';
  for (const auto& [beta, mean] : stats.mean_influence_per_beta)
    out << "mean_influence_beta_" << csv::format_double(beta) << ','
        << csv::format_double(mean) << '\n';
  if (!out) throw std::runtime_error("failed while writing " + path);
}

}  // namespace tempo
