#include "tempo/sweep.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "tempo/csv.hpp"
#include "tempo/evaluation.hpp"
#include "tempo/parallel.hpp"
#include "tempo/rng.hpp"
#include "tempo/si.hpp"
#include "tempo/stats.hpp"
#include "tempo/walk_metrics.hpp"

namespace tempo {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_walk_metric(const std::string& name) {
  return name == metric_name::kDegreeMass || name == metric_name::kTemporalDegreeMass ||
         name == metric_name::kTemporalReachability;
}

bool snapshot_metric_of(const std::string& name, SnapshotMetric* out) {
  if (name == metric_name::kBetweenness) {
    *out = SnapshotMetric::kBetweenness;
  } else if (name == metric_name::kCloseness) {
    *out = SnapshotMetric::kCloseness;
  } else if (name == metric_name::kEigenvector) {
    *out = SnapshotMetric::kEigenvector;
  } else if (name == metric_name::kPagerank) {
    *out = SnapshotMetric::kPagerank;
  } else {
    return false;
  }
  return true;
}

void validate_metric_names(const std::vector<std::string>& names) {
  const auto known = all_metric_names();
  for (const auto& name : names) {
    SnapshotMetric unused;
    const bool ok = is_walk_metric(name) || snapshot_metric_of(name, &unused) ||
                    name == metric_name::kTemporalCloseness;
    if (!ok || std::find(known.begin(), known.end(), name) == known.end()) {
      throw std::invalid_argument("unknown metric name: " + name);
    }
  }
}

/// One prediction vector of the grid, identified by the row key fields that
/// do not depend on beta.
struct Cell {
  std::string metric;
  std::string mode;
  double phi = kNaN;
  int m = -1;
  double alpha = kNaN;
  std::vector<double> values;
};

/// Work shared by all cells of one (phi, m) pair: which per-root features
/// have to be computed and where their outputs go.
struct PartialPlan {
  double phi = 0.0;
  int m = 0;
  int64_t phi_len = 0;
  int degree_mass_cell = -1;
  std::vector<std::pair<double, int>> census_alpha_cells;   // (alpha, cell)
  std::vector<std::pair<double, int>> arrival_alpha_cells;  // (alpha, cell)
  int betweenness_cell = -1;
  int closeness_cell = -1;
  int eigenvector_cell = -1;
  int pagerank_cell = -1;
  int betweenness_snap_cell = -1;
  int closeness_snap_cell = -1;
  int eigenvector_snap_cell = -1;
  int pagerank_snap_cell = -1;
  int temporal_closeness_cell = -1;

  bool needs_walks() const {
    return degree_mass_cell >= 0 || !census_alpha_cells.empty() || !arrival_alpha_cells.empty();
  }
  bool needs_aggregated() const {
    return degree_mass_cell >= 0 || betweenness_cell >= 0 || closeness_cell >= 0 ||
           eigenvector_cell >= 0 || pagerank_cell >= 0;
  }
  bool needs_snapshots() const {
    return betweenness_snap_cell >= 0 || closeness_snap_cell >= 0 ||
           eigenvector_snap_cell >= 0 || pagerank_snap_cell >= 0;
  }
};

std::vector<double> eigenvector_or_zeros(const StaticGraph& g) {
  if (g.edge_count == 0) return std::vector<double>(g.n_nodes, 0.0);
  return eigenvector_centrality(g);
}

std::vector<double> full_aggregated_values(const std::string& metric, const StaticGraph& g) {
  SnapshotMetric sm;
  if (!snapshot_metric_of(metric, &sm)) {
    throw std::logic_error("full-aggregated mode undefined for metric " + metric);
  }
  if (sm == SnapshotMetric::kEigenvector) return eigenvector_or_zeros(g);
  return evaluate_snapshot_metric(sm, g);
}

/// Builds the beta-independent prediction cells of one start time in the
/// canonical order (metric, then mode, then phi, then m, then alpha — each in
/// configuration order) and fills their values.
std::vector<Cell> build_cells(const TemporalNetwork& net, const SweepConfig& cfg, int64_t t0,
                              int64_t tau) {
  const int32_t n = net.n_nodes;
  std::vector<Cell> cells;
  std::map<std::pair<double, int>, PartialPlan> plans;  // keyed by (phi, m)

  auto plan_of = [&](double phi, int m) -> PartialPlan& {
    auto [it, inserted] = plans.try_emplace({phi, m});
    if (inserted) {
      it->second.phi = phi;
      it->second.m = m;
      it->second.phi_len = static_cast<int64_t>(std::floor(phi * static_cast<double>(tau)));
    }
    return it->second;
  };
  auto add_cell = [&](std::string mode, double phi, int m, double alpha,
                      const std::string& metric) {
    cells.push_back(Cell{metric, std::move(mode), phi, m, alpha,
                         std::vector<double>(static_cast<size_t>(n), 0.0)});
    return static_cast<int>(cells.size()) - 1;
  };

  const bool want_partial_modes =
      std::find(cfg.modes.begin(), cfg.modes.end(), DerivationMode::kPartialAggregated) !=
          cfg.modes.end() ||
      std::find(cfg.modes.begin(), cfg.modes.end(), DerivationMode::kPartialTemporal) !=
          cfg.modes.end();
  (void)want_partial_modes;

  // Indices of full-mode cells that are filled after planning.
  struct FullCell {
    int cell = -1;
    std::string metric;
    DerivationMode mode;
  };
  std::vector<FullCell> full_cells;

  for (const auto& metric : cfg.metrics) {
    if (is_walk_metric(metric)) {
      // The proposed walk scores are defined on the ego observation; the mode
      // column carries the single token "partial".
      for (double phi : cfg.phis) {
        for (int m : cfg.hop_limits) {
          PartialPlan& plan = plan_of(phi, m);
          if (metric == metric_name::kDegreeMass) {
            plan.degree_mass_cell = add_cell("partial", phi, m, kNaN, metric);
          } else if (metric == metric_name::kTemporalDegreeMass) {
            for (double alpha : cfg.alphas) {
              plan.census_alpha_cells.emplace_back(alpha, add_cell("partial", phi, m, alpha, metric));
            }
          } else {
            for (double alpha : cfg.alphas) {
              plan.arrival_alpha_cells.emplace_back(alpha,
                                                    add_cell("partial", phi, m, alpha, metric));
            }
          }
        }
      }
      continue;
    }
    const bool is_tc = metric == metric_name::kTemporalCloseness;
    for (DerivationMode mode : cfg.modes) {
      if (is_tc && (mode == DerivationMode::kFullAggregated ||
                    mode == DerivationMode::kPartialAggregated)) {
        continue;  // temporal closeness has no aggregated derivation
      }
      if (mode == DerivationMode::kFullAggregated || mode == DerivationMode::kFullTemporal) {
        const int idx = add_cell(to_string(mode), kNaN, -1, kNaN, metric);
        full_cells.push_back({idx, metric, mode});
        continue;
      }
      for (double phi : cfg.phis) {
        for (int m : cfg.hop_limits) {
          PartialPlan& plan = plan_of(phi, m);
          const int idx = add_cell(to_string(mode), phi, m, kNaN, metric);
          if (mode == DerivationMode::kPartialAggregated) {
            if (metric == metric_name::kBetweenness) plan.betweenness_cell = idx;
            if (metric == metric_name::kCloseness) plan.closeness_cell = idx;
            if (metric == metric_name::kEigenvector) plan.eigenvector_cell = idx;
            if (metric == metric_name::kPagerank) plan.pagerank_cell = idx;
          } else {
            if (is_tc) {
              plan.temporal_closeness_cell = idx;
            } else {
              if (metric == metric_name::kBetweenness) plan.betweenness_snap_cell = idx;
              if (metric == metric_name::kCloseness) plan.closeness_snap_cell = idx;
              if (metric == metric_name::kEigenvector) plan.eigenvector_snap_cell = idx;
              if (metric == metric_name::kPagerank) plan.pagerank_snap_cell = idx;
            }
          }
        }
      }
    }
  }

  // Full modes: one whole-network computation per cell.
  if (!full_cells.empty()) {
    StaticGraph window_graph;
    bool have_graph = false;
    for (const auto& fc : full_cells) {
      Cell& cell = cells[static_cast<size_t>(fc.cell)];
      if (fc.mode == DerivationMode::kFullAggregated) {
        if (!have_graph) {
          window_graph = make_static(aggregate(net, t0 + 1, t0 + tau));
          have_graph = true;
        }
        cell.values = full_aggregated_values(fc.metric, window_graph);
      } else if (fc.metric == metric_name::kTemporalCloseness) {
        std::vector<double>& out = cell.values;
        parallel_for(static_cast<size_t>(n), [&](size_t r) {
          out[r] = temporal_closeness(net, static_cast<int32_t>(r), t0, tau);
        });
      } else {
        SnapshotMetric sm;
        snapshot_metric_of(fc.metric, &sm);
        cell.values = snapshot_average(sm, net, t0 + 1, t0 + tau);
      }
    }
  }

  // Partial modes: every root observes its own ego network once per (phi, m).
  if (!plans.empty()) {
    std::vector<const PartialPlan*> plan_list;
    plan_list.reserve(plans.size());
    for (const auto& [key, plan] : plans) plan_list.push_back(&plan);

    parallel_for(static_cast<size_t>(n), [&](size_t r) {
      const auto root = static_cast<int32_t>(r);
      for (const PartialPlan* plan : plan_list) {
        const PartialTemporalNetwork pnet =
            extract_partial(net, root, t0, plan->phi_len, plan->m);
        const auto local_n = static_cast<int32_t>(pnet.members.size());
        const int32_t local_root = pnet.local_index(root);

        if (plan->needs_walks()) {
          if (plan->degree_mass_cell >= 0 || !plan->census_alpha_cells.empty()) {
            if (plan->degree_mass_cell >= 0) {
              std::vector<Contact> local = pnet.contacts;
              for (Contact& c : local) {
                c.u = pnet.local_index(c.u);
                c.v = pnet.local_index(c.v);
              }
              const AggregatedNetwork agg = aggregate(local_n, local);
              cells[static_cast<size_t>(plan->degree_mass_cell)].values[r] =
                  weighted_degree_mass(agg, local_root, plan->m);
            }
            if (!plan->census_alpha_cells.empty()) {
              const WalkCensus census = walk_census(pnet);
              const auto by_time = census.totals_by_end_time();
              for (const auto& [alpha, idx] : plan->census_alpha_cells) {
                double sum = 0.0;
                for (const auto& [end_time, count] : by_time) {
                  sum += count * std::pow(alpha, static_cast<double>(end_time));
                }
                cells[static_cast<size_t>(idx)].values[r] = sum;
              }
            }
          }
          if (!plan->arrival_alpha_cells.empty()) {
            const EarliestArrival ea = earliest_arrival(pnet);
            for (const auto& [alpha, idx] : plan->arrival_alpha_cells) {
              cells[static_cast<size_t>(idx)].values[r] = time_scaled_reachability(ea, alpha);
            }
          }
        }

        if (plan->betweenness_cell >= 0 || plan->closeness_cell >= 0 ||
            plan->eigenvector_cell >= 0 || plan->pagerank_cell >= 0) {
          std::vector<Contact> local = pnet.contacts;
          for (Contact& c : local) {
            c.u = pnet.local_index(c.u);
            c.v = pnet.local_index(c.v);
          }
          const StaticGraph g = make_static(aggregate(local_n, local));
          if (plan->betweenness_cell >= 0) {
            cells[static_cast<size_t>(plan->betweenness_cell)].values[r] =
                betweenness(g)[static_cast<size_t>(local_root)];
          }
          if (plan->closeness_cell >= 0) {
            cells[static_cast<size_t>(plan->closeness_cell)].values[r] =
                closeness(g)[static_cast<size_t>(local_root)];
          }
          if (plan->eigenvector_cell >= 0) {
            cells[static_cast<size_t>(plan->eigenvector_cell)].values[r] =
                eigenvector_or_zeros(g)[static_cast<size_t>(local_root)];
          }
          if (plan->pagerank_cell >= 0) {
            cells[static_cast<size_t>(plan->pagerank_cell)].values[r] =
                pagerank(g)[static_cast<size_t>(local_root)];
          }
        }

        if (plan->needs_snapshots()) {
          auto fill = [&](int idx, SnapshotMetric sm) {
            if (idx < 0) return;
            cells[static_cast<size_t>(idx)].values[r] =
                snapshot_average(sm, pnet)[static_cast<size_t>(local_root)];
          };
          fill(plan->betweenness_snap_cell, SnapshotMetric::kBetweenness);
          fill(plan->closeness_snap_cell, SnapshotMetric::kCloseness);
          fill(plan->eigenvector_snap_cell, SnapshotMetric::kEigenvector);
          fill(plan->pagerank_snap_cell, SnapshotMetric::kPagerank);
        }
        if (plan->temporal_closeness_cell >= 0) {
          cells[static_cast<size_t>(plan->temporal_closeness_cell)].values[r] =
              temporal_closeness(pnet);
        }
      }
    });
  }

  return cells;
}

uint64_t mix(uint64_t h, uint64_t v) { return splitmix64(h ^ splitmix64(v)); }

uint64_t mix_double(uint64_t h, double v) { return mix(h, std::bit_cast<uint64_t>(v)); }

uint64_t mix_string(uint64_t h, const std::string& s) {
  uint64_t fnv = 1469598103934665603ULL;
  for (unsigned char c : s) {
    fnv ^= c;
    fnv *= 1099511628211ULL;
  }
  return mix(h, fnv);
}

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return std::string(buf);
}

std::string resolve_cache_dir(const SweepConfig& cfg, const std::string& output_csv) {
  if (cfg.cache_dir == "none") return {};
  if (!cfg.cache_dir.empty()) return cfg.cache_dir;
  if (!output_csv.empty()) return output_csv + ".cache";
  return {};
}

InfluenceVector cached_influence(const TemporalNetwork& net, const SweepConfig& cfg, int64_t t0,
                                 int64_t tau, double beta, const std::string& cache_dir) {
  SiConfig si{beta, t0, tau, cfg.runs, cfg.master_seed};
  if (cache_dir.empty()) return influence_all(net, si);

  uint64_t key = content_hash(net);
  key = mix(key, static_cast<uint64_t>(t0));
  key = mix(key, static_cast<uint64_t>(tau));
  key = mix_double(key, beta);
  key = mix(key, static_cast<uint64_t>(cfg.runs));
  key = mix(key, cfg.master_seed);
  const fs::path path = fs::path(cache_dir) / ("influence-" + hex64(key) + ".csv");

  if (fs::exists(path)) {
    InfluenceVector iv = read_influence_csv(path.string());
    const int expected_runs = beta >= 1.0 ? 1 : cfg.runs;
    if (iv.beta == beta && iv.t0 == t0 && iv.tau == tau && iv.runs == expected_runs &&
        iv.mean.size() == static_cast<size_t>(net.n_nodes)) {
      return iv;
    }
  }
  InfluenceVector iv = influence_all(net, si);
  fs::create_directories(cache_dir);
  write_influence_csv(path.string(), iv);
  return iv;
}

std::string format_row(const SweepRow& row) {
  std::ostringstream out;
  out << row.metric << ',' << row.mode << ',' << csv::format_double(row.beta) << ',' << row.t0
      << ',' << csv::format_double(row.phi) << ',';
  if (row.m >= 0) out << row.m;
  out << ',' << csv::format_double(row.alpha) << ',' << csv::format_double(row.qk) << ','
      << csv::format_double(row.qr) << ',' << row.runs << ',' << row.seed << '\n';
  return out.str();
}

json checkpoint_state(const std::string& fingerprint, const std::vector<int64_t>& completed,
                      const std::vector<int64_t>& skipped, bool complete) {
  json state;
  state["fingerprint"] = fingerprint;
  state["completed"] = completed;
  state["skipped"] = skipped;
  state["complete"] = complete;
  return state;
}

void write_checkpoint(const std::string& path, const json& state) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write checkpoint file: " + path);
  out << state.dump(2) << '\n';
}

}  // namespace

std::vector<std::string> all_metric_names() {
  return {metric_name::kDegreeMass,  metric_name::kTemporalDegreeMass,
          metric_name::kTemporalReachability, metric_name::kBetweenness,
          metric_name::kCloseness,   metric_name::kEigenvector,
          metric_name::kPagerank,    metric_name::kTemporalCloseness};
}

std::vector<double> prediction_vector(const TemporalNetwork& net, const std::string& metric,
                                      const std::string& mode, int64_t t0, int64_t tau,
                                      double phi, int m, double alpha) {
  validate_metric_names({metric});
  if (tau < 1) throw std::invalid_argument("prediction_vector: window shorter than one step");
  if (t0 < 0 || t0 + tau > net.horizon) {
    throw std::invalid_argument("prediction_vector: window outside the recorded horizon");
  }
  if (!(phi > 0.0 && phi <= 1.0)) {
    throw std::invalid_argument("prediction_vector: phi outside (0, 1]");
  }
  if (m < 1) throw std::invalid_argument("prediction_vector: hop limit must be >= 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("prediction_vector: alpha outside (0, 1]");
  }
  SweepConfig cfg;
  cfg.metrics = {metric};
  cfg.phis = {phi};
  cfg.hop_limits = {m};
  cfg.alphas = {alpha};
  if (mode == "partial") {
    if (!is_walk_metric(metric)) {
      throw std::invalid_argument("mode 'partial' is reserved for the walk scores");
    }
  } else {
    if (is_walk_metric(metric)) {
      throw std::invalid_argument("walk scores only support mode 'partial'");
    }
    cfg.modes = {mode_from_string(mode)};
  }
  const std::vector<Cell> cells = build_cells(net, cfg, t0, tau);
  if (cells.size() != 1) {
    throw std::invalid_argument("metric " + metric + " has no derivation '" + mode + "'");
  }
  return cells[0].values;
}

std::string sweep_fingerprint(const TemporalNetwork& net, const SweepConfig& cfg) {
  uint64_t h = content_hash(net);
  for (double b : cfg.betas) h = mix_double(h, b);
  h = mix(h, 0x01);
  for (double f : cfg.t0_fractions) h = mix_double(h, f);
  h = mix_double(h, cfg.tau_fraction);
  for (double p : cfg.phis) h = mix_double(h, p);
  h = mix(h, 0x02);
  for (int m : cfg.hop_limits) h = mix(h, static_cast<uint64_t>(m));
  h = mix(h, 0x03);
  for (double a : cfg.alphas) h = mix_double(h, a);
  h = mix(h, static_cast<uint64_t>(cfg.runs));
  h = mix(h, cfg.master_seed);
  h = mix_double(h, cfg.f_percent);
  for (const auto& m : cfg.metrics) h = mix_string(h, m);
  for (DerivationMode m : cfg.modes) h = mix_string(h, to_string(m));
  return hex64(h);
}

SweepResult run_sweep(const TemporalNetwork& net, const SweepConfig& cfg,
                      const std::string& output_csv, bool resume) {
  if (cfg.betas.empty() || cfg.t0_fractions.empty() || cfg.metrics.empty() || cfg.modes.empty() ||
      cfg.phis.empty() || cfg.hop_limits.empty() || cfg.alphas.empty()) {
    throw std::invalid_argument("run_sweep: every grid dimension must be nonempty");
  }
  if (cfg.runs < 1) throw std::invalid_argument("run_sweep: runs must be positive");
  if (!(cfg.f_percent > 0.0 && cfg.f_percent <= 100.0)) {
    throw std::invalid_argument("run_sweep: f_percent must be in (0, 100]");
  }
  validate_metric_names(cfg.metrics);
  for (double beta : cfg.betas) {
    if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("run_sweep: beta outside (0, 1]");
  }
  for (int m : cfg.hop_limits) {
    if (m < 1) throw std::invalid_argument("run_sweep: hop limits must be >= 1");
  }
  for (double phi : cfg.phis) {
    if (!(phi > 0.0 && phi <= 1.0)) throw std::invalid_argument("run_sweep: phi outside (0, 1]");
  }
  for (double a : cfg.alphas) {
    if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("run_sweep: alpha outside (0, 1]");
  }
  const auto tau = static_cast<int64_t>(std::floor(cfg.tau_fraction *
                                                   static_cast<double>(net.horizon)));
  if (tau < 1) {
    throw std::invalid_argument("run_sweep: spreading window shorter than one step");
  }

  SweepResult result;
  std::vector<int64_t> feasible;
  for (int64_t t0 : start_time_grid(net, cfg.t0_fractions)) {
    if (t0 + tau <= net.horizon) {
      feasible.push_back(t0);
    } else {
      result.skipped_starts.push_back(t0);
      std::fprintf(stderr, "run_sweep: skipping start time %lld (window exceeds horizon %lld)\n",
                   static_cast<long long>(t0), static_cast<long long>(net.horizon));
    }
  }

  const std::string fingerprint = sweep_fingerprint(net, cfg);
  const std::string checkpoint_path = output_csv.empty() ? "" : output_csv + ".checkpoint.json";
  const std::string cache_dir = resolve_cache_dir(cfg, output_csv);

  std::set<int64_t> done;
  bool fresh = true;
  if (!output_csv.empty() && resume && fs::exists(checkpoint_path) && fs::exists(output_csv)) {
    std::ifstream in(checkpoint_path);
    json state = json::parse(in, nullptr, false);
    if (!state.is_discarded() && state.value("fingerprint", "") == fingerprint) {
      for (const auto& t : state["completed"]) done.insert(t.get<int64_t>());
      result.rows = read_sweep_csv(output_csv);
      fresh = false;
    }
  }
  if (!output_csv.empty() && fresh) {
    std::ofstream out(output_csv, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write results file: " + output_csv);
    out << kSweepCsvHeader << '\n';
  }

  int blocks_this_call = 0;
  bool stopped_early = false;
  for (int64_t t0 : feasible) {
    if (done.count(t0)) continue;
    if (cfg.max_t0_blocks > 0 && blocks_this_call >= cfg.max_t0_blocks) {
      stopped_early = true;
      break;
    }

    const std::vector<Cell> cells = build_cells(net, cfg, t0, tau);
    std::vector<SweepRow> block;
    block.reserve(cfg.betas.size() * cells.size());
    for (double beta : cfg.betas) {
      const InfluenceVector influence = cached_influence(net, cfg, t0, tau, beta, cache_dir);
      for (const Cell& cell : cells) {
        SweepRow row;
        row.metric = cell.metric;
        row.mode = cell.mode;
        row.beta = beta;
        row.t0 = t0;
        row.phi = cell.phi;
        row.m = cell.m;
        row.alpha = cell.alpha;
        try {
          row.qk = kendall_tau_b(cell.values, influence.mean).tau;
        } catch (const std::domain_error&) {
          row.qk = kNaN;  // constant ranking on either side
        }
        row.qr = recognition_rate(cell.values, influence.mean, cfg.f_percent);
        row.runs = influence.runs;
        row.seed = cfg.master_seed;
        block.push_back(std::move(row));
      }
    }

    if (!output_csv.empty()) {
      std::ofstream out(output_csv, std::ios::app);
      if (!out) throw std::runtime_error("cannot append to results file: " + output_csv);
      for (const SweepRow& row : block) out << format_row(row);
    }
    for (SweepRow& row : block) result.rows.push_back(std::move(row));
    done.insert(t0);
    ++blocks_this_call;

    if (!checkpoint_path.empty()) {
      std::vector<int64_t> completed(done.begin(), done.end());
      write_checkpoint(checkpoint_path, checkpoint_state(fingerprint, completed,
                                                         result.skipped_starts, false));
    }
  }

  if (!checkpoint_path.empty() && !stopped_early) {
    std::vector<int64_t> completed(done.begin(), done.end());
    write_checkpoint(checkpoint_path,
                     checkpoint_state(fingerprint, completed, result.skipped_starts, true));
  }
  return result;
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write results file: " + path);
  out << kSweepCsvHeader << '\n';
  for (const SweepRow& row : rows) out << format_row(row);
}

std::vector<SweepRow> read_sweep_csv(const std::string& path) {
  const auto table = csv::read_table(path);
  if (table.empty()) throw std::runtime_error("results file is empty: " + path);
  {
    std::ostringstream header;
    for (size_t i = 0; i < table[0].size(); ++i) {
      if (i) header << ',';
      header << table[0][i];
    }
    if (header.str() != kSweepCsvHeader) {
      throw std::runtime_error("unexpected results header in " + path);
    }
  }
  std::vector<SweepRow> rows;
  rows.reserve(table.size() - 1);
  for (size_t i = 1; i < table.size(); ++i) {
    const auto& fields = table[i];
    if (fields.size() != 11) {
      throw std::runtime_error("malformed results row in " + path + " at line " +
                               std::to_string(i + 1));
    }
    SweepRow row;
    row.metric = fields[0];
    row.mode = fields[1];
    row.beta = csv::parse_double(fields[2]);
    row.t0 = csv::parse_int(fields[3]);
    row.phi = csv::parse_double(fields[4]);
    row.m = fields[5].empty() ? -1 : static_cast<int>(csv::parse_int(fields[5]));
    row.alpha = csv::parse_double(fields[6]);
    row.qk = csv::parse_double(fields[7]);
    row.qr = csv::parse_double(fields[8]);
    row.runs = static_cast<int>(csv::parse_int(fields[9]));
    row.seed = static_cast<uint64_t>(csv::parse_int(fields[10]));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<BestRow> best_quality(const std::vector<SweepRow>& rows) {
  struct Candidate {
    int m = -1;
    double alpha = kNaN;
    std::vector<double> qk;
    std::vector<double> qr;
  };
  struct Group {
    std::string metric;
    std::string mode;
    double beta = 0.0;
    double phi = kNaN;
    std::vector<Candidate> candidates;
    std::map<std::pair<int, std::string>, size_t> index;
    size_t t0_count = 0;
  };

  std::vector<Group> groups;
  std::map<std::string, size_t> group_index;
  std::set<int64_t> t0_seen;
  for (const SweepRow& row : rows) {
    t0_seen.insert(row.t0);
    const std::string gkey = row.metric + "|" + row.mode + "|" + csv::format_double(row.beta) +
                             "|" + csv::format_double(row.phi);
    auto [git, ginserted] = group_index.try_emplace(gkey, groups.size());
    if (ginserted) {
      groups.push_back(Group{row.metric, row.mode, row.beta, row.phi, {}, {}, 0});
    }
    Group& group = groups[git->second];
    const std::pair<int, std::string> ckey{row.m, csv::format_double(row.alpha)};
    auto [cit, cinserted] = group.index.try_emplace(ckey, group.candidates.size());
    if (cinserted) {
      group.candidates.push_back(Candidate{row.m, row.alpha, {}, {}});
    }
    Candidate& cand = group.candidates[cit->second];
    cand.qk.push_back(row.qk);
    cand.qr.push_back(row.qr);
  }

  std::vector<BestRow> best;
  best.reserve(groups.size());
  for (Group& group : groups) {
    group.t0_count = t0_seen.size();
    BestRow out;
    out.metric = group.metric;
    out.mode = group.mode;
    out.beta = group.beta;
    out.phi = group.phi;
    out.qk = kNaN;
    out.qk_alpha = kNaN;
    out.qk_excluded = static_cast<int>(group.t0_count);
    out.qr = kNaN;
    out.qr_alpha = kNaN;

    bool have_qk = false;
    bool have_qr = false;
    for (const Candidate& cand : group.candidates) {
      StartAverage qk_avg;
      bool qk_defined = true;
      try {
        qk_avg = average_over_starts(cand.qk);
      } catch (const std::runtime_error&) {
        qk_defined = false;  // every start time had an undefined correlation
      }
      const StartAverage qr_avg = average_over_starts(cand.qr);

      auto prefer = [&](double value, double incumbent, bool have, int inc_m, double inc_alpha) {
        if (!have) return true;
        if (value > incumbent) return true;
        if (value < incumbent) return false;
        if (cand.m != inc_m) return cand.m < inc_m;
        return cand.alpha > inc_alpha;
      };
      if (qk_defined && prefer(qk_avg.mean, out.qk, have_qk, out.qk_m, out.qk_alpha)) {
        out.qk = qk_avg.mean;
        out.qk_m = cand.m;
        out.qk_alpha = cand.alpha;
        out.qk_excluded = qk_avg.excluded;
        have_qk = true;
      }
      if (prefer(qr_avg.mean, out.qr, have_qr, out.qr_m, out.qr_alpha)) {
        out.qr = qr_avg.mean;
        out.qr_m = cand.m;
        out.qr_alpha = cand.alpha;
        have_qr = true;
      }
    }
    best.push_back(std::move(out));
  }
  return best;
}

void write_best_csv(const std::string& path, const std::vector<BestRow>& rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write best-quality file: " + path);
  out << "metric,mode,beta,phi,Qk,Qk_m,Qk_alpha,Qk_excluded,Qr,Qr_m,Qr_alpha\n";
  for (const BestRow& row : rows) {
    out << row.metric << ',' << row.mode << ',' << csv::format_double(row.beta) << ','
        << csv::format_double(row.phi) << ',' << csv::format_double(row.qk) << ',';
    if (row.qk_m >= 0) out << row.qk_m;
    out << ',' << csv::format_double(row.qk_alpha) << ',' << row.qk_excluded << ','
        << csv::format_double(row.qr) << ',';
    if (row.qr_m >= 0) out << row.qr_m;
    out << ',' << csv::format_double(row.qr_alpha) << '\n';
  }
}

std::vector<RandomizedRow> randomization_study(const TemporalNetwork& net,
                                               const SweepConfig& cfg, int replicas) {
  if (replicas < 1) throw std::invalid_argument("randomization_study: replicas must be >= 1");

  std::vector<std::vector<SweepRow>> all;
  all.reserve(static_cast<size_t>(replicas));
  for (int r = 0; r < replicas; ++r) {
    Rng rng = Rng::stream(cfg.master_seed, stream_role::kShuffle, static_cast<uint64_t>(r));
    const TemporalNetwork shuffled = shuffle_timestamps(net, rng);
    all.push_back(run_sweep(shuffled, cfg).rows);
    if (all.back().size() != all.front().size()) {
      throw std::logic_error("randomization_study: replica row counts differ");
    }
  }

  const size_t n_rows = all.front().size();
  std::vector<RandomizedRow> out;
  out.reserve(n_rows);
  for (size_t i = 0; i < n_rows; ++i) {
    const SweepRow& key = all.front()[i];
    RandomizedRow row;
    row.metric = key.metric;
    row.mode = key.mode;
    row.beta = key.beta;
    row.t0 = key.t0;
    row.phi = key.phi;
    row.m = key.m;
    row.alpha = key.alpha;
    row.replicas = replicas;

    double qk_sum = 0.0, qk_sq = 0.0;
    int qk_n = 0;
    double qr_sum = 0.0, qr_sq = 0.0;
    for (const auto& rows : all) {
      const SweepRow& cell = rows[i];
      if (cell.metric != key.metric || cell.mode != key.mode || cell.t0 != key.t0 ||
          cell.m != key.m) {
        throw std::logic_error("randomization_study: replica rows are misaligned");
      }
      if (std::isfinite(cell.qk)) {
        qk_sum += cell.qk;
        qk_sq += cell.qk * cell.qk;
        ++qk_n;
      }
      qr_sum += cell.qr;
      qr_sq += cell.qr * cell.qr;
    }
    row.qk_defined = qk_n;
    if (qk_n > 0) {
      row.qk_mean = qk_sum / qk_n;
      row.qk_std =
          qk_n > 1 ? std::sqrt(std::max(0.0, (qk_sq - qk_sum * qk_sum / qk_n) / (qk_n - 1)))
                   : 0.0;
    } else {
      row.qk_mean = kNaN;
      row.qk_std = kNaN;
    }
    row.qr_mean = qr_sum / replicas;
    row.qr_std = replicas > 1
                     ? std::sqrt(std::max(0.0, (qr_sq - qr_sum * qr_sum / replicas) /
                                                   (replicas - 1)))
                     : 0.0;
    out.push_back(std::move(row));
  }
  return out;
}

void write_randomized_csv(const std::string& path, const std::vector<RandomizedRow>& rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write randomization file: " + path);
  out << "metric,mode,beta,t0,phi,m,alpha,Qk_mean,Qk_std,Qk_defined,Qr_mean,Qr_std,replicas\n";
  for (const RandomizedRow& row : rows) {
    out << row.metric << ',' << row.mode << ',' << csv::format_double(row.beta) << ',' << row.t0
        << ',' << csv::format_double(row.phi) << ',';
    if (row.m >= 0) out << row.m;
    out << ',' << csv::format_double(row.alpha) << ',' << csv::format_double(row.qk_mean) << ','
        << csv::format_double(row.qk_std) << ',' << row.qk_defined << ','
        << csv::format_double(row.qr_mean) << ',' << csv::format_double(row.qr_std) << ','
        << row.replicas << '\n';
  }
}

SweepConfig sweep_config_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json doc = json::parse(in);

  SweepConfig cfg;
  if (doc.contains("dataset")) cfg.dataset = doc["dataset"].get<std::string>();
  if (doc.contains("betas")) cfg.betas = doc["betas"].get<std::vector<double>>();
  if (doc.contains("t0_fractions")) {
    cfg.t0_fractions = doc["t0_fractions"].get<std::vector<double>>();
  }
  if (doc.contains("tau_fraction")) cfg.tau_fraction = doc["tau_fraction"].get<double>();
  if (doc.contains("phis")) cfg.phis = doc["phis"].get<std::vector<double>>();
  if (doc.contains("hop_limits")) cfg.hop_limits = doc["hop_limits"].get<std::vector<int>>();
  if (doc.contains("alphas")) cfg.alphas = doc["alphas"].get<std::vector<double>>();
  if (doc.contains("runs")) cfg.runs = doc["runs"].get<int>();
  if (doc.contains("master_seed")) cfg.master_seed = doc["master_seed"].get<uint64_t>();
  if (doc.contains("f_percent")) cfg.f_percent = doc["f_percent"].get<double>();
  if (doc.contains("metrics")) cfg.metrics = doc["metrics"].get<std::vector<std::string>>();
  if (doc.contains("modes")) {
    cfg.modes.clear();
    for (const auto& token : doc["modes"]) {
      cfg.modes.push_back(mode_from_string(token.get<std::string>()));
    }
  }
  if (doc.contains("replicas")) cfg.replicas = doc["replicas"].get<int>();
  if (doc.contains("cache_dir")) cfg.cache_dir = doc["cache_dir"].get<std::string>();
  if (doc.contains("max_t0_blocks")) cfg.max_t0_blocks = doc["max_t0_blocks"].get<int>();
  validate_metric_names(cfg.metrics);
  return cfg;
}

std::string sweep_config_to_json(const SweepConfig& cfg) {
  json doc;
  doc["dataset"] = cfg.dataset;
  doc["betas"] = cfg.betas;
  doc["t0_fractions"] = cfg.t0_fractions;
  doc["tau_fraction"] = cfg.tau_fraction;
  doc["phis"] = cfg.phis;
  doc["hop_limits"] = cfg.hop_limits;
  doc["alphas"] = cfg.alphas;
  doc["runs"] = cfg.runs;
  doc["master_seed"] = cfg.master_seed;
  doc["f_percent"] = cfg.f_percent;
  doc["metrics"] = cfg.metrics;
  std::vector<std::string> mode_tokens;
  mode_tokens.reserve(cfg.modes.size());
  for (DerivationMode m : cfg.modes) mode_tokens.push_back(to_string(m));
  doc["modes"] = mode_tokens;
  doc["replicas"] = cfg.replicas;
  doc["cache_dir"] = cfg.cache_dir;
  doc["max_t0_blocks"] = cfg.max_t0_blocks;
  return doc.dump(2) + "\n";
}

}  // namespace tempo
