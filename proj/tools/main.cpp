// Command-line front end for the temporal-network influence toolkit.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tempo/classic_metrics.hpp"
#include "tempo/csv.hpp"
#include "tempo/evaluation.hpp"
#include "tempo/si.hpp"
#include "tempo/stats.hpp"
#include "tempo/sweep.hpp"
#include "tempo/temporal_network.hpp"

namespace {

struct DatasetOptions {
  std::string path;
  std::vector<int> cols{0, 1, 2};
  bool no_compact = false;
  bool no_lcc = false;
};

void add_dataset_options(CLI::App* sub, DatasetOptions& opt) {
  sub->add_option("input", opt.path, "contact list file (u v t rows, '#' comments)")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--cols", opt.cols,
                  "zero-based column indices of source, target and time")
      ->delimiter(',')
      ->expected(3);
  sub->add_flag("--no-compact", opt.no_compact,
                "keep raw timestamps instead of relabelling them to 1..T");
  sub->add_flag("--no-lcc", opt.no_lcc,
                "keep all components instead of the largest connected one");
}

tempo::TemporalNetwork load_dataset(const DatasetOptions& opt,
                                    tempo::ParseReport* report = nullptr) {
  tempo::ParseFormat format;
  format.u_column = opt.cols.at(0);
  format.v_column = opt.cols.at(1);
  format.t_column = opt.cols.at(2);
  tempo::TemporalNetwork net = tempo::parse_contact_list(opt.path, format, report);
  if (!opt.no_lcc) net = tempo::largest_connected_component(net);
  if (!opt.no_compact) net = tempo::compact_timesteps(net);
  return net;
}

int64_t window_length(const tempo::TemporalNetwork& net, double tau_fraction, int64_t tau_flag) {
  if (tau_flag > 0) return tau_flag;
  return static_cast<int64_t>(tau_fraction * static_cast<double>(net.horizon));
}

std::vector<double> read_score_column(const std::string& path) {
  const auto table = tempo::csv::read_table(path);
  if (table.size() < 2) throw std::runtime_error("no score rows in " + path);
  size_t column = 1;  // node,score — or the mean column of an influence file
  if (table[0].size() >= 2 && table[0][1] == "mean") column = 1;
  std::vector<double> scores;
  for (size_t i = 1; i < table.size(); ++i) {
    const auto& row = table[i];
    if (row.size() <= column) {
      throw std::runtime_error("short row in " + path + " at line " + std::to_string(i + 1));
    }
    const auto node = tempo::csv::parse_int(row[0]);
    if (node != static_cast<int64_t>(scores.size())) {
      throw std::runtime_error("node ids in " + path + " must be dense and ascending");
    }
    scores.push_back(tempo::csv::parse_double(row[column]));
  }
  return scores;
}

void write_scores(std::ostream& out, const std::vector<double>& scores) {
  out << "node,score\n";
  for (size_t i = 0; i < scores.size(); ++i) {
    out << i << ',' << tempo::csv::format_double(scores[i]) << '\n';
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

/// Applies only the flags the user actually passed on top of a config file.
void apply_sweep_overrides(CLI::App* sub, tempo::SweepConfig& cfg,
                           const tempo::SweepConfig& flags) {
  if (sub->count("--betas")) cfg.betas = flags.betas;
  if (sub->count("--t0-fractions")) cfg.t0_fractions = flags.t0_fractions;
  if (sub->count("--tau-fraction")) cfg.tau_fraction = flags.tau_fraction;
  if (sub->count("--phis")) cfg.phis = flags.phis;
  if (sub->count("--hops")) cfg.hop_limits = flags.hop_limits;
  if (sub->count("--alphas")) cfg.alphas = flags.alphas;
  if (sub->count("--runs")) cfg.runs = flags.runs;
  if (sub->count("--seed")) cfg.master_seed = flags.master_seed;
  if (sub->count("--top-fraction")) cfg.f_percent = flags.f_percent;
  if (sub->count("--metrics")) cfg.metrics = flags.metrics;
  if (sub->count("--replicas")) cfg.replicas = flags.replicas;
  if (sub->count("--cache-dir")) cfg.cache_dir = flags.cache_dir;
  if (sub->count("--max-t0-blocks")) cfg.max_t0_blocks = flags.max_t0_blocks;
}

void add_sweep_options(CLI::App* sub, tempo::SweepConfig& flags, std::string& config_path,
                       std::vector<std::string>& mode_tokens) {
  sub->add_option("--config", config_path, "JSON file with sweep settings")
      ->check(CLI::ExistingFile);
  sub->add_option("--betas", flags.betas, "infection probabilities")->delimiter(',');
  sub->add_option("--t0-fractions", flags.t0_fractions,
                  "start times as fractions of the horizon")
      ->delimiter(',');
  sub->add_option("--tau-fraction", flags.tau_fraction,
                  "spreading window length as fraction of the horizon");
  sub->add_option("--phis", flags.phis, "observed fractions of the spreading window")
      ->delimiter(',');
  sub->add_option("--hops", flags.hop_limits, "observation hop limits")->delimiter(',');
  sub->add_option("--alphas", flags.alphas, "time-discount factors")->delimiter(',');
  sub->add_option("--runs", flags.runs, "spreading realizations per seed");
  sub->add_option("--seed", flags.master_seed, "master seed for all randomness");
  sub->add_option("--top-fraction", flags.f_percent,
                  "top set size for the recognition rate, in percent");
  sub->add_option("--metrics", flags.metrics, "metric names to evaluate")->delimiter(',');
  sub->add_option("--modes", mode_tokens,
                  "derivation modes for the classic metrics (full-aggregated, full-temporal, "
                  "partial-aggregated, partial-temporal)")
      ->delimiter(',');
  sub->add_option("--replicas", flags.replicas, "shuffled replicas (randomize command)");
  sub->add_option("--cache-dir", flags.cache_dir,
                  "influence cache directory ('none' disables caching)");
  sub->add_option("--max-t0-blocks", flags.max_t0_blocks,
                  "stop after this many start-time blocks (0 = run everything)");
}

tempo::SweepConfig assemble_sweep_config(CLI::App* sub, const tempo::SweepConfig& flags,
                                         const std::string& config_path,
                                         const std::vector<std::string>& mode_tokens) {
  tempo::SweepConfig cfg;
  if (!config_path.empty()) cfg = tempo::sweep_config_from_json_file(config_path);
  apply_sweep_overrides(sub, cfg, flags);
  if (sub->count("--modes")) {
    cfg.modes.clear();
    for (const auto& token : mode_tokens) cfg.modes.push_back(tempo::mode_from_string(token));
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"walk-based influence prediction on partially observed temporal networks"};
  app.require_subcommand(1);

  // ingest ------------------------------------------------------------------
  auto* ingest = app.add_subcommand(
      "ingest", "parse a contact list, preprocess it and write the canonical form");
  DatasetOptions ingest_data;
  std::string ingest_out, ingest_remap;
  add_dataset_options(ingest, ingest_data);
  ingest->add_option("--output", ingest_out, "canonical contact CSV (u,v,t)");
  ingest->add_option("--remap", ingest_remap, "node id to original label CSV");

  // stats -------------------------------------------------------------------
  auto* stats = app.add_subcommand("stats", "descriptive statistics of a dataset");
  DatasetOptions stats_data;
  std::vector<double> stats_t0{0.0, 0.125, 0.25, 0.375, 0.5, 0.625, 0.75};
  double stats_tau = 0.25;
  std::vector<double> stats_betas;
  int stats_runs = 500;
  uint64_t stats_seed = 1;
  std::string stats_out;
  add_dataset_options(stats, stats_data);
  stats->add_option("--t0-fractions", stats_t0, "start-time grid as fractions of the horizon")
      ->delimiter(',');
  stats->add_option("--tau-fraction", stats_tau, "window length as fraction of the horizon");
  stats->add_option("--influence-betas", stats_betas,
                    "also report mean outbreak sizes for these infection probabilities")
      ->delimiter(',');
  stats->add_option("--runs", stats_runs, "realizations per seed for the influence report");
  stats->add_option("--seed", stats_seed, "master seed for the influence report");
  stats->add_option("--output", stats_out, "write the report as CSV");

  // centrality ----------------------------------------------------------------
  auto* centrality = app.add_subcommand("centrality", "score every node with one metric");
  DatasetOptions cent_data;
  std::string cent_metric = tempo::metric_name::kDegreeMass;
  std::string cent_mode = "partial";
  int64_t cent_t0 = 0, cent_tau_flag = 0;
  double cent_tau_fraction = 0.25, cent_phi = 1.0, cent_alpha = 1.0;
  int cent_m = 3;
  std::string cent_out;
  add_dataset_options(centrality, cent_data);
  centrality->add_option("--metric", cent_metric, "metric name")->capture_default_str();
  centrality->add_option("--mode", cent_mode,
                         "derivation mode; 'partial' for the walk scores")
      ->capture_default_str();
  centrality->add_option("--t0", cent_t0, "window start (exclusive)");
  centrality->add_option("--tau", cent_tau_flag, "window length in steps (overrides fraction)");
  centrality->add_option("--tau-fraction", cent_tau_fraction,
                         "window length as fraction of the horizon");
  centrality->add_option("--phi", cent_phi, "observed fraction of the window");
  centrality->add_option("--m", cent_m, "observation hop limit");
  centrality->add_option("--alpha", cent_alpha, "time-discount factor");
  centrality->add_option("--output", cent_out, "write scores as CSV (default: stdout)");

  // simulate ------------------------------------------------------------------
  auto* simulate = app.add_subcommand(
      "simulate", "estimate spreading influence of every node by Monte-Carlo simulation");
  DatasetOptions sim_data;
  double sim_beta = 0.1, sim_tau_fraction = 0.25;
  int64_t sim_t0 = 0, sim_tau_flag = 0;
  int sim_runs = 500;
  uint64_t sim_seed = 1;
  std::string sim_out;
  add_dataset_options(simulate, sim_data);
  simulate->add_option("--beta", sim_beta, "per-contact infection probability")->required();
  simulate->add_option("--t0", sim_t0, "seeding time (spreading starts at the next step)");
  simulate->add_option("--tau", sim_tau_flag, "window length in steps (overrides fraction)");
  simulate->add_option("--tau-fraction", sim_tau_fraction,
                       "window length as fraction of the horizon");
  simulate->add_option("--runs", sim_runs, "realizations per seed");
  simulate->add_option("--seed", sim_seed, "master seed");
  simulate->add_option("--output", sim_out, "write node,mean,std,... CSV (default: stdout)");

  // evaluate ------------------------------------------------------------------
  auto* evaluate = app.add_subcommand(
      "evaluate", "rank correlation and top-set recognition between two score files");
  std::string eval_pred, eval_actual;
  double eval_f = 20.0;
  evaluate->add_option("--predicted", eval_pred, "node,score CSV")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--actual", eval_actual, "node,score or influence CSV")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--top-fraction", eval_f, "top set size in percent");

  // sweep ---------------------------------------------------------------------
  auto* sweep = app.add_subcommand(
      "sweep", "evaluate every metric against simulated influence over the parameter grid");
  DatasetOptions sweep_data;
  tempo::SweepConfig sweep_flags;
  std::string sweep_config_path, sweep_out, sweep_dump;
  std::vector<std::string> sweep_modes;
  bool sweep_no_resume = false;
  add_dataset_options(sweep, sweep_data);
  add_sweep_options(sweep, sweep_flags, sweep_config_path, sweep_modes);
  sweep->add_option("--output", sweep_out, "results CSV")->required();
  sweep->add_flag("--no-resume", sweep_no_resume,
                  "ignore an existing checkpoint and start from scratch");
  sweep->add_option("--dump-config", sweep_dump,
                    "write the effective configuration as JSON ('-' for stdout) and exit");

  // randomize -----------------------------------------------------------------
  auto* randomize = app.add_subcommand(
      "randomize", "rerun the sweep on timestamp-shuffled replicas and aggregate");
  DatasetOptions rand_data;
  tempo::SweepConfig rand_flags;
  std::string rand_config_path, rand_out;
  std::vector<std::string> rand_modes;
  add_dataset_options(randomize, rand_data);
  add_sweep_options(randomize, rand_flags, rand_config_path, rand_modes);
  randomize->add_option("--output", rand_out, "aggregated results CSV")->required();

  // best ----------------------------------------------------------------------
  auto* best = app.add_subcommand(
      "best", "per-group best quality over the (m, alpha) grid of a results file");
  std::string best_in, best_out;
  best->add_option("--input", best_in, "results CSV from the sweep command")
      ->required()
      ->check(CLI::ExistingFile);
  best->add_option("--output", best_out, "best-quality CSV (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      tempo::ParseReport report;
      const tempo::TemporalNetwork net = load_dataset(ingest_data, &report);
      std::printf("nodes        %d\n", net.n_nodes);
      std::printf("contacts     %zu\n", net.contacts.size());
      std::printf("horizon      %lld\n", static_cast<long long>(net.horizon));
      std::printf("lines        %lld\n", static_cast<long long>(report.lines_total));
      std::printf("parsed rows  %lld\n", static_cast<long long>(report.rows_parsed));
      std::printf("duplicates   %lld\n", static_cast<long long>(report.duplicates_dropped));
      std::printf("self loops   %lld\n", static_cast<long long>(report.self_loops_dropped));
      std::printf("time offset  %lld\n", static_cast<long long>(report.time_offset));
      if (!ingest_out.empty()) {
        auto out = open_output(ingest_out);
        out << "# u,v,t\n";  // comment prefix keeps the file readable by ingest itself
        for (const auto& c : net.contacts) out << c.u << ',' << c.v << ',' << c.t << '\n';
      }
      if (!ingest_remap.empty()) {
        auto out = open_output(ingest_remap);
        out << "label,node\n";
        for (size_t i = 0; i < net.labels.size(); ++i) out << net.labels[i] << ',' << i << '\n';
      }
      return 0;
    }

    if (*stats) {
      const tempo::TemporalNetwork net = load_dataset(stats_data);
      tempo::DatasetStats report = tempo::dataset_report(net, stats_t0, stats_tau);
      if (!stats_betas.empty()) {
        tempo::add_mean_influence(report, net, stats_betas, stats_t0, stats_tau, stats_runs,
                                  stats_seed);
      }
      std::printf("nodes                 %d\n", report.n_nodes);
      std::printf("contacts              %lld\n", static_cast<long long>(report.n_contacts));
      std::printf("horizon               %lld\n", static_cast<long long>(report.horizon));
      std::printf("link density          %s\n",
                  tempo::csv::format_double(report.link_density).c_str());
      std::printf("degree-1 share        %s\n",
                  tempo::csv::format_double(report.degree1_snapshot_share).c_str());
      std::printf("TH 1-or-unreachable   %s\n",
                  tempo::csv::format_double(report.th_one_or_inf_share).c_str());
      for (const auto& [beta, mean] : report.mean_influence_per_beta) {
        std::printf("mean influence b=%-6s %s\n", tempo::csv::format_double(beta).c_str(),
                    tempo::csv::format_double(mean).c_str());
      }
      if (!stats_out.empty()) tempo::write_stats_csv(stats_out, report);
      return 0;
    }

    if (*centrality) {
      const tempo::TemporalNetwork net = load_dataset(cent_data);
      const int64_t tau = window_length(net, cent_tau_fraction, cent_tau_flag);
      const std::vector<double> scores = tempo::prediction_vector(
          net, cent_metric, cent_mode, cent_t0, tau, cent_phi, cent_m, cent_alpha);
      if (cent_out.empty()) {
        write_scores(std::cout, scores);
      } else {
        auto out = open_output(cent_out);
        write_scores(out, scores);
      }
      return 0;
    }

    if (*simulate) {
      const tempo::TemporalNetwork net = load_dataset(sim_data);
      tempo::SiConfig cfg;
      cfg.beta = sim_beta;
      cfg.t0 = sim_t0;
      cfg.tau = window_length(net, sim_tau_fraction, sim_tau_flag);
      cfg.runs = sim_runs;
      cfg.master_seed = sim_seed;
      const tempo::InfluenceVector iv = tempo::influence_all(net, cfg);
      if (sim_out.empty()) {
        for (size_t i = 0; i < iv.mean.size(); ++i) {
          std::printf("%zu,%s\n", i, tempo::csv::format_double(iv.mean[i]).c_str());
        }
      } else {
        tempo::write_influence_csv(sim_out, iv);
      }
      return 0;
    }

    if (*evaluate) {
      const std::vector<double> predicted = read_score_column(eval_pred);
      const std::vector<double> actual = read_score_column(eval_actual);
      double qk = std::numeric_limits<double>::quiet_NaN();
      try {
        qk = tempo::kendall_tau_b(predicted, actual).tau;
      } catch (const std::domain_error&) {
      }
      const double qr = tempo::recognition_rate(predicted, actual, eval_f);
      std::printf("Qk %s\n", tempo::csv::format_double(qk).c_str());
      std::printf("Qr %s\n", tempo::csv::format_double(qr).c_str());
      return 0;
    }

    if (*sweep) {
      tempo::SweepConfig cfg =
          assemble_sweep_config(sweep, sweep_flags, sweep_config_path, sweep_modes);
      cfg.dataset = sweep_data.path;
      if (!sweep_dump.empty()) {
        const std::string doc = tempo::sweep_config_to_json(cfg);
        if (sweep_dump == "-") {
          std::fputs(doc.c_str(), stdout);
        } else {
          open_output(sweep_dump) << doc;
        }
        return 0;
      }
      const tempo::TemporalNetwork net = load_dataset(sweep_data);
      const tempo::SweepResult result = tempo::run_sweep(net, cfg, sweep_out, !sweep_no_resume);
      std::printf("rows %zu\n", result.rows.size());
      for (int64_t t0 : result.skipped_starts) {
        std::printf("skipped t0 %lld\n", static_cast<long long>(t0));
      }
      return 0;
    }

    if (*randomize) {
      tempo::SweepConfig cfg =
          assemble_sweep_config(randomize, rand_flags, rand_config_path, rand_modes);
      cfg.dataset = rand_data.path;
      const tempo::TemporalNetwork net = load_dataset(rand_data);
      const auto rows = tempo::randomization_study(net, cfg, cfg.replicas);
      tempo::write_randomized_csv(rand_out, rows);
      std::printf("rows %zu over %d replicas\n", rows.size(), cfg.replicas);
      return 0;
    }

    if (*best) {
      const auto rows = tempo::best_quality(tempo::read_sweep_csv(best_in));
      if (best_out.empty()) {
        std::printf("metric,mode,beta,phi,Qk,Qk_m,Qk_alpha,Qk_excluded,Qr,Qr_m,Qr_alpha\n");
        for (const auto& row : rows) {
          std::ostringstream line;
          line << row.metric << ',' << row.mode << ',' << tempo::csv::format_double(row.beta)
               << ',' << tempo::csv::format_double(row.phi) << ','
               << tempo::csv::format_double(row.qk) << ',';
          if (row.qk_m >= 0) line << row.qk_m;
          line << ',' << tempo::csv::format_double(row.qk_alpha) << ',' << row.qk_excluded << ','
               << tempo::csv::format_double(row.qr) << ',';
          if (row.qr_m >= 0) line << row.qr_m;
          line << ',' << tempo::csv::format_double(row.qr_alpha);
          std::printf("%s\n", line.str().c_str());
        }
      } else {
        tempo::write_best_csv(best_out, rows);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
