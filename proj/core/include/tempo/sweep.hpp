#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tempo/classic_metrics.hpp"
#include "tempo/temporal_network.hpp"

namespace tempo {

namespace metric_name {
inline constexpr const char* kDegreeMass = "degree-mass";
inline constexpr const char* kTemporalDegreeMass = "temporal-degree-mass";
inline constexpr const char* kTemporalReachability = "temporal-reachability";
inline constexpr const char* kBetweenness = "betweenness";
inline constexpr const char* kCloseness = "closeness";
inline constexpr const char* kEigenvector = "eigenvector";
inline constexpr const char* kPagerank = "pagerank";
inline constexpr const char* kTemporalCloseness = "temporal-closeness";
}  // namespace metric_name

std::vector<std::string> all_metric_names();

/// Grid of the prediction-quality experiment. Every field can come from a
/// JSON config file and be overridden per flag; the semantic fields (not the
/// execution controls) are fingerprinted into checkpoints.
struct SweepConfig {
  std::string dataset;  // path, used by the command-line driver
  std::vector<double> betas{0.01, 0.05, 0.1, 0.25, 0.5, 1.0};
  std::vector<double> t0_fractions{0.0, 0.125, 0.25, 0.375, 0.5, 0.625, 0.75};
  double tau_fraction = 0.25;
  std::vector<double> phis{0.25, 0.5};
  std::vector<int> hop_limits{1, 2, 3};
  std::vector<double> alphas{0.2, 0.4, 0.6, 0.8, 0.85, 0.9, 0.95, 0.99, 0.999, 0.9999, 1.0};
  int runs = 500;
  uint64_t master_seed = 1;
  double f_percent = 20.0;
  std::vector<std::string> metrics = all_metric_names();
  std::vector<DerivationMode> modes{
      DerivationMode::kFullAggregated, DerivationMode::kFullTemporal,
      DerivationMode::kPartialAggregated, DerivationMode::kPartialTemporal};
  int replicas = 10;          // timestamp-shuffled copies in the randomization study
  std::string cache_dir;      // "": cache next to the output; "none": disabled
  int max_t0_blocks = 0;      // execution control for smoke runs; 0 = no limit
};

/// One evaluated (metric, derivation, parameter) cell of the grid. NaN in phi
/// or alpha and -1 in m mean "not applicable"; NaN in qk marks an undefined
/// correlation (constant ranking).
struct SweepRow {
  std::string metric;
  std::string mode;  // derivation mode token, or "partial" for the walk metrics
  double beta = 0.0;
  int64_t t0 = 0;
  double phi = 0.0;
  int m = -1;
  double alpha = 0.0;
  double qk = 0.0;
  double qr = 0.0;
  int runs = 0;
  uint64_t seed = 0;
};

inline constexpr const char* kSweepCsvHeader = "metric,mode,beta,t0,phi,m,alpha,Qk,Qr,runs,seed";

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<int64_t> skipped_starts;  // start times whose window left the horizon
};

/// Evaluates every configured metric against Monte-Carlo spreading influence
/// over the whole grid. With a non-empty output path rows stream to a CSV,
/// per-start-time checkpoints make interrupted runs resumable, and influence
/// vectors are cached per (dataset digest, t0, tau, beta, runs, seed). Output
/// bytes depend only on the network and the configuration.
SweepResult run_sweep(const TemporalNetwork& net, const SweepConfig& cfg,
                      const std::string& output_csv = {}, bool resume = true);

std::vector<SweepRow> read_sweep_csv(const std::string& path);
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);

/// Single prediction vector, exactly as the sweep would compute it for one
/// grid cell. `mode` is a derivation-mode token, or "partial" for the walk
/// scores; phi/m apply to partial derivations and alpha to the time-scaled
/// walk scores (pass 1 for the plain counts).
std::vector<double> prediction_vector(const TemporalNetwork& net, const std::string& metric,
                                      const std::string& mode, int64_t t0, int64_t tau,
                                      double phi = 1.0, int m = 1, double alpha = 1.0);

/// Best achievable quality per (metric, mode, beta, phi): start-time-averaged
/// Qk and Qr maximized over the (m, alpha) grid. Quality ties prefer the
/// smaller m, then the larger alpha.
struct BestRow {
  std::string metric;
  std::string mode;
  double beta = 0.0;
  double phi = 0.0;
  double qk = 0.0;
  int qk_m = -1;
  double qk_alpha = 0.0;
  int qk_excluded = 0;  // start times with undefined correlation at the argmax
  double qr = 0.0;
  int qr_m = -1;
  double qr_alpha = 0.0;
};

std::vector<BestRow> best_quality(const std::vector<SweepRow>& rows);
void write_best_csv(const std::string& path, const std::vector<BestRow>& rows);

/// Re-runs the sweep on timestamp-shuffled replicas and reports mean and
/// sample standard deviation per grid cell across replicas.
struct RandomizedRow {
  std::string metric;
  std::string mode;
  double beta = 0.0;
  int64_t t0 = 0;
  double phi = 0.0;
  int m = -1;
  double alpha = 0.0;
  double qk_mean = 0.0;
  double qk_std = 0.0;
  int qk_defined = 0;  // replicas with a defined correlation
  double qr_mean = 0.0;
  double qr_std = 0.0;
  int replicas = 0;
};

std::vector<RandomizedRow> randomization_study(const TemporalNetwork& net,
                                               const SweepConfig& cfg, int replicas);
void write_randomized_csv(const std::string& path, const std::vector<RandomizedRow>& rows);

/// JSON round-trip for configs; missing keys keep their defaults.
SweepConfig sweep_config_from_json_file(const std::string& path);
std::string sweep_config_to_json(const SweepConfig& cfg);

/// Digest of the semantic configuration plus the network content; stored in
/// checkpoints so resumed runs cannot mix incompatible grids.
std::string sweep_fingerprint(const TemporalNetwork& net, const SweepConfig& cfg);

}  // namespace tempo
