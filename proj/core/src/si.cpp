#include "tempo/si.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "tempo/csv.hpp"
#include "tempo/parallel.hpp"

namespace tempo {

namespace {

constexpr int64_t kNever = INT64_MAX;

void validate(const TemporalNetwork& net, int32_t seed_node, double beta, int64_t t0,
              int64_t tau) {
  if (seed_node < 0 || seed_node >= net.n_nodes)
    throw std::invalid_argument("seed node out of range");
  if (!(beta > 0.0) || beta > 1.0) throw std::invalid_argument("beta must lie in (0, 1]");
  if (t0 < 0 || tau < 0 || t0 + tau > net.horizon)
    throw std::invalid_argument("spreading window out of range");
}

template <typename DrawFn>
int run_si(const TemporalNetwork& net, int32_t seed_node, double beta, int64_t t0, int64_t tau,
           std::vector<int64_t>& infected_at, DrawFn&& draw) {
  infected_at.assign(static_cast<size_t>(net.n_nodes), kNever);
  infected_at[static_cast<size_t>(seed_node)] = t0;
  const auto contacts = net.window(t0 + 1, t0 + tau);
  int infected = 0;
  for (size_t i = 0; i < contacts.size(); ++i) {
    const Contact& c = contacts[i];
    // "infected strictly before t": a node infected at this very step keeps
    // its time stamp equal to t and is neither infectious nor susceptible.
    const bool u_hot = infected_at[static_cast<size_t>(c.u)] < c.t;
    const bool v_hot = infected_at[static_cast<size_t>(c.v)] < c.t;
    if (u_hot == v_hot) continue;
    const int32_t target = u_hot ? c.v : c.u;
    if (infected_at[static_cast<size_t>(target)] != kNever) continue;
    if (beta >= 1.0 || draw(i) < beta) {
      infected_at[static_cast<size_t>(target)] = c.t;
      ++infected;
    }
  }
  return infected;
}

}  // namespace

int simulate_si(const TemporalNetwork& net, int32_t seed_node, double beta, int64_t t0,
                int64_t tau, Rng& rng) {
  validate(net, seed_node, beta, t0, tau);
  std::vector<int64_t> scratch;
  return run_si(net, seed_node, beta, t0, tau, scratch,
                [&rng](size_t) { return rng.next_double(); });
}

int simulate_si_with_draws(const TemporalNetwork& net, int32_t seed_node, double beta,
                           int64_t t0, int64_t tau, std::span<const double> draws) {
  validate(net, seed_node, beta, t0, tau);
  if (draws.size() != net.window(t0 + 1, t0 + tau).size())
    throw std::invalid_argument("one draw per window contact is required");
  std::vector<int64_t> scratch;
  return run_si(net, seed_node, beta, t0, tau, scratch, [&draws](size_t i) { return draws[i]; });
}

InfluenceVector influence_all(const TemporalNetwork& net, const SiConfig& cfg) {
  validate(net, 0, cfg.beta, cfg.t0, cfg.tau);
  if (cfg.runs < 1) throw std::invalid_argument("need at least one run");
  const int runs = cfg.beta >= 1.0 ? 1 : cfg.runs;

  InfluenceVector out;
  out.mean.assign(static_cast<size_t>(net.n_nodes), 0.0);
  out.stddev.assign(static_cast<size_t>(net.n_nodes), 0.0);
  out.runs = runs;
  out.beta = cfg.beta;
  out.t0 = cfg.t0;
  out.tau = cfg.tau;

  parallel_for(net.n_nodes, [&](int64_t node) {
    std::vector<int64_t> scratch;
    double sum = 0.0, sum_sq = 0.0;
    for (int r = 0; r < runs; ++r) {
      Rng rng = Rng::stream(cfg.master_seed, stream_role::kSi, static_cast<uint64_t>(node),
                            static_cast<uint64_t>(r));
      const auto size = static_cast<double>(
          run_si(net, static_cast<int32_t>(node), cfg.beta, cfg.t0, cfg.tau, scratch,
                 [&rng](size_t) { return rng.next_double(); }));
      sum += size;
      sum_sq += size * size;
    }
    const double mean = sum / runs;
    out.mean[static_cast<size_t>(node)] = mean;
    if (runs > 1) {
      const double var = std::max(0.0, (sum_sq - sum * mean) / (runs - 1));
      out.stddev[static_cast<size_t>(node)] = std::sqrt(var);
    }
  });
  return out;
}

void write_influence_csv(const std::string& path, const InfluenceVector& iv) {
  std::ofstream outf(path);
  if (!outf) throw std::runtime_error("cannot write " + path);
  outf << "node,mean,std,runs,beta,t0,tau\n";
  for (size_t i = 0; i < iv.mean.size(); ++i)
    outf << i << ',' << csv::format_double(iv.mean[i]) << ',' << csv::format_double(iv.stddev[i])
         << ',' << iv.runs << ',' << csv::format_double(iv.beta) << ',' << iv.t0 << ',' << iv.tau
         << '\n';
  if (!outf) throw std::runtime_error("failed while writing " + path);
}

InfluenceVector read_influence_csv(const std::string& path) {
  const auto rows = csv::read_table(path);
  if (rows.empty() || rows[0].size() != 7 || rows[0][0] != "node")
    throw std::runtime_error("not an influence table: " + path);
  InfluenceVector iv;
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != 7) throw std::runtime_error("malformed influence row in " + path);
    if (csv::parse_int(r[0]) != static_cast<int64_t>(i - 1))
      throw std::runtime_error("influence rows must be dense by node id: " + path);
    iv.mean.push_back(csv::parse_double(r[1]));
    iv.stddev.push_back(csv::parse_double(r[2]));
    iv.runs = static_cast<int>(csv::parse_int(r[3]));
    iv.beta = csv::parse_double(r[4]);
    iv.t0 = csv::parse_int(r[5]);
    iv.tau = csv::parse_int(r[6]);
  }
  return iv;
}

}  // namespace tempo
