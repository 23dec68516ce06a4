// Independent reference implementations used to cross-check the production
// code. Everything here favours obviousness over speed: direct pair
// enumeration, exhaustive outcome enumeration and dense linear algebra.
#pragma once

#include <cstdint>
#include <vector>

#include "tempo/classic_metrics.hpp"
#include "tempo/evaluation.hpp"
#include "tempo/temporal_network.hpp"

namespace tempo::testing {

/// Tau-b by looking at every ordered index pair once. O(n^2).
KendallResult kendall_pair_oracle(const std::vector<double>& predicted,
                                  const std::vector<double>& actual);

/// Exact expected outbreak size of the spreading process by enumerating all
/// 2^L transmit/ignore combinations of the L window contacts. Requires
/// L <= 24.
double si_exact_mean(const TemporalNetwork& net, int32_t seed, double beta, int64_t t0,
                     int64_t tau);

/// Stationary walker distribution by Gaussian elimination on the full
/// N x N linear system, with degree-zero columns spread uniformly.
std::vector<double> pagerank_dense_oracle(const StaticGraph& g, double gamma);

/// Corpus member for the randomized cross-check suites: small networks with
/// varied density, deterministic per index.
TemporalNetwork corpus_network(uint64_t index);

}  // namespace tempo::testing
