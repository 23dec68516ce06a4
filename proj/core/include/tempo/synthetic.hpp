#pragma once

#include <cstdint>

#include "tempo/rng.hpp"
#include "tempo/temporal_network.hpp"

namespace tempo {

/// Uniformly random small network: contacts drawn as (random pair, random
/// step in 1..horizon) with duplicate triples re-drawn. May return fewer
/// contacts than requested when the space saturates; never returns zero.
TemporalNetwork random_temporal_network(int32_t n_nodes, int n_contacts, int64_t horizon,
                                        Rng& rng);

/// Planted-community benchmark: nodes split into communities of graded sizes,
/// per-node activity drawn log-normally, contacts placed mostly inside the
/// own community and uniformly in time. High-activity nodes accumulate many
/// repeat contacts while reachable-set sizes track community size, which
/// separates volume-driven from reach-driven spreading regimes.
struct CommunityNetParams {
  int32_t n_nodes = 150;
  int n_contacts = 5000;
  int64_t horizon = 2000;
  int n_communities = 10;
  double intra_prob = 0.97;     // probability a contact stays inside the community
  double activity_sigma = 1.0;  // log-normal sigma of node activity
};

TemporalNetwork planted_community_network(const CommunityNetParams& params, uint64_t seed);

}  // namespace tempo
