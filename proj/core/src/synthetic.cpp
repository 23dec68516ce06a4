#include "tempo/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace tempo {

namespace {

uint64_t triple_key(int32_t u, int32_t v, int64_t t) {
  const uint64_t pair =
      (static_cast<uint64_t>(static_cast<uint32_t>(u)) << 32) | static_cast<uint32_t>(v);
  return splitmix64(pair) ^ splitmix64(static_cast<uint64_t>(t));
}

/// Index into a cumulative-weight table; x must lie in [0, cum.back()).
size_t pick_by_weight(const std::vector<double>& cum, double x) {
  const auto it = std::upper_bound(cum.begin(), cum.end(), x);
  return std::min(static_cast<size_t>(it - cum.begin()), cum.size() - 1);
}

}  // namespace

TemporalNetwork random_temporal_network(int32_t n_nodes, int n_contacts, int64_t horizon,
                                        Rng& rng) {
  if (n_nodes < 2) throw std::invalid_argument("need at least two nodes");
  if (n_contacts < 1 || horizon < 1) throw std::invalid_argument("need contacts and time steps");

  std::unordered_set<uint64_t> seen;
  std::vector<Contact> contacts;
  int64_t attempts = 200ll * n_contacts + 1000;
  while (static_cast<int>(contacts.size()) < n_contacts && attempts-- > 0) {
    auto u = static_cast<int32_t>(rng.next_below(static_cast<uint64_t>(n_nodes)));
    auto v = static_cast<int32_t>(rng.next_below(static_cast<uint64_t>(n_nodes)));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    const int64_t t = 1 + static_cast<int64_t>(rng.next_below(static_cast<uint64_t>(horizon)));
    if (seen.insert(triple_key(u, v, t)).second) contacts.push_back({u, v, t});
  }
  if (contacts.empty()) throw std::runtime_error("could not place any contact");
  return make_temporal_network(n_nodes, std::move(contacts));
}

TemporalNetwork planted_community_network(const CommunityNetParams& params, uint64_t seed) {
  const int32_t n = params.n_nodes;
  if (n < 4 || params.n_communities < 1 || params.n_communities > n)
    throw std::invalid_argument("bad community layout");
  if (params.n_contacts < 1 || params.horizon < 1)
    throw std::invalid_argument("need contacts and time steps");

  Rng rng = Rng::stream(seed, stream_role::kSynthetic);

  // Graded community sizes: weight (c+1)^1.4 rescaled to n, remainder to the
  // largest community, minimum size 2.
  std::vector<int32_t> sizes(static_cast<size_t>(params.n_communities), 0);
  {
    double total_w = 0.0;
    std::vector<double> w(sizes.size());
    for (size_t c = 0; c < sizes.size(); ++c) {
      w[c] = std::pow(static_cast<double>(c + 1), 1.4);
      total_w += w[c];
    }
    int32_t assigned = 0;
    for (size_t c = 0; c < sizes.size(); ++c) {
      sizes[c] = std::max<int32_t>(2, static_cast<int32_t>(std::floor(w[c] / total_w * n)));
      assigned += sizes[c];
    }
    sizes.back() += n - assigned;  // absorb rounding drift (may grow or shrink)
    if (sizes.back() < 2) throw std::invalid_argument("communities do not fit the node count");
  }

  std::vector<int32_t> community(static_cast<size_t>(n), 0);
  std::vector<int32_t> first_of(sizes.size() + 1, 0);
  {
    int32_t at = 0;
    for (size_t c = 0; c < sizes.size(); ++c) {
      first_of[c] = at;
      for (int32_t i = 0; i < sizes[c]; ++i) community[static_cast<size_t>(at++)] = static_cast<int32_t>(c);
    }
    first_of[sizes.size()] = at;
  }

  std::vector<double> activity(static_cast<size_t>(n));
  for (auto& a : activity) a = std::exp(params.activity_sigma * rng.next_gaussian());

  std::vector<double> cum_all(static_cast<size_t>(n), 0.0);
  double acc = 0.0;
  for (size_t i = 0; i < cum_all.size(); ++i) {
    acc += activity[i];
    cum_all[i] = acc;
  }
  std::vector<std::vector<double>> cum_comm(sizes.size());
  for (size_t c = 0; c < sizes.size(); ++c) {
    double s = 0.0;
    cum_comm[c].resize(static_cast<size_t>(sizes[c]));
    for (int32_t i = 0; i < sizes[c]; ++i) {
      s += activity[static_cast<size_t>(first_of[c] + i)];
      cum_comm[c][static_cast<size_t>(i)] = s;
    }
  }

  auto draw_global = [&]() {
    return static_cast<int32_t>(pick_by_weight(cum_all, rng.next_double() * cum_all.back()));
  };

  std::unordered_set<uint64_t> seen;
  std::vector<Contact> contacts;
  int64_t attempts = 400ll * params.n_contacts;
  while (static_cast<int>(contacts.size()) < params.n_contacts && attempts-- > 0) {
    const int32_t u = draw_global();
    const auto c = static_cast<size_t>(community[static_cast<size_t>(u)]);
    int32_t v = -1;
    if (rng.next_double() < params.intra_prob && sizes[c] > 1) {
      for (int guard = 0; guard < 64; ++guard) {
        const auto off = static_cast<int32_t>(
            pick_by_weight(cum_comm[c], rng.next_double() * cum_comm[c].back()));
        const int32_t cand = first_of[c] + off;
        if (cand != u) {
          v = cand;
          break;
        }
      }
    } else {
      for (int guard = 0; guard < 64; ++guard) {
        const int32_t cand = draw_global();
        if (cand != u && community[static_cast<size_t>(cand)] != community[static_cast<size_t>(u)]) {
          v = cand;
          break;
        }
      }
    }
    if (v < 0) continue;
    int32_t a = u, b = v;
    if (a > b) std::swap(a, b);
    const int64_t t =
        1 + static_cast<int64_t>(rng.next_below(static_cast<uint64_t>(params.horizon)));
    if (seen.insert(triple_key(a, b, t)).second) contacts.push_back({a, b, t});
  }
  if (contacts.empty()) throw std::runtime_error("could not place any contact");
  return compact_timesteps(make_temporal_network(n, std::move(contacts)));
}

}  // namespace tempo
