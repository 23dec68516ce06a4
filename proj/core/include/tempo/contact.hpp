#pragma once

#include <cstdint>
#include <tuple>

namespace tempo {

/// One undirected contact between two nodes at a discrete time step.
/// Canonical storage keeps u < v; a pair can appear at most once per step.
struct Contact {
  int32_t u = 0;
  int32_t v = 0;
  int64_t t = 0;

  friend bool operator==(const Contact&, const Contact&) = default;
};

/// Sort order used throughout: by time, then endpoints.
struct ContactTimeOrder {
  bool operator()(const Contact& a, const Contact& b) const {
    return std::tie(a.t, a.u, a.v) < std::tie(b.t, b.u, b.v);
  }
};

}  // namespace tempo
